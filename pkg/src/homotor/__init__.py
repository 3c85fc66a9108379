"""homotor: multigraded Tor tables of monomial ideals over a prime field,
the sum/product complexes attached to an ideal family, the spectral
sequences relating them, and degreewise verification suites for the
homological identities they satisfy."""

__version__ = "0.1.0"

from .exactlin import GF, FiberComplex, PrimeField, ScalarMatrix, homology_dims, rank
from .monomial import (
    GradingMap,
    MonomialIdeal,
    Multidegree,
    combine,
    iter_box,
    lcm_deg,
    membership,
    quotient_dimension,
)
from .gcomplex import (
    GradedComplex,
    Summand,
    TorTable,
    fiber,
    koszul_units,
    koszul_variables,
    module_homology_table,
    stable_box,
    taylor_resolution,
    with_coefficient,
)
from .multicomplex import (
    Multicomplex,
    RegionSelector,
    complement,
    face,
    hypercube_augment,
    interior,
    select,
    tensor,
    totalize,
)
from .spectral import (
    FilteredFiberComplex,
    SpectralPages,
    build_filtration,
    mv_double,
    pages,
)
from .torlab import (
    betti_table,
    family_box,
    independence,
    multi_tor,
    rigidity_check,
    serre_a8_check,
    tor1_oracle,
)
from .sumprod import (
    ProductComplex,
    SumComplex,
    augmented_interior_H,
    build_p_complex,
    build_s_complex,
    complex_homology_table,
    exactness_equivalences,
    verify_identities,
)
from .support import SupportRegion, region_compare, support_region, supportoftors_check
from .cli import parse_problem, random_instance, run
