"""Multicomplexes: tensor construction, region selectors, totalization and
the hypercube augmentation."""

import pytest

from homotor.errors import EmptySelection, InvalidKind, MixedKinds
from homotor.exactlin import GF
from homotor.gcomplex import (
    koszul_variables,
    module_homology_table,
    taylor_resolution,
    with_coefficient,
)
from homotor.monomial import MonomialIdeal, Multidegree, iter_box
from homotor.multicomplex import (
    complement,
    face,
    hypercube_augment,
    hypercube_extend,
    interior,
    select,
    tensor,
    totalize,
)


def res(*gens):
    n = len(gens[0])
    return taylor_resolution(MonomialIdeal(n, gens))


def test_tensor_two_principal():
    m = tensor([res((1, 0)), res((0, 1))])
    assert len(m.terms) == 4
    assert set(m.terms) == {(0, 0), (0, 1), (1, 0), (1, 1)}


def test_tensor_single_factor_is_identity():
    t = res((1, 0), (0, 1))
    m = tensor([t])
    total = totalize(m)
    assert {i: len(ss) for i, ss in total.terms.items()} == {
        i: len(ss) for i, ss in t.terms.items()
    }
    assert module_homology_table(total).entries == module_homology_table(t).entries


def test_tensor_rejects_cyclic_factors():
    t = with_coefficient(res((1, 0)), MonomialIdeal(2, [(0, 1)]))
    with pytest.raises(MixedKinds):
        tensor([t])


def test_tensor_of_variable_koszuls_totalizes_to_joint_koszul():
    kx = koszul_variables([Multidegree((1, 0))])
    ky = koszul_variables([Multidegree((0, 1))])
    total = totalize(tensor([kx, ky]))
    joint = koszul_variables([Multidegree((1, 0)), Multidegree((0, 1))])
    assert module_homology_table(total).entries == module_homology_table(joint).entries
    assert {i: len(ss) for i, ss in total.terms.items()} == {0: 1, 1: 2, 2: 1}


def test_select_regions():
    m = tensor([res((1, 0)), res((0, 1))])
    inner = select(m, interior(0, 1))
    assert set(inner.terms) == {(1, 1)}
    corner = select(m, face())
    assert set(corner.terms) == {(0, 0)}
    comp = select(m, complement(0))
    # complement of the first axis face kills exactly the q2 = 0 row
    assert set(comp.terms) == {(0, 1), (1, 1)}
    starred = select(m, face(0, starred=True))
    assert set(starred.terms) == {(0, 0), (0, 1)}


def test_select_face_full_is_identity():
    m = tensor([res((1, 0)), res((0, 1))])
    full = select(m, face(0, 1))
    assert full.terms.keys() == m.terms.keys()
    single = totalize(select(m, face()))
    assert list(single.window()) == [0]


def test_totalize_signs_square_to_zero():
    # three dependent factors make every mixed square appear
    m = tensor([res((1, 0, 0), (0, 1, 0)), res((0, 1, 1)), res((1, 0, 1))])
    total = totalize(m)  # GradedComplex constructor checks d∘d = 0
    for gamma in [(0, 0, 0), (1, 1, 1), (2, 1, 2)]:
        total.fiber(gamma).check_composition(GF())


def test_totalize_shift():
    m = tensor([res((1, 0)), res((0, 1))])
    shifted = totalize(m, shift=-1)
    assert min(shifted.window()) == -1


def test_hypercube_augment_one_axis():
    # +C over a single axis glues the resolution back together
    m = tensor([res((1,))])
    aug = hypercube_augment(m, interior(0))
    table = module_homology_table(aug)
    assert table.records() == [{"i": 0, "degree": [0], "dim": 1}]


def test_hypercube_augment_two_principal():
    m = tensor([res((1, 0)), res((0, 1))])
    aug = hypercube_augment(m, interior(0, 1))
    table = module_homology_table(aug)
    # H_1 = R/(xy) pattern, nothing else
    prod = MonomialIdeal(2, [(1, 1)])
    assert table.nonzero_indices() == [1]
    for gamma in iter_box(table.box):
        assert table.dim(1, gamma) == (0 if prod.contains(gamma) else 1)


def test_hypercube_augment_maximal_ideal_pair():
    m2 = MonomialIdeal(2, [(1, 0), (0, 1)])
    m = tensor([taylor_resolution(m2), taylor_resolution(m2)])
    aug = hypercube_augment(m, interior(0, 1))
    table = module_homology_table(aug)
    # kernel of m (x) m -> m^2 is one-dimensional, in degree (1,1)
    assert table.slice(2) == {(1, 1): 1}


def test_hypercube_augment_requires_interior():
    m = tensor([res((1, 0)), res((0, 1))])
    with pytest.raises(InvalidKind):
        hypercube_augment(m, face(0, 1))
    with pytest.raises(EmptySelection):
        hypercube_augment(m, interior())


def test_hypercube_extension_preserves_homology():
    """H(+C) = H(C): the extension glues an exact cube on top."""
    fams = [
        [(1, 0), (0, 1)],
        [(2, 0), (1, 1)],
    ]
    m = tensor([res(*fams[0]), res(*fams[1])])
    plain = totalize(m)
    extended = totalize(hypercube_extend(m), shift=-1)
    t1 = module_homology_table(plain)
    t2 = module_homology_table(extended, box=t1.box)
    assert t1.entries == t2.entries


def test_totalize_tensor_taylor_pair_tor1():
    """Tor_1 of R/(x,y) and R/(x) is (I cap J)/IJ = (x)/(x^2, xy)."""
    m = tensor([res((1, 0), (0, 1)), res((1, 0))])
    table = module_homology_table(totalize(m))
    assert table.slice(1) == {(1, 0): 1}


def test_stability_of_multicomplex_fibers():
    m = tensor([res((1, 0), (0, 1)), res((2, 0))])
    total = totalize(m)
    box = total.stable_box()
    big = Multidegree(tuple(b + 2 for b in box))
    table = module_homology_table(total, box=big)
    for gamma in iter_box(big):
        clamped = tuple(min(g, b) for g, b in zip(gamma, box))
        for i in total.window():
            assert table.dim(i, gamma) == table.dim(i, clamped)
