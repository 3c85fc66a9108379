"""Spectral sequences of filtered complexes of GF(p) vector spaces.

The engine computes every page by the subspace formula

    E^r_p = (F_p ∩ d^{-1}F_{p-r} + F_{p-1}) / (d(F_{p+r-1}) ∩ F_p + F_{p-1})

degree by degree, iterating until stabilization, and always verifies the
abutment against the homology of the underlying total complex.  Builders
produce the four filtrations attached to an N^n multicomplex (Koszul cone,
its hypercube-augmented variant, the support-count filtration and its
augmented variant) plus the two Mayer-Vietoris double complexes.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import FiltrationViolation, InvalidKind, UnitIdeal
from .exactlin import GF, FiberComplex, PrimeField, Subspace, homology_dims
from .gcomplex import GradedComplex, taylor_resolution, tensor_complexes
from .monomial import Multidegree, MonomialIdeal
from .multicomplex import (
    Multicomplex,
    hypercube_extend,
    koszul_cone,
    totalize,
)


class FilteredFiberComplex:
    """A fiber complex with a bounded ascending filtration F_0 ⊆ ... ⊆ F_N.

    The filtration is given per homological degree as Subspace objects; the
    differentials must respect it.
    """

    def __init__(self, base: FiberComplex, filtration: dict, levels: int,
                 field: PrimeField = GF()):
        self.base = base
        self.field = field
        self.levels = int(levels)
        self.dense = {
            i: base.differential(i).to_dense(field.p) for i in base.window()
        }
        self.filtration = {}
        for i in base.window():
            chain = filtration.get(i)
            dim = base.dim(i)
            if chain is None:
                chain = [Subspace.full(dim, field.p)] * (self.levels + 1)
            if len(chain) != self.levels + 1:
                raise ValueError("filtration chain has wrong length")
            if chain[-1].dim != dim:
                raise FiltrationViolation(f"filtration at degree {i} is not exhaustive")
            for lo, hi in zip(chain, chain[1:]):
                if not hi.contains(lo):
                    raise FiltrationViolation(f"filtration at degree {i} is not ascending")
            self.filtration[i] = list(chain)
        for i in base.window():
            d = self.dense[i]
            if d.size == 0:
                continue
            for p in range(self.levels + 1):
                img = self.filtration[i][p].image_under(d, base.dim(i - 1))
                if not self._level(i - 1, p).contains(img):
                    raise FiltrationViolation(
                        f"d(F_{p}) not inside F_{p} between degrees {i} and {i-1}"
                    )

    def _level(self, i: int, p: int) -> Subspace:
        dim = self.base.dim(i)
        if p < 0:
            return Subspace.zero(dim, self.field.p)
        p = min(p, self.levels)
        chain = self.filtration.get(i)
        if chain is None:
            return Subspace.full(dim, self.field.p)
        return chain[p]


@dataclass
class SpectralPages:
    """Dimension tables E^r_{p,q} for r = 1..r_stab, the page-differential
    ranks, the stabilized table, and the abutment comparison."""

    pages: list
    ranks: list
    e_infinity: dict
    abutment_check: dict
    converged: bool
    r_stab: int
    levels: int = 0

    @property
    def e1(self) -> dict:
        return self.pages[0]

    def page(self, r: int) -> dict:
        return self.pages[min(r, self.r_stab) - 1]

    def total_dims(self, table: dict | None = None) -> dict:
        table = self.e_infinity if table is None else table
        out: dict = {}
        for (p, q), d in table.items():
            out[p + q] = out.get(p + q, 0) + d
        return out


def pages(f: FilteredFiberComplex, fld: PrimeField | None = None) -> SpectralPages:
    """All pages of the filtration spectral sequence of f, with convergence
    verified against the homology of the base complex."""
    fld = f.field if fld is None else fld
    base = f.base
    window = list(base.window())
    N = f.levels

    def numerator_denominator(i, p, r):
        dim_prev = base.dim(i - 1)
        d = f.dense[i]
        z = f._level(i, p).intersect(
            f._level(i - 1, p - r).preimage_under(d, base.dim(i))
            if d.size
            else Subspace.full(base.dim(i), fld.p)
        )
        znum = z.sum(f._level(i, p - 1))
        d_in = f.dense.get(i + 1)
        if d_in is not None and d_in.size:
            img = f._level(i + 1, p + r - 1).image_under(d_in, base.dim(i))
        else:
            img = Subspace.zero(base.dim(i), fld.p)
        bnum = img.intersect(f._level(i, p)).sum(f._level(i, p - 1))
        return z, znum, bnum

    page_tables = []
    rank_tables = []
    r = 1
    prev_dims = None
    while True:
        dims = {}
        zs = {}
        denoms = {}
        for i in window:
            for p in range(N + 1):
                z, znum, bnum = numerator_denominator(i, p, r)
                e = znum.dim - bnum.dim
                zs[(p, i)] = z
                denoms[(p, i)] = bnum
                if e:
                    dims[(p, i - p)] = e
        ranks = {}
        for i in window:
            for p in range(N + 1):
                if (p, i - p) not in dims:
                    continue
                tp = p - r
                if tp < 0 or (tp, (i - 1) - tp) not in dims:
                    continue
                d = f.dense[i]
                img = zs[(p, i)].image_under(d, base.dim(i - 1)) if d.size else \
                    Subspace.zero(base.dim(i - 1), fld.p)
                den = denoms[(tp, i - 1)]
                rk = img.sum(den).dim - den.dim
                if rk:
                    ranks[(p, i - p)] = rk
        page_tables.append(dims)
        rank_tables.append(ranks)
        if prev_dims is not None:
            # dim E^{r} = dim E^{r-1} - rank in - rank out, a structural
            # identity of the subspace formula; failure means an engine bug
            prev_ranks = rank_tables[-2]
            for key in set(prev_dims) | set(dims):
                p, q = key
                out_rk = prev_ranks.get(key, 0)
                in_rk = prev_ranks.get((p + (r - 1), q - (r - 1) + 1), 0)
                expect = prev_dims.get(key, 0) - out_rk - in_rk
                if dims.get(key, 0) != expect:
                    raise AssertionError(
                        f"page bookkeeping broken at r={r}, (p,q)={key}"
                    )
        if prev_dims == dims and not ranks and r > 1:
            break
        if r > N + 3 and not ranks:
            break
        prev_dims = dims
        r += 1
        if r > N + 12:
            raise AssertionError("spectral sequence failed to stabilize")
    e_inf = page_tables[-1]
    base_h = dict(homology_dims(base, fld))
    check = {}
    totals = {}
    for (p, q), d in e_inf.items():
        totals[p + q] = totals.get(p + q, 0) + d
    converged = True
    for i in set(base_h) | set(totals):
        lhs = totals.get(i, 0)
        rhs = base_h.get(i, 0)
        check[i] = (lhs, rhs)
        if lhs != rhs:
            converged = False
    return SpectralPages(
        pages=page_tables,
        ranks=rank_tables,
        e_infinity=e_inf,
        abutment_check=check,
        converged=converged,
        r_stab=len(page_tables),
        levels=N,
    )


# ---------------------------------------------------------------------------
# Filtration builders for the four multicomplex spectral sequences


def _filtered_from_total(total: GradedComplex, gamma, weight, levels,
                         fld: PrimeField) -> FilteredFiberComplex:
    """Coordinate filtration of the fiber of a totalization, with the level
    of each surviving summand computed from its (q, label) tag."""
    fib = total.fiber(gamma)
    filtration = {}
    for i in total.window():
        weights = [weight(s.label) for s in total.summands(i) if s.alive(gamma)]
        chain = [
            Subspace.coordinate(
                len(weights), fld.p, [k for k, w in enumerate(weights) if w <= j]
            )
            for j in range(levels + 1)
        ]
        filtration[i] = chain
    return FilteredFiberComplex(fib, filtration, levels, fld)


def build_filtration(m: Multicomplex, gamma, kind: str,
                     fld: PrimeField = GF()) -> FilteredFiberComplex:
    """The fiber at gamma of one of the four filtrations attached to m.

    kcone / kcone_augmented filter the (augmented) Koszul-cone construction
    by the cone index; interior / interior_augmented filter the (augmented)
    multicomplex by the number of nonzero coordinates.  gamma is clamped to
    the stability box.
    """
    n = m.n_axes
    box = m.stable_box()
    gamma = Multidegree(tuple(min(g, b) for g, b in zip(gamma, box)))
    if kind == "kcone":
        total = totalize(koszul_cone(m))

        def weight(label):
            return label[0][-1]

    elif kind == "kcone_augmented":
        total = totalize(koszul_cone(hypercube_extend(m), face_axes=n), shift=-1)

        def weight(label):
            return label[0][-1]

    elif kind == "interior":
        total = totalize(m)

        def weight(label):
            return sum(1 for v in label[0] if v)

    elif kind == "interior_augmented":
        total = totalize(hypercube_extend(m), shift=-1)

        def weight(label):
            return sum(1 for v in label[0][:n] if v)

    else:
        raise InvalidKind(f"unknown filtration kind {kind!r}")
    return _filtered_from_total(total, gamma, weight, n, fld)


# ---------------------------------------------------------------------------
# Mayer-Vietoris double complexes


def mv_total_complex(kind: str, ideals, coefficient: MonomialIdeal | None = None):
    """Total complex and filtration weight of the S_-/P double complex.

    sum_to_product: S^1 -> ... -> S^n tensored with a resolution of M,
    re-indexed so a summand S^p ⊗ F_q sits in degree n - p + q with
    filtration weight n - p.  product_to_sum: P_p ⊗ F_q in degree p + q,
    weight p.
    """
    from . import sumprod  # deferred: sumprod imports this module

    ideals = list(ideals)
    n = len(ideals)
    for ideal in ideals:
        if ideal.is_unit():
            raise UnitIdeal("mv_double needs proper ideals")
    n_vars = ideals[0].n
    if coefficient is None:
        coefficient = MonomialIdeal.zero(n_vars)
    resolution = taylor_resolution(coefficient)
    if kind == "sum_to_product":
        s = sumprod.build_s_complex(ideals).truncated()
        total = tensor_complexes(s, resolution).shifted(n)

        def weight(label):
            return n + label[0][0]  # stored S index is -p

    elif kind == "product_to_sum":
        p_complex = sumprod.build_p_complex(ideals).underlying
        total = tensor_complexes(p_complex, resolution)

        def weight(label):
            return label[0][0]

    else:
        raise InvalidKind(f"unknown mv kind {kind!r}")
    return total, weight, n


def mv_double(kind: str, ideals, coefficient: MonomialIdeal | None,
              gamma, fld: PrimeField = GF()) -> SpectralPages:
    """Pages of a Mayer-Vietoris double complex at one multidegree.

    The first page of sum_to_product has E^1_{n-p,q} = ⊕ Tor_q(M, R/(sum of
    a p-subset)); product_to_sum has E^1_{p,q} = ⊕ Tor_q(M, R/(product of a
    p-subset)).
    """
    total, weight, n = mv_total_complex(kind, ideals, coefficient)
    box = total.stable_box()
    gamma = Multidegree(tuple(min(g, b) for g, b in zip(gamma, box)))
    f = _filtered_from_total(total, gamma, weight, n, fld)
    return pages(f, fld)
