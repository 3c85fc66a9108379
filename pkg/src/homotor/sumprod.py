"""The sum complex S (quotients by sums, cochain) and product complex P
(quotients by products, chain) of a family of ideals, their tilde variants
inside the unit Koszul complex, and the degreewise verification suite for
the identities relating their homology to multiple Tor.

All isomorphism claims are certified as equalities of fiber dimensions over
a common stability box: over a field these determine the graded isomorphism
class degree by degree.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .errors import EmptySelection, InvalidKind
from .exactlin import GF, PrimeField
from .gcomplex import (
    GradedComplex,
    TorTable,
    cyclic_summand,
    ideal_summand,
    module_homology_table,
    taylor_resolution,
    with_coefficient,
)
from .monomial import MonomialIdeal, Multidegree, combine, lcm_deg
from .multicomplex import hypercube_augment, interior, tensor
from .spectral import build_filtration, pages
from .torlab import _validate_family, multi_tor, tensor_total


def _cochain_sign(subset, j):
    return (-1) ** sum(1 for t in subset if t < j)


@dataclass
class SumComplex:
    """S^0 = R/(product), S^p = sum of R/(I_{i_1}+...+I_{i_p}) over p-subsets,
    as a cochain complex with unit Koszul differentials (stored at index -p).
    The tilde variant keeps the ideals themselves inside K^(1,...,1;R)."""

    underlying: GradedComplex
    variant: str
    n: int
    ideals: tuple

    def truncated(self) -> GradedComplex:
        """S^1 -> ... -> S^n, the degree-1 truncation (drops index 0)."""
        terms = {i: ss for i, ss in self.underlying.terms.items() if i != 0}
        entries = {i: es for i, es in self.underlying.entries.items() if i != 0}
        return GradedComplex(self.underlying.n, terms, entries, "cochain")

    def bottom_dims(self, gamma) -> int:
        """Fiber dimension of S^0 (or the tilde bottom term) at gamma."""
        bottom = self.underlying.summands(0)
        return sum(1 for s in bottom if s.alive(Multidegree(gamma)))


@dataclass
class ProductComplex:
    """P_p = sum of R/(I_{i_1}...I_{i_p}) over p-subsets, a chain complex
    with unit Koszul differentials; P_0 = 0 in the quotient variant."""

    underlying: GradedComplex
    variant: str
    n: int
    ideals: tuple


def _wedge_terms(ideals, op, make, start):
    """Terms and Koszul entries for the S/P shapes; ``make`` builds a summand
    from a combined ideal, ``start`` handles the degree-0 term."""
    n = len(ideals)
    terms = {}
    index = {}
    for p in range(1, n + 1):
        subs = list(itertools.combinations(range(n), p))
        terms[p] = tuple(
            make(combine([ideals[i] for i in s], op), s) for s in subs
        )
        index[p] = {s: k for k, s in enumerate(subs)}
    if start is not None:
        terms[0] = (start,)
        index[0] = {(): 0}
    return terms, index


def build_s_complex(ideals, variant: str = "quotient",
                    s0: str = "product") -> SumComplex:
    """The sum complex of the family; ``s0`` picks the bottom term of the
    tilde variant (product of the ideals, or their intersection for
    experiments -- theorem checkers use the product)."""
    ideals, n_vars = _validate_family(ideals)
    n = len(ideals)
    if variant not in ("quotient", "tilde"):
        raise InvalidKind(f"unknown variant {variant!r}")
    if s0 not in ("product", "intersection"):
        raise InvalidKind(f"unknown s0 option {s0!r}")
    bottom_ideal = combine(ideals, s0)
    if variant == "quotient":
        make = lambda ideal, s: cyclic_summand(ideal, label=s)
        start = cyclic_summand(bottom_ideal, label=())
    else:
        make = lambda ideal, s: ideal_summand(ideal, label=s)
        start = ideal_summand(bottom_ideal, label=())
    terms, index = _wedge_terms(ideals, "sum", make, start)
    stored = {-p: ss for p, ss in terms.items()}
    entries = {}
    for p in range(n):
        es = []
        for s, si in index[p].items():
            for j in range(n):
                if j in s:
                    continue
                t = tuple(sorted(s + (j,)))
                es.append((si, index[p + 1][t], _cochain_sign(s, j)))
        if es:
            entries[-p] = es
    return SumComplex(
        GradedComplex(n_vars, stored, entries, "cochain"), variant, n, tuple(ideals)
    )


def build_p_complex(ideals, variant: str = "quotient",
                    p0: str = "unit") -> ProductComplex:
    """The product complex; ``p0`` picks the tilde bottom term (R, or the sum
    of the ideals).  With the default, the quotient variant has P_0 = 0."""
    ideals, n_vars = _validate_family(ideals)
    n = len(ideals)
    if variant not in ("quotient", "tilde"):
        raise InvalidKind(f"unknown variant {variant!r}")
    if p0 not in ("unit", "sum"):
        raise InvalidKind(f"unknown p0 option {p0!r}")
    if variant == "quotient":
        make = lambda ideal, s: cyclic_summand(ideal, label=s)
        start = None if p0 == "unit" else cyclic_summand(combine(ideals, "sum"), label=())
    else:
        make = lambda ideal, s: ideal_summand(ideal, label=s)
        bottom = MonomialIdeal.unit(n_vars) if p0 == "unit" else combine(ideals, "sum")
        start = ideal_summand(bottom, label=())
    terms, index = _wedge_terms(ideals, "product", make, start)
    entries = {}
    for p in range(2, n + 1):
        es = []
        for s, si in index[p].items():
            for l, j in enumerate(s):
                t = tuple(x for x in s if x != j)
                es.append((si, index[p - 1][t], (-1) ** l))
        entries[p] = es
    if 0 in terms:
        es = [(index[1][(i,)], 0, 1) for i in range(n)]
        entries[1] = es
    return ProductComplex(
        GradedComplex(n_vars, terms, entries, "chain"), variant, n, tuple(ideals)
    )


def complex_homology_table(c, fld: PrimeField = GF(), box=None) -> TorTable:
    """(Co)homology table of a sum/product complex; cochain complexes are
    reported with positive upper indices."""
    g = c.underlying if isinstance(c, (SumComplex, ProductComplex)) else c
    table = module_homology_table(g, fld, box)
    if g.orientation == "cochain":
        entries = {(-i, gam): d for (i, gam), d in table.entries.items()}
        return TorTable(entries, table.box, [-i for i in table.degrees], "cochain")
    return table


def augmented_interior_H(ideals, subset, coefficient: MonomialIdeal | None = None,
                         fld: PrimeField = GF(), box=None) -> TorTable:
    """The table H_{p,q} = H_{p+q}(augmented interior complex ⊗ M) for the
    chosen subset of the family, keyed by q (so q = -1 row reproduces the
    M ⊗ P_p dimensions)."""
    subset = sorted(set(subset))
    if not subset:
        raise EmptySelection("augmented_interior_H needs a nonempty subset")
    chosen = [ideals[i] for i in subset]
    chosen, _ = _validate_family(chosen)
    p = len(chosen)
    m = tensor([taylor_resolution(i) for i in chosen])
    aug = hypercube_augment(m, interior(*range(p)))
    if coefficient is not None and not coefficient.is_zero():
        aug = with_coefficient(aug, coefficient)
    table = module_homology_table(aug, fld, box)
    entries = {(i - p, gam): d for (i, gam), d in table.entries.items()}
    return TorTable(entries, table.box, [i - p for i in table.degrees])


# ---------------------------------------------------------------------------
# Verification suite


@dataclass
class CheckReport:
    assertions: list = field(default_factory=list)
    context: dict = field(default_factory=dict)

    def add(self, name, checked, passed, witnesses=None, note=None):
        self.assertions.append(
            {
                "name": name,
                "checked": bool(checked),
                "passed": bool(passed) if checked else None,
                "witnesses": witnesses or [],
                "note": note,
            }
        )

    @property
    def passed(self) -> bool:
        return all(a["passed"] for a in self.assertions if a["checked"])

    def to_json(self):
        return {"context": self.context, "assertions": self.assertions,
                "passed": self.passed}


def _common_box(*complexes):
    boxes = [c.stable_box() for c in complexes]
    box = boxes[0]
    for b in boxes[1:]:
        box = lcm_deg(box, b)
    return box


def _diff_tables(lhs, rhs, limit=4):
    """Witnesses where two gamma -> dim maps differ."""
    witnesses = []
    keys = set(lhs) | set(rhs)
    for gamma in sorted(keys):
        if lhs.get(gamma, 0) != rhs.get(gamma, 0):
            witnesses.append(
                {
                    "degree": list(gamma),
                    "expected": rhs.get(gamma, 0),
                    "actual": lhs.get(gamma, 0),
                }
            )
            if len(witnesses) >= limit:
                break
    return witnesses


def verify_identities(ideals, fld: PrimeField = GF()) -> CheckReport:
    """Degreewise verification of the sum/product homology identifications.

    Determines which hypotheses hold (strict-subfamily Tor-independence, the
    partial vanishing conditions V_t) and checks every conclusion whose
    hypothesis is satisfied, exactly, over the common stability box.
    """
    ideals, n_vars = _validate_family(ideals)
    n = len(ideals)
    cache: dict = {}
    report = CheckReport()

    sub_tables = {}
    for size in range(2, n):
        for sub in itertools.combinations(range(n), size):
            sub_tables[sub] = multi_tor([ideals[i] for i in sub], fld=fld, _cache=cache)
    strict_ok = all(
        all(i <= 0 for i in t.nonzero_indices()) for t in sub_tables.values()
    )
    report.context["strict_subfamilies_independent"] = strict_ok

    total = tensor_total(ideals)
    s_complex = build_s_complex(ideals)
    p_complex = build_p_complex(ideals)
    trunc = s_complex.truncated()
    m = tensor([taylor_resolution(i) for i in ideals])
    aug = hypercube_augment(m, interior(*range(n)))
    box = _common_box(total, s_complex.underlying, p_complex.underlying, aug)
    report.context["box"] = list(box)

    tor = module_homology_table(total, fld, box)
    s_tab = complex_homology_table(s_complex, fld, box)
    p_tab = complex_homology_table(p_complex, fld, box)
    trunc_tab = complex_homology_table(SumComplex(trunc, "quotient", n, tuple(ideals)), fld, box)
    aug_tab = module_homology_table(aug, fld, box)
    top = sum(len(i.gens) for i in ideals)
    prod_ideal = combine(ideals, "product")

    from .monomial import iter_box, membership

    cells = list(iter_box(box))
    s0 = {tuple(g): 0 if membership(g, prod_ideal) else 1 for g in cells}

    # sum-side identification H^i(S) = Tor_{n-i-1}; it carries content for
    # 2 <= i <= n-2 (positive Tor index).  At i = n-1 the stated range
    # overshoots: S is exact there whenever the family is strongly
    # independent while Tor_0 = R/(sum) never vanishes.
    if strict_ok:
        wit = []
        ok = True
        for i in range(2, n - 1):
            w = _diff_tables(s_tab.slice(i), tor.slice(n - i - 1))
            if w:
                ok = False
                wit.extend({"i": i, **x} for x in w)
        report.add("sum_homology_vs_tor", True, ok, wit)
    else:
        report.add("sum_homology_vs_tor", False, None)

    # structural boundary facts: H^n(S) = 0 always (n >= 2), and H^{n-1}(S)
    # = 0 for n >= 3 (the abutment vanishes below the corner degree)
    if n >= 2:
        wit = []
        ok = not s_tab.slice(n)
        if n >= 3:
            ok = ok and not s_tab.slice(n - 1)
        if not ok:
            for i in (n, n - 1):
                for g, d in sorted(s_tab.slice(i).items()):
                    wit.append({"i": i, "degree": list(g), "actual": d,
                                "expected": 0})
        report.add("sum_top_vanishing", True, ok, wit[:4])
    else:
        report.add("sum_top_vanishing", False, None)

    # four-term bookkeeping for S^0 and H^1(S_-); at n = 2 the closing map to Tor_0 is
    # carried by S^1 on the first page, so the count closes with Tor_1 alone
    if strict_ok and n >= 2:
        wit = []
        ok = True
        h1 = trunc_tab.slice(1)
        for gamma in cells:
            g = tuple(gamma)
            lhs = s0[g] - h1.get(g, 0)
            if n >= 3:
                rhs = tor.dim(n - 1, g) - tor.dim(n - 2, g)
            else:
                rhs = tor.dim(1, g)
            if lhs != rhs:
                ok = False
                if len(wit) < 4:
                    wit.append({"degree": list(g), "actual": lhs, "expected": rhs})
        report.add("four_term_bookkeeping", True, ok, wit)
    else:
        report.add("four_term_bookkeeping", False, None)

    # top range: Tor_{n+i} = H_{n+i}(augmented interior)
    if strict_ok:
        wit = []
        ok = True
        for i in range(0, max(top - n, 0) + 1):
            w = _diff_tables(tor.slice(n + i), aug_tab.slice(n + i))
            if w:
                ok = False
                wit.extend({"i": i, **x} for x in w)
        report.add("top_tor_vs_augmented", True, ok, wit)
    else:
        report.add("top_tor_vs_augmented", False, None)

    # product-side identification: H_i(P) = Tor_{i-1} for i <= n
    if strict_ok:
        wit = []
        ok = True
        for i in range(1, n + 1):
            w = _diff_tables(p_tab.slice(i), tor.slice(i - 1))
            if w:
                ok = False
                wit.extend({"i": i, **x} for x in w)
        report.add("product_homology_vs_tor", True, ok, wit)
    else:
        report.add("product_homology_vs_tor", False, None)

    # partial range: with p* = largest p < n such that every subfamily of size
    # <= p is independent, Tor_i = H_{i+1}(P) for 1 <= i <= p*
    p_star = 1
    for size in range(2, n):
        if all(
            all(i <= 0 for i in sub_tables[sub].nonzero_indices())
            for sub in itertools.combinations(range(n), size)
        ):
            p_star = size
        else:
            break
    report.context["partial_independence_bound"] = p_star
    if n >= 2:
        wit = []
        ok = True
        for i in range(1, p_star + 1):
            w = _diff_tables(tor.slice(i), p_tab.slice(i + 1))
            if w:
                ok = False
                wit.extend({"i": i, **x} for x in w)
        report.add("partial_product_range", True, ok, wit)
    else:
        report.add("partial_product_range", False, None)

    # product-vs-sum comparison H_i(P) = H^{n-i}(S); valid at i = 0 and 2 <= i <= n-2.
    # At i = 1 the stated range overshoots: H_1(P) = R/(sum) never vanishes
    # while H^{n-1}(S) always does for n >= 3.
    if strict_ok:
        wit = []
        ok = True
        for i in [0] + list(range(2, n - 1)):
            w = _diff_tables(p_tab.slice(i), s_tab.slice(n - i))
            if w:
                ok = False
                wit.extend({"i": i, **x} for x in w)
        report.add("product_vs_sum_homology", True, ok, wit)
    else:
        report.add("product_vs_sum_homology", False, None)

    # the product-side four-term bookkeeping
    if strict_ok and n >= 2:
        wit = []
        ok = True
        h1 = trunc_tab.slice(1)
        for gamma in cells:
            g = tuple(gamma)
            lhs = s0[g] - h1.get(g, 0)
            if n >= 3:
                rhs = p_tab.dim(n, g) - p_tab.dim(n - 1, g)
            else:
                rhs = p_tab.dim(2, g)
            if lhs != rhs:
                ok = False
                if len(wit) < 4:
                    wit.append({"degree": list(g), "actual": lhs, "expected": rhs})
        report.add("four_term_product", True, ok, wit)
    else:
        report.add("four_term_product", False, None)

    # under V_{s+1} there is a surjection Tor_{n+s} -> H_{n,s}, an
    # isomorphism under V_{s+2}; dimensionwise: >= resp. ==
    s_max = max(top - n, 0)

    def v_condition(t):
        if n <= 2:
            return True
        for p in range(2, n):
            for sub in itertools.combinations(range(n), p):
                for q in range(1, p + t):
                    if not sub_tables[sub].is_zero(q):
                        return False
        return True

    v_cache = {}

    def V(t):
        if t not in v_cache:
            v_cache[t] = v_condition(t)
        return v_cache[t]

    wit = []
    ok = True
    any_checked = False
    for s in range(0, s_max + 1):
        if not V(s + 1):
            continue
        any_checked = True
        iso = V(s + 2)
        lhs = tor.slice(n + s)
        rhs = aug_tab.slice(n + s)
        for g in sorted(set(lhs) | set(rhs)):
            a, b = lhs.get(g, 0), rhs.get(g, 0)
            bad = (a != b) if iso else (a < b)
            if bad:
                ok = False
                if len(wit) < 4:
                    wit.append({"s": s, "degree": list(g), "tor": a, "aug": b,
                                "iso_expected": iso})
    report.add("surjection_injection_bounds", any_checked, ok, wit)
    return report


def exactness_equivalences(ideals, fld: PrimeField = GF()) -> CheckReport:
    """Exactness equivalences: strong Tor-independence against (2) the
    exactness of the q >= 0 rows of the augmented-interior spectral sequence
    of every subfamily, (3) vanishing of H_i(P) for i >= 2 for every
    subfamily, (4) exactness of every subfamily's sum complex."""
    from .torlab import independence

    ideals, n_vars = _validate_family(ideals)
    n = len(ideals)
    report = CheckReport()
    cache: dict = {}

    cond1 = independence(ideals, fld=fld, strong=True, _cache=cache).independent

    h_tables = {}
    for size in range(1, n + 1):
        for sub in itertools.combinations(range(n), size):
            h_tables[sub] = augmented_interior_H(ideals, list(sub), None, fld)

    def rows_vanish(sub):
        """All H_{p,q} entries with q >= 0 vanish over the subfamilies of sub."""
        bad = []
        for p in range(2, len(sub) + 1):
            for t in itertools.combinations(sub, p):
                tab = h_tables[t]
                for q in tab.nonzero_indices():
                    if q >= 0:
                        bad.append((t, q))
        return bad

    cond2 = True
    cond2_witness = []
    for size in range(2, n + 1):
        for sub in itertools.combinations(range(n), size):
            bad = rows_vanish(sub)
            if not bad:
                continue
            # rows with nonzero entries: settle exactness with the engine at
            # the degrees where something survives
            m = tensor([taylor_resolution(ideals[i]) for i in sub])
            box = m.stable_box()
            gammas = set()
            for p in range(2, len(sub) + 1):
                for t in itertools.combinations(sub, p):
                    for (q, g) in h_tables[t].entries:
                        if q >= 0:
                            gammas.add(tuple(min(a, b) for a, b in zip(g, box)))
            exact_here = True
            for g in sorted(gammas):
                pg = pages(build_filtration(m, Multidegree(g), "interior_augmented", fld), fld)
                e2 = pg.page(2)
                for (p, q), d in e2.items():
                    if q >= 0 and p >= 2 and d:
                        exact_here = False
                        cond2_witness.append(
                            {"subfamily": list(sub), "degree": list(g), "p": p, "q": q}
                        )
                        break
                if not exact_here:
                    break
            if not exact_here:
                cond2 = False
    cond3 = True
    cond3_witness = []
    cond4 = True
    cond4_witness = []
    for size in range(1, n + 1):
        for sub in itertools.combinations(range(n), size):
            family = [ideals[i] for i in sub]
            p_tab = complex_homology_table(build_p_complex(family), fld)
            for i in p_tab.nonzero_indices():
                if i >= 2:
                    cond3 = False
                    cond3_witness.append({"subfamily": list(sub), "i": i})
                    break
            s_tab = complex_homology_table(build_s_complex(family), fld)
            if s_tab.nonzero_indices():
                cond4 = False
                cond4_witness.append(
                    {"subfamily": list(sub), "i": s_tab.nonzero_indices()[0]}
                )
    report.context.update(
        {
            "strongly_independent": cond1,
            "rows_exact": cond2,
            "product_rows_exact": cond3,
            "sum_rows_exact": cond4,
        }
    )
    report.add(
        "equivalence_1_vs_2_and_3",
        True,
        cond1 == (cond2 and cond3),
        cond2_witness + cond3_witness,
    )
    report.add(
        "equivalence_1_vs_2_and_4",
        True,
        cond1 == (cond2 and cond4),
        cond2_witness + cond4_witness,
    )
    return report
