"""Multiple Tor tables of monomial quotients and the theorem checkers
built on them (rigidity, prefix vanishing, the proper-intersection
equivalence) plus Betti / projective-dimension / depth invariants.

Module-level vanishing always means: every entry of the table over the
stability box is zero.  The checkers run over the graded polynomial ring;
for monomial ideals graded vanishing coincides with local vanishing at the
irrelevant maximal ideal.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .errors import EmptyInput, UnitIdeal, ZeroModule
from .exactlin import GF, PrimeField, ScalarMatrix, rank
from .gcomplex import (
    TorTable,
    koszul_variables,
    module_homology_table,
    taylor_resolution,
    with_coefficient,
)
from .monomial import MonomialIdeal, Multidegree, combine, iter_box, quotient_dimension
from .multicomplex import tensor, totalize


def _validate_family(ideals, error=UnitIdeal):
    ideals = list(ideals)
    if not ideals:
        raise EmptyInput("need at least one ideal")
    for ideal in ideals:
        if ideal.is_unit():
            raise error("unit ideal: the quotient module is zero")
    n = ideals[0].n
    if any(i.n != n for i in ideals):
        from .errors import LengthMismatch

        raise LengthMismatch("ideals live in different variable counts")
    return ideals, n


def family_box(ideals, coefficient: MonomialIdeal | None = None) -> Multidegree:
    """Stability box of the tensor of Taylor resolutions (+ coefficient)."""
    n = ideals[0].n
    box = [0] * n
    for ideal in ideals:
        for k in range(n):
            box[k] += max((g[k] for g in ideal.gens), default=0)
    if coefficient is not None:
        for k in range(n):
            box[k] += max((g[k] for g in coefficient.gens), default=0)
    return Multidegree(box)


def tensor_total(ideals, coefficient: MonomialIdeal | None = None):
    """Totalization of the tensor of Taylor resolutions, with an optional
    quotient coefficient applied termwise."""
    total = totalize(tensor([taylor_resolution(ideal) for ideal in ideals]))
    if coefficient is not None and not coefficient.is_zero():
        total = with_coefficient(total, coefficient)
    return total


def multi_tor(ideals, coefficient: MonomialIdeal | None = None,
              fld: PrimeField = GF(), box=None, _cache: dict | None = None) -> TorTable:
    """Tor_i of the family of quotients R/I (optionally against R/coefficient),
    as a table of fiber dimensions over the box."""
    ideals, n = _validate_family(ideals)
    if coefficient is not None and coefficient.is_unit():
        raise ZeroModule("coefficient module R/I is zero")
    key = None
    if _cache is not None:
        key = (
            tuple(i.key() for i in ideals),
            coefficient.key() if coefficient is not None else None,
            tuple(box) if box is not None else None,
            fld.p,
        )
        hit = _cache.get(key)
        if hit is not None:
            return hit
    total = tensor_total(ideals, coefficient)
    table = module_homology_table(total, fld, box,
                                  ideals=ideals, coefficient=coefficient)
    if _cache is not None:
        _cache[key] = table
    return table


def tor1_oracle(ideals, fld: PrimeField = GF(), box=None) -> TorTable:
    """Tor_1 of the family computed combinatorially, independent of any
    resolution: per degree, the kernel of the sum map on the surviving
    coordinates modulo the span of the pairwise product relations."""
    ideals, n = _validate_family(ideals)
    if box is None:
        box = family_box(ideals)
    else:
        box = Multidegree(box)
    s = len(ideals)
    pair_products = {
        (i, j): combine([ideals[i], ideals[j]], "product")
        for i, j in itertools.combinations(range(s), 2)
    }
    entries = {}
    for gamma in iter_box(box):
        survivors = [i for i in range(s) if ideals[i].contains(gamma)]
        if not survivors:
            continue
        m = len(survivors)
        kernel_dim = m - 1
        pos = {i: k for k, i in enumerate(survivors)}
        rows = []
        for (i, j), prod in pair_products.items():
            if prod.contains(gamma):
                rows.append((i, j))
        triples = []
        for r, (i, j) in enumerate(rows):
            triples.append((r, pos[i], 1))
            triples.append((r, pos[j], -1))
        p_dim = rank(ScalarMatrix(len(rows), m, triples), fld)
        d = kernel_dim - p_dim
        if d:
            entries[(1, tuple(gamma))] = d
    return TorTable(entries, box, [1], ideals=ideals)


@dataclass
class IndependenceReport:
    independent: bool
    strong: bool
    subset_results: dict = field(default_factory=dict)
    recursion_results: dict = field(default_factory=dict)
    agreement: bool = True

    @property
    def passed(self) -> bool:
        return self.agreement

    def to_json(self):
        return {
            "independent": self.independent,
            "strong": self.strong,
            "subsets": {str(list(k)): v for k, v in sorted(self.subset_results.items())},
            "recursion": {str(list(k)): v for k, v in sorted(self.recursion_results.items())},
            "agreement": self.agreement,
        }


def _table_independent(table: TorTable) -> bool:
    return all(i <= 0 for i in table.nonzero_indices())


def independence(ideals, fld: PrimeField = GF(), strong: bool = False,
                 _cache: dict | None = None) -> IndependenceReport:
    """Tor-independence of the family; in strong mode every subset is tested
    and the answer is cross-validated against the pairwise recursion
    criterion (largest index against the sum of the others)."""
    ideals, n = _validate_family(ideals)
    cache = {} if _cache is None else _cache
    if not strong:
        ok = _table_independent(multi_tor(ideals, fld=fld, _cache=cache))
        return IndependenceReport(independent=ok, strong=False)
    s = len(ideals)
    subset_results = {}
    for size in range(2, s + 1):
        for sub in itertools.combinations(range(s), size):
            table = multi_tor([ideals[i] for i in sub], fld=fld, _cache=cache)
            subset_results[sub] = _table_independent(table)
    by_subsets = all(subset_results.values())
    recursion_results = {}
    for size in range(2, s + 1):
        for sub in itertools.combinations(range(s), size):
            j1 = max(sub)
            rest = [ideals[i] for i in sub if i != j1]
            pair = [ideals[j1], combine(rest, "sum")]
            recursion_results[sub] = _table_independent(
                multi_tor(pair, fld=fld, _cache=cache)
            )
    by_recursion = all(recursion_results.values())
    return IndependenceReport(
        independent=by_subsets,
        strong=True,
        subset_results=subset_results,
        recursion_results=recursion_results,
        agreement=by_subsets == by_recursion,
    )


@dataclass
class BettiReport:
    betti: TorTable
    pd: int
    depth: int
    dim: int
    codim: int
    is_cm: bool

    def to_json(self):
        return {
            "betti": self.betti.records(),
            "pd": self.pd,
            "depth": self.depth,
            "dim": self.dim,
            "codim": self.codim,
            "is_cm": self.is_cm,
        }


def betti_table(ideal: MonomialIdeal, fld: PrimeField = GF()) -> BettiReport:
    """Graded Betti numbers beta_{i,gamma} = dim Tor_i(R/I, k)_gamma together
    with pd, depth (Auslander-Buchsbaum), Krull dimension and the CM flag."""
    if ideal.is_unit():
        raise UnitIdeal("R/I is zero")
    n = ideal.n
    variables = koszul_variables([Multidegree.unit(n, i) for i in range(n)])
    total = totalize(tensor([taylor_resolution(ideal), variables]))
    table = module_homology_table(total, fld, ideals=[ideal])
    pd = table.max_nonzero_index() or 0
    depth = n - pd
    dim, codim = quotient_dimension(ideal)
    return BettiReport(table, pd, depth, dim, codim, is_cm=depth == dim)


@dataclass
class RigidityReport:
    vanishing: dict
    top_index: int
    epsilon: int
    sum_pd: int
    artinian_top: bool
    violations: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_json(self):
        return {
            "vanishing": {str(i): v for i, v in sorted(self.vanishing.items())},
            "top_index": self.top_index,
            "epsilon": self.epsilon,
            "sum_pd": self.sum_pd,
            "artinian_top": self.artinian_top,
            "violations": self.violations,
        }


def rigidity_check(ideals, fld: PrimeField = GF(),
                   exhaustive_subsets: bool = False) -> RigidityReport:
    """Empirical falsification of the rigidity statements: once some Tor_i
    vanishes all higher ones must; vanishing passes to prefix (or all)
    subfamilies; and 0 <= eps := dim R + j - sum pd, with eps = 0 forced when
    the top Tor is artinian.  Any violation is reported with a witness."""
    ideals, n = _validate_family(ideals, error=ZeroModule)
    cache: dict = {}
    table = multi_tor(ideals, fld=fld, _cache=cache)
    max_index = sum(len(i.gens) for i in ideals)
    vanishing = {i: table.is_zero(i) for i in range(max_index + 1)}
    violations = []
    seen_zero = None
    for i in range(1, max_index + 1):
        if vanishing[i] and seen_zero is None:
            seen_zero = i
        if seen_zero is not None and not vanishing[i]:
            gamma = sorted(table.slice(i))[0]
            violations.append(
                {
                    "rule": "rigidity",
                    "zero_at": seen_zero,
                    "nonzero_at": i,
                    "witness": {"degree": list(gamma), "dim": table.dim(i, gamma)},
                }
            )
    s = len(ideals)
    if s > 1:
        if exhaustive_subsets:
            subfamilies = [
                sub
                for size in range(1, s)
                for sub in itertools.combinations(range(s), size)
            ]
        else:
            subfamilies = [tuple(range(t)) for t in range(1, s)]
        for sub in subfamilies:
            sub_table = multi_tor([ideals[i] for i in sub], fld=fld, _cache=cache)
            for i in range(1, max_index + 1):
                if vanishing[i] and not sub_table.is_zero(i):
                    gamma = sorted(sub_table.slice(i))[0]
                    violations.append(
                        {
                            "rule": "prefix_vanishing",
                            "index": i,
                            "subfamily": list(sub),
                            "witness": {"degree": list(gamma)},
                        }
                    )
    j = table.max_nonzero_index() or 0
    sum_pd = sum(betti_table(i, fld).pd for i in ideals)
    epsilon = n + j - sum_pd
    if epsilon < 0:
        violations.append({"rule": "epsilon_nonnegative", "epsilon": epsilon})
    top_cells = table.slice(j)
    artinian = bool(top_cells) and all(
        all(g < b for g, b in zip(gamma, table.box)) for gamma in top_cells
    )
    if artinian and epsilon != 0:
        violations.append(
            {"rule": "epsilon_upper_bound", "epsilon": epsilon, "dim_top": 0}
        )
    return RigidityReport(vanishing, j, epsilon, sum_pd, artinian, violations)


@dataclass
class SerreReport:
    cond_tor1_cm: bool
    cond_codim_pd: bool
    cond_proper_cm: bool
    details: dict = field(default_factory=dict)

    @property
    def triple(self):
        return (self.cond_tor1_cm, self.cond_codim_pd, self.cond_proper_cm)

    @property
    def passed(self) -> bool:
        return len(set(self.triple)) == 1

    def to_json(self):
        return {
            "tor1_vanishes_and_tensor_cm": self.cond_tor1_cm,
            "codim_equals_sum_pd": self.cond_codim_pd,
            "proper_intersection_all_cm": self.cond_proper_cm,
            "equivalent": self.passed,
            "details": self.details,
        }


def serre_a8_check(ideals, fld: PrimeField = GF()) -> SerreReport:
    """Three-way equivalence for the quotients R/I_i: (1) Tor_1 of the family
    vanishes and the tensor product is CM; (2) its codimension equals the sum
    of the projective dimensions; (3) the intersection is proper and every
    quotient is CM.  The three truth values must coincide."""
    ideals, n = _validate_family(ideals, error=ZeroModule)
    table = multi_tor(ideals, fld=fld)
    sum_ideal = combine(ideals, "sum")
    tensor_report = betti_table(sum_ideal, fld)
    parts = [betti_table(i, fld) for i in ideals]
    sum_pd = sum(p.pd for p in parts)
    sum_codim = sum(p.codim for p in parts)
    cond1 = table.is_zero(1) and tensor_report.is_cm
    cond2 = tensor_report.codim == sum_pd
    cond3 = sum_codim == tensor_report.codim and all(p.is_cm for p in parts)
    details = {
        "tor1_zero": table.is_zero(1),
        "tensor_cm": tensor_report.is_cm,
        "tensor_codim": tensor_report.codim,
        "sum_pd": sum_pd,
        "sum_codim": sum_codim,
        "parts_cm": [p.is_cm for p in parts],
    }
    return SerreReport(cond1, cond2, cond3, details)
