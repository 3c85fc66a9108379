"""Multigraded support regions of Tor tables.

A region is stored as the set of its nonzero cells inside a box, with the
upward-closure rule: a cell touching a box face represents every degree
beyond it in that direction, so membership of any degree is decided by the
min(gamma, box) pullback.  The union-equality checker for disjoint
variable-generated ideals compares supports of Tor against products with
Tor against sums and cross-checks both containments through the two
Mayer-Vietoris spectral sequences.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import OverlappingPartitions
from .exactlin import GF, PrimeField
from .gcomplex import TorTable
from .monomial import GradingMap, MonomialIdeal, Multidegree, combine, iter_box, lcm_deg
from .spectral import mv_double
from .sumprod import CheckReport
from .torlab import family_box, multi_tor


@dataclass(frozen=True)
class SupportRegion:
    box: Multidegree
    cells: frozenset

    def member(self, gamma) -> bool:
        clamped = tuple(min(g, b) for g, b in zip(gamma, self.box))
        return clamped in self.cells

    def rebase(self, new_box) -> "SupportRegion":
        new_box = Multidegree(new_box)
        if not self.box.leq(new_box):
            raise ValueError("rebase target must dominate the region box")
        cells = frozenset(
            tuple(g) for g in iter_box(new_box) if self.member(g)
        )
        return SupportRegion(new_box, cells)

    def union(self, other: "SupportRegion") -> "SupportRegion":
        box = lcm_deg(self.box, other.box)
        a, b = self.rebase(box), other.rebase(box)
        return SupportRegion(box, a.cells | b.cells)

    def project_cells(self, grading: GradingMap):
        """Images of the cells under a coarse grading (cellwise; the closure
        rule is not expanded)."""
        return sorted({grading.apply(c) for c in self.cells})

    def is_empty(self) -> bool:
        return not self.cells

    def sorted_cells(self):
        return sorted(self.cells)


def support_region(table: TorTable, j: int | None = None) -> SupportRegion:
    """Cells where the j-th (or the union over all j) table entry is nonzero."""
    if j is None:
        cells = {g for (_, g) in table.entries}
    else:
        cells = {g for (i, g) in table.entries if i == j}
    return SupportRegion(table.box, frozenset(cells))


def region_compare(a: SupportRegion, b: SupportRegion) -> dict:
    """Exact set comparison over the common box, with witness cells."""
    box = lcm_deg(a.box, b.box)
    ra, rb = a.rebase(box), b.rebase(box)
    left = sorted(ra.cells - rb.cells)
    right = sorted(rb.cells - ra.cells)
    return {
        "equal": not left and not right,
        "box": list(box),
        "left_minus_right": [list(c) for c in left],
        "right_minus_left": [list(c) for c in right],
    }


def _tor_region(ideal, coefficient, fld, box) -> tuple:
    table = multi_tor([ideal], coefficient=coefficient, fld=fld, box=box)
    return table, support_region(table)


def supportoftors_check(partitions, coefficient: MonomialIdeal,
                        p: int, fld: PrimeField = GF(),
                        max_spectral_degrees: int = 8) -> CheckReport:
    """Union-equality of Tor supports over products versus sums of the
    variable-generated ideals of a disjoint partition family, for all
    p-subsets, plus the spectral-sequence containment cross-checks."""
    n = coefficient.n
    sets = [tuple(sorted(set(int(i) for i in J))) for J in partitions]
    if any(not J for J in sets):
        raise OverlappingPartitions("empty variable set in partition")
    seen: set = set()
    for J in sets:
        if seen & set(J):
            raise OverlappingPartitions(f"overlapping variable sets at {J}")
        if any(i < 0 or i >= n for i in J):
            raise IndexError(f"variable index out of range in {J}")
        seen |= set(J)
    s = len(sets)
    if not 1 <= p <= s:
        raise ValueError(f"p={p} outside 1..{s}")
    ideals = [MonomialIdeal.variables(n, J) for J in sets]
    coeff = None if coefficient.is_zero() else coefficient

    # the spectral containments bound each subset's support by supports over
    # its own sub-subsets, so the union equality is cumulative over subset
    # sizes up to p (with a fixed size it already fails for M = R, two
    # singleton blocks and p = 2)
    combos = [
        T for size in range(1, p + 1)
        for T in itertools.combinations(range(s), size)
    ]
    prods = {T: combine([ideals[i] for i in T], "product") for T in combos}
    sums = {T: combine([ideals[i] for i in T], "sum") for T in combos}
    box = Multidegree.zero(n)
    for ideal in list(prods.values()) + list(sums.values()):
        box = lcm_deg(box, family_box([ideal], coefficient=coeff))

    report = CheckReport()
    report.context["box"] = list(box)
    prod_regions = {}
    sum_regions = {}
    for T in combos:
        _, prod_regions[T] = _tor_region(prods[T], coeff, fld, box)
        _, sum_regions[T] = _tor_region(sums[T], coeff, fld, box)
    left = SupportRegion(box, frozenset())
    right = SupportRegion(box, frozenset())
    for T in combos:
        left = left.union(prod_regions[T])
        right = right.union(sum_regions[T])
    cmp = region_compare(left, right)
    report.context["union_cells"] = [list(c) for c in left.sorted_cells()]
    report.add(
        "support_union_equality",
        True,
        cmp["equal"],
        [
            {"side": "product_only", "cells": cmp["left_minus_right"]},
            {"side": "sum_only", "cells": cmp["right_minus_left"]},
        ]
        if not cmp["equal"]
        else [],
    )

    # spectral cross-checks: the sum-to-product sequence abuts (here, under
    # the strong independence of disjoint variable ideals) to Tor against
    # the product, the product-to-sum one to Tor against the sum
    tested = sorted(left.cells | right.cells)[:max_spectral_degrees]
    if not tested:
        tested = [tuple(Multidegree.zero(n))]
    ok_stp = True
    ok_pts = True
    witnesses = []
    for T in combos:
        family = [ideals[i] for i in T]
        u = len(family)
        prod_table = multi_tor([prods[T]], coefficient=coeff, fld=fld, box=box)
        sum_table = multi_tor([sums[T]], coefficient=coeff, fld=fld, box=box)
        for g in tested:
            pg = mv_double("sum_to_product", family, coeff, Multidegree(g), fld)
            if not pg.converged:
                ok_stp = False
                witnesses.append({"kind": "sum_to_product", "subset": list(T),
                                  "degree": list(g), "reason": "not convergent"})
                continue
            totals = pg.total_dims()
            table_is = {j + u - 1 for (j, gm) in prod_table.entries if gm == tuple(g)}
            for i in sorted(set(totals) | table_is):
                d = totals.get(i, 0)
                expect = prod_table.dim(i - u + 1, g)
                if d != expect:
                    ok_stp = False
                    witnesses.append(
                        {"kind": "sum_to_product", "subset": list(T),
                         "degree": list(g), "i": i, "actual": d,
                         "expected": expect}
                    )
            pg2 = mv_double("product_to_sum", family, coeff, Multidegree(g), fld)
            if not pg2.converged:
                ok_pts = False
                witnesses.append({"kind": "product_to_sum", "subset": list(T),
                                  "degree": list(g), "reason": "not convergent"})
                continue
            totals2 = pg2.total_dims()
            table_is2 = {j + 1 for (j, gm) in sum_table.entries if gm == tuple(g)}
            for i in sorted(set(totals2) | table_is2):
                d = totals2.get(i, 0)
                expect = sum_table.dim(i - 1, g)
                if d != expect:
                    ok_pts = False
                    witnesses.append(
                        {"kind": "product_to_sum", "subset": list(T),
                         "degree": list(g), "i": i, "actual": d,
                         "expected": expect}
                    )
    report.add("sum_to_product_containment", True, ok_stp,
               [w for w in witnesses if w["kind"] == "sum_to_product"])
    report.add("product_to_sum_containment", True, ok_pts,
               [w for w in witnesses if w["kind"] == "product_to_sum"])
    return report
