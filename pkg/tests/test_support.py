"""Support regions and the union-equality checker for disjoint variable
blocks."""

import pytest

from homotor.errors import OverlappingPartitions
from homotor.gcomplex import TorTable
from homotor.monomial import GradingMap, MonomialIdeal, Multidegree
from homotor.support import (
    SupportRegion,
    region_compare,
    support_region,
    supportoftors_check,
)
from homotor.torlab import multi_tor


def test_support_region_basics(kxy):
    empty = support_region(TorTable({}, (1, 1), [0]))
    assert empty.is_empty()
    table = multi_tor([kxy["m"], kxy["x"]])
    r1 = support_region(table, j=1)
    assert r1.sorted_cells() == [(1, 0)]
    # interior cell: no upward closure reaches (2, 0) within the box (2, 1)
    assert tuple(table.box) == (2, 1)
    assert not r1.member((2, 0))


def test_support_region_upward_closure():
    """(x)/(x^2) in k[x,y] is free in the y direction, so the single cell
    at (1, 0) with box (2, 0) represents the whole ray."""
    x = MonomialIdeal(2, [(1, 0)])
    table = multi_tor([x, x])
    r = support_region(table, j=1)
    assert tuple(table.box) == (2, 0)
    assert r.sorted_cells() == [(1, 0)]
    assert r.member((1, 7))
    assert not r.member((2, 7))


def test_region_compare_and_rebase():
    a = SupportRegion(Multidegree((1, 1)), frozenset({(1, 1)}))
    assert region_compare(a, a)["equal"]
    b = SupportRegion(Multidegree((2, 1)), frozenset({(1, 1), (2, 1)}))
    cmp = region_compare(a, b)
    # a's cell (1,1) touches its box so it expands to (2,1) as well: equal
    assert cmp["equal"]
    c = SupportRegion(Multidegree((2, 1)), frozenset({(2, 1)}))
    cmp = region_compare(a, c)
    assert not cmp["equal"]
    assert cmp["left_minus_right"] == [[1, 1]]


def test_projection_commutes_with_union():
    g = GradingMap([[1, 1]])
    a = SupportRegion(Multidegree((1, 1)), frozenset({(0, 1)}))
    b = SupportRegion(Multidegree((1, 1)), frozenset({(1, 0), (1, 1)}))
    u = a.union(b)
    assert set(u.project_cells(g)) == set(a.project_cells(g)) | set(
        b.project_cells(g)
    )


def test_supportoftors_examples():
    r = supportoftors_check([[0], [1]], MonomialIdeal.zero(2), 2)
    assert r.passed
    r = supportoftors_check([[0], [1]], MonomialIdeal(2, [(1, 1)]), 2)
    assert r.passed
    r = supportoftors_check([[0], [1]], MonomialIdeal.zero(2), 1)
    assert r.passed


def test_supportoftors_rejects_overlap():
    with pytest.raises(OverlappingPartitions):
        supportoftors_check([[0, 1], [1]], MonomialIdeal.zero(2), 1)
    with pytest.raises(OverlappingPartitions):
        supportoftors_check([[0], []], MonomialIdeal.zero(2), 1)


def test_supportoftors_with_module_coefficients():
    m = MonomialIdeal(3, [(1, 0, 2)])
    r = supportoftors_check([[0], [1, 2]], m, 2)
    assert r.passed, r.to_json()
