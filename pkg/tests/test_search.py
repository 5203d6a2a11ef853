import pytest

from cubicfold.hassett import NotAdmissible, admissible, discriminant, self_intersection
from cubicfold.search import cross_check_table1, enumerate as search, parse_divisor
from cubicfold.surface import Polarization, invariants
from cubicfold.tables import TABLE


def shapes(cands):
    return {c.shape for c in cands}


def test_examples():
    assert {(10, 0, 0, 10), (10, 0, 2, 9)} <= shapes(search(38, 10, 16))
    assert (2, 0, 0, 0) in shapes(search(20))
    d26 = shapes(search(26))
    assert {(7, 3, 9, 0), (8, 3, 8, 2)} <= d26


def test_d42_unverified():
    cands = search(42, 12, 20)
    assert all(not c.verified for c in cands)
    table_shapes = {(r.a, *r.counts) for r in TABLE}
    assert not shapes(cands) & table_shapes
    relaxed = search(42, 12, 20, relaxed=True)
    assert relaxed and all(not c.verified for c in relaxed)


def test_errors():
    with pytest.raises(NotAdmissible):
        search(10)
    with pytest.raises(ValueError):
        search(20, 0, 5)


def test_sorted_and_deterministic():
    a, b = search(20), search(20)
    assert a == b
    assert [(c.p, c.a) for c in a] == sorted((c.p, c.a) for c in a)


def test_monotone_in_bounds():
    for d in (14, 20, 38):
        small = shapes(search(d, 8, 12))
        assert small <= shapes(search(d, 10, 16)) <= shapes(search(d, 12, 20))


def test_derived_fields_recompute():
    for d in range(7, 51):
        if not admissible(d):
            continue
        for c in search(d):
            inv = invariants(c.polarization)
            assert (c.H2, c.HK) == (inv.H2, inv.HK)
            assert c.S2 == self_intersection(inv)
            assert c.d == discriminant(c.S2, c.H2) == d
            assert c.d % 6 in (0, 2)
            assert c.H2 - c.HK == 10


def test_cross_check():
    rep = cross_check_table1()
    assert rep.total == 25 and not rep.missing
    assert rep.errata == [(0, (1, -3), (6, -4))]
    assert cross_check_table1(rows=[]).total == 0
    d26 = cross_check_table1(rows=[r for r in TABLE if r.d == 26])
    assert len(d26.recovered) == 2


def test_parse_divisor():
    assert parse_divisor("4L-(E1+...+E6)-2E7") == Polarization(4, (1,) * 6 + (2,))
    assert parse_divisor("3L-E1-E2-E3-E4") == Polarization(3, (1,) * 4)
    assert parse_divisor("4L-E1-...-E9") == Polarization(4, (1,) * 9)
    assert parse_divisor("2L") == Polarization(2)
    for r in TABLE[1:]:
        assert parse_divisor(r.printed) == Polarization(r.a, r.mults)
    with pytest.raises(ValueError):
        parse_divisor("L-E1")
