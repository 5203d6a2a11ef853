import pytest
from hypothesis import given
from hypothesis import strategies as st

from cubicfold.hassett import (
    Kodaira,
    KuznetsovClass,
    NotAdmissible,
    admissible,
    cubic_invariants,
    degree_bound_scan,
    dimension_identity,
    discriminant,
    has_associated_k3,
    kodaira_status,
    kuznetsov_numeric_class,
    self_intersection,
)
from cubicfold.surface import Polarization, SurfaceInvariants, invariants
from cubicfold.tables import ENRIQUES, TABLE


def test_self_intersection_examples():
    assert self_intersection(SurfaceInvariants(4, -6, 9, 3, 6, 0)) == 12
    assert self_intersection(SurfaceInvariants(5, -5, 5, 7, 6, 4)) == 13
    enr = SurfaceInvariants(ENRIQUES["H2"], ENRIQUES["HK"], ENRIQUES["K2"], ENRIQUES["chi_top"], 6, 0)
    assert self_intersection(enr) == 48
    assert cubic_invariants(enr).d == 44


def test_discriminant_examples():
    assert discriminant(13, 5) == 14
    assert discriminant(12, 4) == 20
    assert discriminant(48, 10) == 44


def test_every_row_discriminant():
    for r in TABLE:
        inv = invariants(Polarization(r.a, r.mults))
        assert discriminant(self_intersection(inv), inv.H2) == r.d


def test_closed_form_discriminant():
    # with chi(H) = 6 the discriminant only depends on H^2 and p
    for r in TABLE:
        assert r.d == -r.H2**2 + 27 * r.H2 - 72 - 6 * r.p


def test_admissible():
    assert [d for d in range(51) if admissible(d)] == [8, 12, 14, 18, 20, 24, 26, 30, 32, 36, 38, 42, 44, 48, 50]
    assert admissible(8) and not admissible(10) and not admissible(6)


def test_associated_k3():
    for d in (14, 26, 38, 74):
        assert has_associated_k3(d)
    for d in (8, 12, 18, 20, 32, 44):
        assert not has_associated_k3(d)
    with pytest.raises(NotAdmissible):
        has_associated_k3(10)


@given(st.integers(7, 2000))
def test_k3_false_when_four_divides(d):
    if admissible(d) and d % 4 == 0:
        assert not has_associated_k3(d)


def test_kodaira_examples():
    for d in range(12, 39):
        if admissible(d):
            assert kodaira_status(d).status is Kodaira.UNIRATIONAL
    assert kodaira_status(8).status is Kodaira.UNIRATIONAL
    assert kodaira_status(44).status is Kodaira.NEGATIVE
    assert kodaira_status(42).status is Kodaira.UNKNOWN
    assert kodaira_status(42).provenance == ()
    assert kodaira_status(86).status is Kodaira.NONNEGATIVE
    with pytest.raises(NotAdmissible):
        kodaira_status(9)


def test_general_type_above_122():
    hits = [d for d in range(123, 1000) if admissible(d) and d % 6 == 2 and d % 4
            and all(p % 3 == 1 for p in _odd_primes(d))]
    assert hits
    for d in hits:
        st_ = kodaira_status(d)
        assert st_.status is Kodaira.GENERAL_TYPE
        assert any("proposition" in p for p in st_.provenance)


def _odd_primes(n):
    out = []
    while n % 2 == 0:
        n //= 2
    p = 3
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 2
    if n > 1:
        out.append(n)
    return out


def test_provenance_consistent_up_to_200():
    for d in range(7, 201):
        if admissible(d):
            assert kodaira_status(d).consistent, d


def test_provenance_marks_cited():
    prov = kodaira_status(8).provenance
    assert prov and all("cited" in p for p in prov)
    assert all("cited" not in p for p in kodaira_status(14).provenance)


def test_dimension_identity():
    assert dimension_identity(41, 22, 8)
    assert dimension_identity(27, 28, 0)
    assert not dimension_identity(47, 10, 3)
    for r in TABLE:
        assert dimension_identity(r.h0_N, r.h0_I3, r.h0_NX)
    assert dimension_identity(ENRIQUES["h0_N"], ENRIQUES["h0_I3"], ENRIQUES["h0_NX"])


def test_kuznetsov():
    assert kuznetsov_numeric_class(10, 0) is KuznetsovClass.TwistTwo
    assert kuznetsov_numeric_class(4, -6) is KuznetsovClass.TwistOne
    assert kuznetsov_numeric_class(9, -1) is KuznetsovClass.NONE
    two = sorted((r.d, r.p) for r in TABLE if kuznetsov_numeric_class(r.H2, r.HK) is KuznetsovClass.TwistTwo)
    assert two == [(14, 14), (20, 13), (26, 12), (32, 11), (38, 10)]


def test_degree_bound_scan():
    full = degree_bound_scan(6, 19, 55)
    assert (full.max_H2, full.witness, full.unbounded) == (13, (13, 3), False)
    assert full.claimed == 15 and not full.agrees
    no_chi1 = degree_bound_scan(None, 19, 55)
    assert (no_chi1.max_H2, no_chi1.witness) == (18, (18, 18))
    assert degree_bound_scan(6, 19, None).unbounded
    assert degree_bound_scan(6, 19, 5).max_H2 is None
