import warnings
from math import comb

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cubicfold.arith import rank
from cubicfold.imageideal import (
    BoundTooSmall,
    GeneratorBoundWarning,
    apply_syzygy,
    degree_linear_normality_check,
    graded_piece,
    hilbert_function,
    image_model,
    koszul,
    minimal_generators,
    presented_model,
    syzygies_up_to,
)
from cubicfold.poly import HomogeneousPoly, parse_poly, pullback, vectors_times_monomials
from cubicfold.surface import Polarization, invariants, rational_map, sample_points, veronese
from cubicfold.tables import find_row

Q = 32003


def row_map(d, p, seed=1):
    r = find_row(d, p)
    P = Polarization(r.a, r.mults)
    return rational_map(sample_points(P.p, Q, seed), P), invariants(P)


def test_veronese_pieces():
    M = veronese(Q)
    assert graded_piece(M, 1).dim == 0
    assert graded_piece(M, 2).dim == 6
    assert graded_piece(M, 3).dim == 28
    assert hilbert_function(M, 3) == {1: 6, 2: 15, 3: 28}
    with pytest.raises(ValueError):
        graded_piece(M, 0)


def test_veronese_generators():
    gens = minimal_generators(veronese(Q), D=4)
    assert [d for d, _ in gens] == [2] * 6
    for _, g in gens:
        assert pullback(g, veronese(Q).forms).is_zero()


def test_pieces_pull_back_to_zero():
    M, _ = row_map(12, 7)
    for t in (2, 3):
        piece = graded_piece(M, t)
        assert piece.dim + hilbert_function(M, t)[t] == comb(t + 5, 5)
        for f in piece.forms(Q):
            assert pullback(f, M.forms).is_zero()


def test_monotone_consistency():
    M, _ = row_map(14, 4)
    model = image_model(M, 4)
    for t in (2, 3):
        low = model.piece(t).basis
        if low.shape[0]:
            prod = vectors_times_monomials(low, 6, t, 1).reshape(-1, model.piece(t + 1).basis.shape[1])
            assert rank(prod, Q) <= model.piece(t + 1).dim


def test_row_hilbert_values():
    M, _ = row_map(14, 4)
    assert hilbert_function(M, 3)[3] == 31
    M, inv = row_map(38, 10)
    assert hilbert_function(M, 3) == {1: 6, 2: 21, 3: 46}
    v = degree_linear_normality_check(M, inv)
    assert v and v.hilbert == v.expected == {1: 6, 2: 21, 3: 46}


def test_normality_veronese():
    v = degree_linear_normality_check(veronese(Q), invariants(Polarization(2)))
    assert v.passed and v.linear_forms == 0


def test_normality_fails_on_wrong_invariants():
    M, inv = row_map(14, 4)
    wrong = invariants(Polarization.from_counts(3, 3, 0, 0))
    assert not degree_linear_normality_check(M, wrong)


def test_degenerate_configuration_fails_normality():
    # nine points on the conic yz = x^2: the conic is a fixed component of the
    # quartics through them, so the map factors through the Veronese surface
    P = Polarization.from_counts(4, 9, 0, 0)
    C = sample_points(9, Q, 0)
    C.points = np.array([[t, t * t, 1] for t in range(1, 10)])
    v = degree_linear_normality_check(rational_map(C, P), invariants(P))
    assert not v
    assert v.hilbert[2] == 15 and v.expected[2] == 18


def test_small_syzygies():
    x0, x1 = parse_poly("x0", 6, Q), parse_poly("x1", 6, Q)
    syz = syzygies_up_to([x0, x1], 2)
    assert syz[2].shape[0] == 1
    f = parse_poly("x0^2 + x3*x4", 6, Q)
    syz = syzygies_up_to([f], 6)
    assert all(s.shape[0] == 0 for s in syz.values())
    with pytest.raises(BoundTooSmall):
        syzygies_up_to([f, parse_poly("x0^3", 6, Q)], 3)


def test_veronese_syzygies_are_exact():
    gens = minimal_generators(veronese(Q), D=3)
    syz = syzygies_up_to(gens, 4)
    assert syz[3].shape[0] == 8  # linear syzygies of the Veronese surface
    for e, rows in syz.items():
        for s in rows:
            assert apply_syzygy(gens, s, e).is_zero()


def test_koszul_in_syzygy_space():
    gens = minimal_generators(veronese(Q), D=3)
    vec = [(d, g.to_vector()) for d, g in gens]
    K = koszul(vec, 4, Q)
    assert K.shape[0] == comb(6, 2)
    full = syzygies_up_to(gens, 4)[4]
    assert rank(np.vstack([full, K]), Q) == rank(full, Q)


def test_minimal_syzygies_of_model():
    model = image_model(veronese(Q), 4)
    model.ensure_syzygies(5)
    assert model.syzygies[3].shape[0] == 8
    # the Veronese has a linear resolution: no new first syzygies after degree 3
    assert model.syzygies[4].shape[0] == 0 and model.syzygies[5].shape[0] == 0
    for e, rows in model.syzygies.items():
        for s in rows:
            assert apply_syzygy(model.generator_polys, s, e).is_zero()


def test_generator_bound_warning():
    M, _ = row_map(14, 16)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        model = image_model(M, 3)
    assert [d for d, _ in model.gens] == [3]
    assert any(issubclass(w.category, GeneratorBoundWarning) for w in caught)


def test_presented_matches_image():
    model = image_model(veronese(Q), 4)
    pres = presented_model([g for _, g in model.generator_polys], 4)
    for t in range(1, 6):
        assert pres.quotient.hilbert(t) == model.quotient.hilbert(t)
    assert [d for d, _ in pres.gens] == [2] * 6


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(1, 3))
def test_random_syzygies_apply_to_zero(seed, n):
    rng = np.random.default_rng(seed)
    gens = []
    for _ in range(n + 1):
        d = int(rng.integers(1, 3))
        vec = rng.integers(0, Q, size=comb(d + 5, 5))
        vec[rng.random(vec.size) < 0.8] = 0
        vec[0] = 1
        gens.append(HomogeneousPoly.from_vector(6, d, vec, Q))
    E = max(g.degree for g in gens) + 1
    for e, rows in syzygies_up_to(gens, E).items():
        for s in rows[:5]:
            assert apply_syzygy([(g.degree, g) for g in gens], s, e).is_zero()
