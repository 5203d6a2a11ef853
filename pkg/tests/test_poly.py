import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cubicfold.poly import (
    DegreeMismatch,
    HomogeneousPoly,
    NonHomogeneous,
    ParseError,
    VariableMismatch,
    format_poly,
    monomial_basis,
    multiply,
    n_monomials,
    parse_poly,
    partial_derivative,
    pullback,
)

Q = 32003


def rand_poly(rng, nvars, degree, q=Q):
    basis = monomial_basis(nvars, degree)
    return HomogeneousPoly.from_vector(nvars, degree, rng.integers(0, q, size=len(basis)), q)


def test_basis_sizes():
    assert len(monomial_basis(3, 2)) == 6
    assert len(monomial_basis(6, 3)) == 56
    assert len(monomial_basis(6, 1)) == 6
    assert n_monomials(6, 3) == 56


def test_basis_order_golden():
    # graded lex, x0 largest; frozen
    assert monomial_basis(3, 2) == [(2, 0, 0), (1, 1, 0), (1, 0, 1), (0, 2, 0), (0, 1, 1), (0, 0, 2)]
    b = monomial_basis(6, 3)
    assert b[0] == (3, 0, 0, 0, 0, 0) and b[-1] == (0, 0, 0, 0, 0, 3)
    assert b[5] == (2, 0, 0, 0, 0, 1)
    assert b == sorted(b, reverse=True)


def test_multiply_examples():
    x0, x1 = HomogeneousPoly.variable(2, 0, Q), HomogeneousPoly.variable(2, 1, Q)
    one = HomogeneousPoly.constant(2, 1, Q)
    assert multiply(x0, one) == x0
    s = x0 + x1
    assert multiply(s, s) == parse_poly("x0^2 + 2*x0*x1 + x1^2", 2, Q)
    with pytest.raises(VariableMismatch):
        multiply(x0, HomogeneousPoly.variable(3, 0, Q))


def test_multiply_evaluation_oracle():
    rng = np.random.default_rng(1)
    f, g = rand_poly(rng, 4, 3), rand_poly(rng, 4, 2)
    fg = multiply(f, g)
    for _ in range(10):
        pt = rng.integers(0, Q, size=4)
        assert fg.evaluate(pt) == f.evaluate(pt) * g.evaluate(pt) % Q


def test_partial_examples():
    f = parse_poly("x0^3", 6, Q)
    assert partial_derivative(f, 0) == parse_poly("3*x0^2", 6, Q)
    assert partial_derivative(parse_poly("x1^2", 6, Q), 0).is_zero()


def test_leibniz():
    rng = np.random.default_rng(2)
    f, g = rand_poly(rng, 3, 4), rand_poly(rng, 3, 3)
    for v in range(3):
        lhs = partial_derivative(multiply(f, g), v)
        rhs = multiply(partial_derivative(f, v), g) + multiply(f, partial_derivative(g, v))
        assert lhs == rhs


def test_pullback_examples():
    rng = np.random.default_rng(3)
    phi = [rand_poly(rng, 3, 2) for _ in range(6)]
    for i in range(6):
        assert pullback(HomogeneousPoly.variable(6, i, Q), phi) == phi[i]
    # conic monomials u^2, uv, uw, v^2, vw, w^2: x0*x3 - x1^2 pulls back to 0
    ver = [HomogeneousPoly(3, 2, Q, {m: 1}) for m in monomial_basis(3, 2)]
    assert pullback(parse_poly("x0*x3 - x1^2", 6, Q), ver).is_zero()
    with pytest.raises(DegreeMismatch):
        pullback(parse_poly("x0", 6, Q), phi[:5] + [rand_poly(rng, 3, 3)])


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(1, 2), st.integers(1, 2), st.integers(1, 3))
def test_pullback_is_ring_homomorphism(seed, dF, dG, a):
    rng = np.random.default_rng(seed)
    phi = [rand_poly(rng, 3, a) for _ in range(6)]
    F, G = rand_poly(rng, 6, dF), rand_poly(rng, 6, dG)
    assert pullback(multiply(F, G), phi) == multiply(pullback(F, phi), pullback(G, phi))
    if dF == dG:
        assert pullback(F + G, phi) == pullback(F, phi) + pullback(G, phi)


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(1, 4))
def test_euler_identity(seed, d):
    rng = np.random.default_rng(seed)
    f = rand_poly(rng, 6, d)
    total = HomogeneousPoly.zero(6, d, Q)
    for i in range(6):
        total = total + multiply(HomogeneousPoly.variable(6, i, Q), partial_derivative(f, i))
    assert total == f.scale(d)


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(0, 4))
def test_format_parse_roundtrip(seed, d):
    rng = np.random.default_rng(seed)
    f = rand_poly(rng, 6, d)
    f = HomogeneousPoly(6, d, Q, {m: c for m, c in f.terms.items() if rng.random() < 0.3})
    if f.is_zero():
        assert format_poly(f) == "0"
    else:
        assert parse_poly(format_poly(f), 6, Q) == f


def test_parse_errors():
    with pytest.raises(ParseError):
        parse_poly("", 6, Q)
    with pytest.raises(ParseError):
        parse_poly("x0 x1", 6, Q)
    with pytest.raises(ParseError):
        parse_poly("x7", 6, Q)
    with pytest.raises(NonHomogeneous):
        parse_poly("x0^2 + x1", 6, Q)
    assert parse_poly("-x0 + 32004*x0", 6, Q).is_zero()
