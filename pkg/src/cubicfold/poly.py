"""Homogeneous polynomials over F_q.

Monomials of a fixed degree are ordered graded-lexicographically: within a
degree, exponent vectors are sorted lexicographically in decreasing order, so
``x0^d`` comes first and ``x_{n-1}^d`` last.  This order is used everywhere a
polynomial is flattened to a coefficient vector.

Polynomial text syntax: terms ``c*x0^e0*x1^e1*...`` joined by ``+``/``-``.
The coefficient and any ``^1`` may be omitted; coefficients are integers and
are reduced mod q.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache
from math import comb

import numpy as np

from .arith import matmul, reduce


class VariableMismatch(ValueError):
    pass


class DegreeMismatch(ValueError):
    pass


class ParseError(ValueError):
    pass


class NonHomogeneous(ValueError):
    pass


@lru_cache(maxsize=None)
def _basis(nvars: int, degree: int) -> tuple[tuple[int, ...], ...]:
    if nvars == 1:
        return ((degree,),)
    out = []
    for e in range(degree, -1, -1):
        out.extend((e,) + rest for rest in _basis(nvars - 1, degree - e))
    return tuple(out)


def monomial_basis(nvars: int, degree: int) -> list[tuple[int, ...]]:
    """All exponent vectors of total ``degree`` in ``nvars`` variables."""
    if nvars < 1 or degree < 0:
        raise ValueError("need nvars >= 1 and degree >= 0")
    return list(_basis(nvars, degree))


def n_monomials(nvars: int, degree: int) -> int:
    return comb(degree + nvars - 1, nvars - 1) if degree >= 0 else 0


@lru_cache(maxsize=None)
def exponents(nvars: int, degree: int) -> np.ndarray:
    a = np.array(_basis(nvars, degree), dtype=np.int64).reshape(-1, nvars)
    a.flags.writeable = False
    return a


@lru_cache(maxsize=None)
def monomial_index(nvars: int, degree: int) -> dict[tuple[int, ...], int]:
    return {m: i for i, m in enumerate(_basis(nvars, degree))}


def _keys(exps: np.ndarray, base: int) -> np.ndarray:
    weights = base ** np.arange(exps.shape[-1] - 1, -1, -1, dtype=np.int64)
    return exps @ weights


@lru_cache(maxsize=None)
def mult_table(nvars: int, d1: int, d2: int) -> np.ndarray:
    """``T[i, j]`` = index of ``m_i * m_j`` in ``monomial_basis(nvars, d1 + d2)``."""
    d = d1 + d2
    target = _keys(exponents(nvars, d), d + 1)
    # keys are decreasing along the graded-lex basis
    order = np.argsort(target)
    s = exponents(nvars, d1)[:, None, :] + exponents(nvars, d2)[None, :, :]
    k = _keys(s, d + 1)
    t = order[np.searchsorted(target[order], k)]
    t.flags.writeable = False
    return t


def evaluate_monomials(points: np.ndarray, degree: int, q: int) -> np.ndarray:
    """Values of every degree-``degree`` monomial at each point.

    ``points`` has shape ``(npts, nvars)``; the result has shape
    ``(n_monomials, npts)`` with rows in basis order.
    """
    points = reduce(np.atleast_2d(np.asarray(points, dtype=np.float64)), q)
    npts, nvars = points.shape
    if degree == 0:
        return np.ones((1, npts))
    # powers[v, e] = points[:, v] ** e
    powers = np.ones((nvars, degree + 1, npts))
    for e in range(1, degree + 1):
        powers[:, e] = reduce(powers[:, e - 1] * points.T, q)
    exps = exponents(nvars, degree)
    out = powers[0, exps[:, 0]]
    for v in range(1, nvars):
        out = reduce(out * powers[v, exps[:, v]], q)
    return out


@dataclass
class HomogeneousPoly:
    """A homogeneous polynomial with sparse terms ``{exponents: coeff}``."""

    nvars: int
    degree: int
    q: int
    terms: dict[tuple[int, ...], int] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for m, c in self.terms.items():
            m = tuple(int(e) for e in m)
            if len(m) != self.nvars:
                raise VariableMismatch(f"monomial {m} has wrong length")
            if sum(m) != self.degree:
                raise NonHomogeneous(f"monomial {m} is not of degree {self.degree}")
            c = int(c) % self.q
            if c:
                clean[m] = c
        self.terms = clean

    @classmethod
    def zero(cls, nvars, degree, q):
        return cls(nvars, degree, q, {})

    @classmethod
    def constant(cls, nvars, c, q):
        return cls(nvars, 0, q, {(0,) * nvars: c})

    @classmethod
    def variable(cls, nvars, i, q):
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, 1, q, {tuple(e): 1})

    @classmethod
    def from_vector(cls, nvars, degree, vec, q):
        basis = _basis(nvars, degree)
        vec = np.asarray(vec)
        if vec.shape[0] != len(basis):
            raise DegreeMismatch("coefficient vector has the wrong length")
        nz = np.flatnonzero(vec)
        return cls(nvars, degree, q, {basis[i]: int(vec[i]) for i in nz})

    def to_vector(self) -> np.ndarray:
        idx = monomial_index(self.nvars, self.degree)
        v = np.zeros(len(idx))
        for m, c in self.terms.items():
            v[idx[m]] = c
        return v

    def is_zero(self) -> bool:
        return not self.terms

    def _check(self, other: "HomogeneousPoly"):
        if self.nvars != other.nvars:
            raise VariableMismatch(f"{self.nvars} vs {other.nvars} variables")
        if self.q != other.q:
            raise ValueError("polynomials over different fields")

    def __add__(self, other):
        self._check(other)
        if self.is_zero():
            return other.copy()
        if other.is_zero():
            return self.copy()
        if self.degree != other.degree:
            raise DegreeMismatch("sum of forms of different degree")
        t = dict(self.terms)
        for m, c in other.terms.items():
            t[m] = t.get(m, 0) + c
        return HomogeneousPoly(self.nvars, self.degree, self.q, t)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        return multiply(self, other)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, HomogeneousPoly):
            return NotImplemented
        if self.is_zero() and other.is_zero():
            return self.nvars == other.nvars
        return (self.nvars, self.degree, self.q, self.terms) == (
            other.nvars,
            other.degree,
            other.q,
            other.terms,
        )

    def copy(self):
        return HomogeneousPoly(self.nvars, self.degree, self.q, dict(self.terms))

    def scale(self, c: int):
        return HomogeneousPoly(
            self.nvars, self.degree, self.q, {m: v * c for m, v in self.terms.items()}
        )

    def evaluate(self, point) -> int:
        total = 0
        for m, c in self.terms.items():
            t = c
            for x, e in zip(point, m):
                if e:
                    t = t * pow(int(x), e, self.q) % self.q
            total += t
        return total % self.q

    def partial_derivative(self, var: int) -> "HomogeneousPoly":
        return partial_derivative(self, var)

    def __str__(self):
        return format_poly(self)


def multiply(f: HomogeneousPoly, g: HomogeneousPoly) -> HomogeneousPoly:
    f._check(g)
    q = f.q
    out: dict[tuple[int, ...], int] = {}
    for m1, c1 in f.terms.items():
        for m2, c2 in g.terms.items():
            m = tuple(a + b for a, b in zip(m1, m2))
            out[m] = (out.get(m, 0) + c1 * c2) % q
    return HomogeneousPoly(f.nvars, f.degree + g.degree, q, out)


def partial_derivative(f: HomogeneousPoly, var: int) -> HomogeneousPoly:
    if f.degree < 1:
        raise DegreeMismatch("cannot differentiate a constant form")
    out = {}
    for m, c in f.terms.items():
        if m[var]:
            e = list(m)
            e[var] -= 1
            out[tuple(e)] = c * m[var]
    return HomogeneousPoly(f.nvars, f.degree - 1, f.q, out)


def pullback(F: HomogeneousPoly, phi: list[HomogeneousPoly]) -> HomogeneousPoly:
    """Substitute the forms ``phi`` for the variables of ``F``.

    The map ``F -> pullback(F, phi)`` is a ring homomorphism; when every
    ``phi_i`` has degree ``a`` the result has degree ``deg(F) * a``.
    """
    if len(phi) != F.nvars:
        raise VariableMismatch(f"{F.nvars} variables but {len(phi)} forms")
    degs = {p.degree for p in phi if not p.is_zero()} or {phi[0].degree}
    if len(degs) != 1 or len({p.nvars for p in phi}) != 1:
        raise DegreeMismatch("pullback forms must share degree and ring")
    a = degs.pop()
    nv = phi[0].nvars
    q = F.q
    one = HomogeneousPoly.constant(nv, 1, q)
    powers: dict[tuple[int, int], HomogeneousPoly] = {}

    def power(i, e):
        if e == 0:
            return one
        if (i, e) not in powers:
            powers[(i, e)] = multiply(power(i, e - 1), phi[i])
        return powers[(i, e)]

    out = HomogeneousPoly.zero(nv, F.degree * a, q)
    for m, c in F.terms.items():
        t = one
        for i, e in enumerate(m):
            if e:
                t = multiply(t, power(i, e))
        out = out + t.scale(c)
    return out


def format_poly(f: HomogeneousPoly) -> str:
    if f.is_zero():
        return "0"
    parts = []
    for m in sorted(f.terms, reverse=True):
        c = f.terms[m]
        factors = [f"x{i}" + (f"^{e}" if e > 1 else "") for i, e in enumerate(m) if e]
        if not factors:
            parts.append(str(c))
        elif c == 1:
            parts.append("*".join(factors))
        else:
            parts.append("*".join([str(c)] + factors))
    return " + ".join(parts)


_TERM = re.compile(r"\s*([+-])?\s*([^+-]+)")
_FACTOR = re.compile(r"^(?:(\d+)|x(\d+)(?:\^(\d+))?)$")


def parse_poly(text: str, nvars: int, q: int) -> HomogeneousPoly:
    """Parse the shared text syntax; raises ParseError or NonHomogeneous."""
    text = text.strip()
    if not text:
        raise ParseError("empty polynomial")
    terms: dict[tuple[int, ...], int] = {}
    pos = 0
    first = True
    for mt in _TERM.finditer(text):
        if mt.start() != pos:
            raise ParseError(f"unexpected text at {pos}: {text!r}")
        pos = mt.end()
        sign, body = mt.group(1), mt.group(2).strip()
        if sign is None and not first:
            raise ParseError(f"missing operator before {body!r}")
        first = False
        coeff = -1 if sign == "-" else 1
        exps = [0] * nvars
        for fac in body.split("*"):
            fm = _FACTOR.match(fac.strip())
            if not fm:
                raise ParseError(f"bad factor {fac!r}")
            if fm.group(1) is not None:
                coeff *= int(fm.group(1))
            else:
                v = int(fm.group(2))
                if v >= nvars:
                    raise ParseError(f"variable x{v} out of range for {nvars} variables")
                exps[v] += int(fm.group(3) or 1)
        m = tuple(exps)
        terms[m] = (terms.get(m, 0) + coeff) % q
    if pos != len(text):
        raise ParseError(f"trailing text in {text!r}")
    degrees = {sum(m) for m, c in terms.items() if c}
    if len(degrees) > 1:
        raise NonHomogeneous(f"terms of degrees {sorted(degrees)}")
    degree = degrees.pop() if degrees else 0
    return HomogeneousPoly(nvars, degree, q, {m: c for m, c in terms.items() if c})


def multiplication_matrix(f: HomogeneousPoly, degree: int) -> np.ndarray:
    """Rows: coefficient vectors of ``m * f`` for each monomial ``m`` of ``degree``."""
    table = mult_table(f.nvars, degree, f.degree)
    out = np.zeros((table.shape[0], n_monomials(f.nvars, degree + f.degree)))
    vec = f.to_vector()
    nz = np.flatnonzero(vec)
    rows = np.arange(table.shape[0])[:, None]
    out[rows, table[:, nz]] = vec[nz][None, :]
    return out


def vectors_times_monomials(vecs: np.ndarray, nvars: int, d_vec: int, d_mono: int) -> np.ndarray:
    """Products of coefficient vectors (degree ``d_vec``) with all monomials.

    Returns shape ``(n_monomials(d_mono), len(vecs), n_monomials(d_vec + d_mono))``.
    """
    table = mult_table(nvars, d_mono, d_vec)
    vecs = np.atleast_2d(vecs)
    out = np.zeros((table.shape[0], vecs.shape[0], n_monomials(nvars, d_vec + d_mono)))
    for i in range(table.shape[0]):
        out[i][:, table[i]] = vecs
    return out


def evaluate_forms(forms: list[HomogeneousPoly], points: np.ndarray, q: int) -> np.ndarray:
    """Values of forms of a common degree at points; shape ``(npts, nforms)``."""
    d = forms[0].degree
    coeffs = np.array([f.to_vector() for f in forms])
    return matmul(evaluate_monomials(points, d, q).T, coeffs.T, q)
