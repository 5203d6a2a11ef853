"""Blow-ups of the plane at random F_q-points and their maps to P^5."""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

import numpy as np

from .arith import PrimeField, matmul, rank_kernel
from .poly import HomogeneousPoly, evaluate_monomials, exponents, n_monomials


class DegenerateConfiguration(RuntimeError):
    """The sampled points are not general enough for the requested row."""


class WrongDimension(RuntimeError):
    pass


@dataclass(frozen=True)
class Polarization:
    """``H = a L - sum m_i E_i`` with multiplicities ``m_i`` in {1, 2, 3}."""

    a: int
    mults: tuple[int, ...] = ()

    def __post_init__(self):
        if self.a < 1:
            raise ValueError("need a >= 1")
        object.__setattr__(self, "mults", tuple(int(m) for m in self.mults))

    @classmethod
    def from_counts(cls, a: int, i: int, j: int, k: int) -> "Polarization":
        return cls(a, (1,) * i + (2,) * j + (3,) * k)

    @property
    def p(self) -> int:
        return len(self.mults)

    @property
    def counts(self) -> tuple[int, ...]:
        top = max(self.mults, default=3)
        return tuple(self.mults.count(m) for m in range(1, max(3, top) + 1))

    def __str__(self):
        out = f"{self.a}L"
        start = 1
        for m in sorted(set(self.mults)):
            c = self.mults.count(m)
            coeff = str(m) if m > 1 else ""
            if c == 1:
                out += f"-{coeff}E{start}"
            elif c == 2:
                out += f"-{coeff}(E{start}+E{start + 1})"
            else:
                out += f"-{coeff}(E{start}+...+E{start + c - 1})"
            start += c
        return out


@dataclass(frozen=True)
class SurfaceInvariants:
    H2: int
    HK: int
    K2: int
    chi_top: int
    chiH: int
    p: int

    def chi(self, t: int) -> int:
        """Riemann-Roch: chi(O_S(tH)) for a rational surface."""
        return 1 + (t * t * self.H2 - t * self.HK) // 2


def invariants(P: Polarization) -> SurfaceInvariants:
    H2 = P.a * P.a - sum(m * m for m in P.mults)
    HK = -3 * P.a + sum(P.mults)
    if (H2 - HK) % 2:
        raise ValueError("H^2 - H.K must be even")
    return SurfaceInvariants(
        H2=H2, HK=HK, K2=9 - P.p, chi_top=3 + P.p, chiH=1 + (H2 - HK) // 2, p=P.p
    )


@dataclass
class PointConfig:
    q: int
    points: np.ndarray  # (p, 3), last nonzero coordinate equal to 1
    seed: int

    @property
    def p(self) -> int:
        return len(self.points)


def _normalize(pt, q):
    pt = [int(x) % q for x in pt]
    last = max(i for i, x in enumerate(pt) if x)
    inv = pow(pt[last], -1, q)
    return tuple(x * inv % q for x in pt)


def sample_points(p: int, F: PrimeField | int, seed: int) -> PointConfig:
    """``p`` distinct random points of P^2(F_q), reproducible from ``seed``.

    Uses numpy's Philox counter-based generator, whose stream is fixed across
    platforms for a given seed.
    """
    F = F if isinstance(F, PrimeField) else PrimeField(int(F))
    if p < 0:
        raise ValueError("need p >= 0")
    rng = np.random.Generator(np.random.Philox(seed))
    pts: list[tuple[int, ...]] = []
    while len(pts) < p:
        raw = rng.integers(0, F.q, size=3)
        if not raw.any():
            continue
        pt = _normalize(raw, F.q)
        if pt not in pts:
            pts.append(pt)
    return PointConfig(F.q, np.array(pts, dtype=np.int64).reshape(p, 3), seed)


def multiplicity_conditions(point, m: int, degree: int, q: int) -> np.ndarray:
    """Linear conditions for a plane form of ``degree`` to vanish to order ``m``.

    In the affine chart where the point's last nonzero coordinate is 1, all
    Hasse derivatives of order < m with respect to the two other coordinates
    must vanish.  Returns an ``m(m+1)/2 x n_monomials(3, degree)`` matrix.
    """
    point = [int(x) % q for x in point]
    c = max(i for i, x in enumerate(point) if x)
    r, s = [i for i in range(3) if i != c]
    exps = exponents(3, degree)
    br, bs = exps[:, r], exps[:, s]
    rows = []
    for total in range(m):
        for ar in range(total + 1):
            as_ = total - ar
            row = np.zeros(len(exps))
            ok = (br >= ar) & (bs >= as_)
            for idx in np.flatnonzero(ok):
                v = comb(int(br[idx]), ar) * comb(int(bs[idx]), as_)
                v = v * pow(point[r], int(br[idx]) - ar, q) * pow(point[s], int(bs[idx]) - as_, q)
                row[idx] = v % q
            rows.append(row)
    return np.array(rows).reshape(-1, len(exps))


def vanishing_order(f: HomogeneousPoly, point) -> int:
    """Order of vanishing of a plane form at a point (Hasse derivatives)."""
    v = f.to_vector()
    m = 0
    while m <= f.degree:
        cond = multiplicity_conditions(point, m + 1, f.degree, f.q)
        if matmul(cond, v[:, None], f.q).any():
            return m
        m += 1
    return m


def expected_dimension(P: Polarization) -> int:
    return max(0, comb(P.a + 2, 2) - sum(m * (m + 1) // 2 for m in P.mults))


def linear_system_basis(
    C: PointConfig, P: Polarization, expected: int | None = None
) -> list[HomogeneousPoly]:
    """Basis of degree-``a`` plane forms with multiplicity ``m_i`` at point ``i``.

    If ``expected`` is given and the dimension differs, raises
    DegenerateConfiguration so that the caller can resample.
    """
    if C.p != P.p:
        raise ValueError(f"{C.p} points but {P.p} multiplicities")
    if C.q <= P.a:
        raise ValueError("q must exceed the degree of the linear system")
    n = n_monomials(3, P.a)
    blocks = [multiplicity_conditions(pt, m, P.a, C.q) for pt, m in zip(C.points, P.mults)]
    cond = np.vstack(blocks) if blocks else np.zeros((0, n))
    _, ker = rank_kernel(cond, C.q)
    if expected is not None and ker.shape[0] != expected:
        raise DegenerateConfiguration(
            f"linear system has dimension {ker.shape[0]}, expected {expected}"
        )
    # RREF-derived basis, reversed so the x0-heavy forms come first
    return [HomogeneousPoly.from_vector(3, P.a, v, C.q) for v in ker[::-1]]


@dataclass
class RationalMap:
    """Six plane forms of a common degree defining a map to P^5."""

    forms: list[HomogeneousPoly]
    config: PointConfig | None = None
    polarization: Polarization | None = None

    @property
    def q(self) -> int:
        return self.forms[0].q

    @property
    def degree(self) -> int:
        return self.forms[0].degree

    def evaluate(self, points: np.ndarray) -> np.ndarray:
        """Images of plane points, shape ``(npts, 6)``."""
        coeffs = np.array([f.to_vector() for f in self.forms])
        return matmul(evaluate_monomials(points, self.degree, self.q).T, coeffs.T, self.q)


def rational_map(C: PointConfig, P: Polarization) -> RationalMap:
    forms = linear_system_basis(C, P)
    if len(forms) != 6:
        raise WrongDimension(f"|H| has dimension {len(forms)}, not 6")
    return RationalMap(forms, C, P)


def veronese(q: int) -> RationalMap:
    from .poly import monomial_basis

    forms = [HomogeneousPoly(3, 2, q, {m: 1}) for m in monomial_basis(3, 2)]
    return RationalMap(forms, PointConfig(q, np.zeros((0, 3), dtype=np.int64), 0), Polarization(2))
