"""Lattice arithmetic for special cubic fourfolds and the divisors C_d.

Covers the self-intersection of a surface in a cubic fourfold, the
discriminant of ``<h^2, S>``, Hassett's admissibility and associated-K3
criteria, Kodaira-dimension statements with their provenance, and the
numerical test for ideal sheaves lying in the Kuznetsov component.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Callable

from .surface import SurfaceInvariants


class NotAdmissible(ValueError):
    """C_d is empty for this d."""


@dataclass(frozen=True)
class CubicInvariants:
    degS: int
    S2: int

    @property
    def d(self) -> int:
        return discriminant(self.S2, self.degS)


def self_intersection(inv: SurfaceInvariants) -> int:
    """``S^2 = c_2(N_{S/X}) = 6 H^2 + 3 H.K + K^2 - chi_top``."""
    return 6 * inv.H2 + 3 * inv.HK + inv.K2 - inv.chi_top


def discriminant(S2: int, degS: int) -> int:
    """Gram determinant of ``[[3, degS], [degS, S2]]``."""
    return 3 * S2 - degS * degS


def cubic_invariants(inv: SurfaceInvariants) -> CubicInvariants:
    return CubicInvariants(inv.H2, self_intersection(inv))


def admissible(d: int) -> bool:
    return d > 6 and d % 6 in (0, 2)


def _odd_prime_factors(n: int) -> list[int]:
    out, p = [], 3
    while n % 2 == 0:
        n //= 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 2
    if n > 1:
        out.append(n)
    return out


def _require(d: int):
    if not admissible(d):
        raise NotAdmissible(f"C_{d} is empty")


def has_associated_k3(d: int) -> bool:
    """4 and 9 do not divide d and odd primes dividing d are 0 or 1 mod 3."""
    _require(d)
    if d % 4 == 0 or d % 9 == 0:
        return False
    return all(p % 3 in (0, 1) for p in _odd_prime_factors(d))


class Kodaira(enum.Enum):
    UNIRATIONAL = "unirational"
    NEGATIVE = "negative Kodaira dimension"
    NONNEGATIVE = "Kodaira dimension >= 0"
    GENERAL_TYPE = "general type"
    UNKNOWN = "unknown"


# higher rank wins within each side; the two sides must never both apply
_RANK = {
    Kodaira.UNIRATIONAL: 2,
    Kodaira.NEGATIVE: 1,
    Kodaira.NONNEGATIVE: 1,
    Kodaira.GENERAL_TYPE: 2,
}
_NEGATIVE_SIDE = {Kodaira.UNIRATIONAL, Kodaira.NEGATIVE}


@dataclass(frozen=True)
class Statement:
    conclusion: Kodaira
    source: str
    own: bool  # proved in this work, as opposed to cited
    condition: Callable[[int], bool]
    text: str


def _prop_kodaira(d: int) -> bool:
    return (
        d > 80
        and d % 6 == 2
        and d % 4 != 0
        and all(p % 3 == 1 for p in _odd_prime_factors(d))
    )


STATEMENTS: tuple[Statement, ...] = (
    Statement(Kodaira.UNIRATIONAL, "main theorem", True, lambda d: 12 <= d <= 38,
              "C_d is unirational for 12 <= d <= 38"),
    Statement(Kodaira.NEGATIVE, "main theorem", True, lambda d: d == 44,
              "C_44 has negative Kodaira dimension"),
    Statement(Kodaira.UNIRATIONAL, "classical (cubics containing a plane)", False, lambda d: d == 8,
              "C_8 is unirational"),
    Statement(Kodaira.NONNEGATIVE, "proposition via K3 moduli", True, _prop_kodaira,
              "d > 80, d = 2 mod 6, 4 does not divide d, odd primes 1 mod 3"),
    Statement(Kodaira.GENERAL_TYPE, "proposition via K3 moduli", True,
              lambda d: _prop_kodaira(d) and d > 122, "as above with d > 122"),
    Statement(Kodaira.GENERAL_TYPE, "Tanimoto-Varilly-Alvarado", False,
              lambda d: d % 6 == 2 and (d - 2) // 6 > 18 and (d - 2) // 6 not in (20, 21, 25),
              "C_{6n+2} general type for n > 18, n not 20, 21, 25"),
    Statement(Kodaira.NONNEGATIVE, "Tanimoto-Varilly-Alvarado", False,
              lambda d: d % 6 == 2 and (d - 2) // 6 in (14, 18, 20, 21, 25),
              "C_{6n+2} has kappa >= 0 for n = 14, 18, 20, 21, 25"),
    # the printed exceptions 19..31 lie below 34, so they exclude nothing
    Statement(Kodaira.GENERAL_TYPE, "Tanimoto-Varilly-Alvarado", False,
              lambda d: d % 6 == 0 and d // 6 >= 34 and d // 6 not in (19, 21, 24, 25, 26, 28, 29, 30, 31),
              "C_{6n} general type for n >= 34 (listed exceptions are all below 34)"),
    Statement(Kodaira.NONNEGATIVE, "Tanimoto-Varilly-Alvarado", False,
              lambda d: d % 6 == 0 and d // 6 in (17, 23, 27, 33),
              "C_{6n} has kappa >= 0 for n = 17, 23, 27, 33"),
)


@dataclass(frozen=True)
class KodairaStatus:
    d: int
    status: Kodaira
    provenance: tuple[str, ...]  # every statement that applies

    @property
    def consistent(self) -> bool:
        sides = {c in _NEGATIVE_SIDE for c in self._conclusions()}
        return len(sides) <= 1

    def _conclusions(self):
        return [s.conclusion for s in STATEMENTS if s.condition(self.d)]


def kodaira_status(d: int) -> KodairaStatus:
    """Strongest classification implied by the encoded statements."""
    _require(d)
    hits = [s for s in STATEMENTS if s.condition(d)]
    if not hits:
        return KodairaStatus(d, Kodaira.UNKNOWN, ())
    best = max(hits, key=lambda s: _RANK[s.conclusion])
    prov = tuple(f"{s.conclusion.value}: {s.text} [{s.source}{'' if s.own else ', cited'}]" for s in hits)
    return KodairaStatus(d, best.conclusion, prov)


def dimension_identity(h0NP5: int, h0I3: int, h0NX: int) -> bool:
    """``h0(N_{S/X}) = h0(N_{S/P5}) + h0(I_S(3)) - 55``."""
    return h0NX == h0NP5 + h0I3 - 55


class KuznetsovClass(enum.Enum):
    TwistTwo = "I_{S/X}(2) numerically in A_X"
    TwistOne = "I_{S/X}(1) numerically in A_X"
    NONE = "none"


def kuznetsov_numeric_class(H2: int, HK: int) -> KuznetsovClass:
    if (H2, HK) == (10, 0):
        return KuznetsovClass.TwistTwo
    if (H2, HK) == (4, -6):
        return KuznetsovClass.TwistOne
    return KuznetsovClass.NONE


@dataclass(frozen=True)
class BoundScan:
    max_H2: int | None
    unbounded: bool
    witness: tuple[int, int] | None  # (H2, HK) attaining the maximum
    claimed: int = 15

    @property
    def agrees(self) -> bool:
        return self.max_H2 == self.claimed


def _chi(t: int, H2: int, HK: int) -> int:
    return 1 + (t * t * H2 - t * HK) // 2


def degree_bound_scan(
    min_chi1: int | None = 6,
    min_chi2: int | None = 19,
    max_chi3: float | None = 55,
    H2_max: int = 100,
) -> BoundScan:
    """Largest ``H^2`` with ``chi(tH)`` meeting the given bounds.

    Euler characteristics stand in for ``h^0``; pairs with ``H^2 - H.K`` odd
    are skipped.  A bound of ``None`` drops that constraint.  If the maximum
    sits at the scan limit, the result is flagged unbounded.
    """
    best: tuple[int, int] | None = None
    for H2 in range(1, H2_max + 1):
        for HK in range(-3 * H2, 3 * H2 + 1):
            if (H2 - HK) % 2:
                continue
            if min_chi1 is not None and _chi(1, H2, HK) < min_chi1:
                continue
            if min_chi2 is not None and _chi(2, H2, HK) < min_chi2:
                continue
            if max_chi3 is not None and _chi(3, H2, HK) > max_chi3:
                continue
            if best is None or H2 > best[0]:
                best = (H2, HK)
    if best is None:
        return BoundScan(None, False, None)
    return BoundScan(best[0], best[0] == H2_max, best)
