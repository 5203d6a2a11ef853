"""Enumerate polarization shapes ``aL - sum m E`` with a given discriminant."""

from __future__ import annotations

import builtins
import re
from dataclasses import dataclass, field
from itertools import product

from .hassett import NotAdmissible, admissible, discriminant, self_intersection
from .surface import Polarization, invariants
from .tables import TABLE, TableRow

A_MAX = 12
P_MAX = 20


@dataclass(frozen=True, order=True)
class SearchCandidate:
    p: int
    a: int
    i: int
    j: int
    k: int
    l: int = 0  # multiplicity-4 points, relaxed mode only
    H2: int = field(default=0, compare=False)
    HK: int = field(default=0, compare=False)
    S2: int = field(default=0, compare=False)
    d: int = field(default=0, compare=False)
    verified: bool = field(default=False, compare=False)

    @property
    def shape(self) -> tuple[int, int, int, int]:
        return (self.a, self.i, self.j, self.k)

    @property
    def polarization(self) -> Polarization:
        return Polarization(self.a, (1,) * self.i + (2,) * self.j + (3,) * self.k + (4,) * self.l)


def _known_shapes() -> dict[int, set[tuple[int, int, int, int]]]:
    out: dict[int, set] = {}
    for r in TABLE:
        out.setdefault(r.d, set()).add((r.a, *r.counts))
    return out


def enumerate(d: int, a_max: int = A_MAX, p_max: int = P_MAX, relaxed: bool = False) -> list[SearchCandidate]:
    """All shapes with discriminant ``d`` within the bounds, sorted by (p, a).

    Default mode: multiplicities in {1, 2, 3} and ``chi(H) = 6``.  Relaxed
    mode drops ``chi(H) = 6``, allows multiplicity 4, and keeps only
    ``H^2 > 0``.  Candidates matching a reference table row are marked verified.
    """
    if not admissible(d):
        raise NotAdmissible(f"C_{d} is empty")
    if a_max < 1 or p_max < 0:
        raise ValueError("bounds must be positive")
    known = _known_shapes().get(d, set())
    out = []
    l_range = range(p_max + 1) if relaxed else range(1)
    for a, l in product(range(1, a_max + 1), l_range):
        for k in range(p_max - l + 1):
            for j in range(p_max - l - k + 1):
                for i in range(p_max - l - k - j + 1):
                    H2 = a * a - i - 4 * j - 9 * k - 16 * l
                    HK = -3 * a + i + 2 * j + 3 * k + 4 * l
                    if relaxed:
                        if H2 <= 0 or (H2 - HK) % 2:
                            continue
                    elif H2 - HK != 10:
                        continue
                    inv = invariants(Polarization(a, (1,) * i + (2,) * j + (3,) * k + (4,) * l))
                    S2 = self_intersection(inv)
                    if discriminant(S2, H2) != d:
                        continue
                    out.append(
                        SearchCandidate(
                            p=i + j + k + l, a=a, i=i, j=j, k=k, l=l, H2=H2, HK=HK, S2=S2, d=d,
                            verified=l == 0 and (a, i, j, k) in known,
                        )
                    )
    return sorted(out)


_RANGE = re.compile(r"^E(\d+)$")


def _expand(tokens: list[str]) -> list[int]:
    idx: list[int] = []
    for n, tok in builtins.enumerate(tokens):
        tok = tok.strip()
        if tok == "...":
            continue
        m = _RANGE.match(tok)
        if not m:
            raise ValueError(f"bad divisor token {tok!r}")
        v = int(m.group(1))
        if n >= 1 and tokens[n - 1].strip() == "..." and idx:
            idx.extend(range(idx[-1] + 1, v))
        idx.append(v)
    return idx


def parse_divisor(text: str) -> Polarization:
    """Parse the ``aL-(E1+...+Ei)-2(...)-3Ek`` notation of the table."""
    text = text.replace(" ", "")
    m = re.match(r"^(\d+)L", text)
    if not m:
        raise ValueError(f"no line class in {text!r}")
    a = int(m.group(1))
    rest = text[m.end():]
    mults: dict[int, int] = {}
    # split on '-' outside parentheses
    parts, depth, cur = [], 0, ""
    for ch in rest:
        if ch == "-" and depth == 0:
            if cur:
                parts.append(cur)
            cur = ""
            continue
        depth += ch == "("
        depth -= ch == ")"
        cur += ch
    if cur:
        parts.append(cur)
    # a run like E1-...-E9 is split into E1, ..., E9
    run: list[str] = []
    groups: list[tuple[int, list[str]]] = []
    for part in parts:
        pm = re.match(r"^(\d*)\((.*)\)$", part)
        if pm:
            groups.append((int(pm.group(1) or 1), pm.group(2).split("+")))
            continue
        cm = re.match(r"^(\d*)(E\d+|\.\.\.)$", part)
        if not cm:
            raise ValueError(f"bad divisor term {part!r}")
        coeff = int(cm.group(1) or 1)
        if coeff == 1:
            run.append(cm.group(2))
        else:
            groups.append((coeff, [cm.group(2)]))
    if run:
        groups.append((1, run))
    for coeff, toks in groups:
        for v in _expand(toks):
            mults[v] = coeff
    return Polarization(a, tuple(mults[v] for v in sorted(mults)))


@dataclass
class CrossCheck:
    recovered: list[int] = field(default_factory=list)
    missing: list[int] = field(default_factory=list)
    errata: list[tuple[int, tuple[int, int], tuple[int, int]]] = field(default_factory=list)

    @property
    def total(self) -> int:
        return len(self.recovered) + len(self.missing)


def cross_check_table1(rows: tuple[TableRow, ...] | list[TableRow] = TABLE, a_max: int = A_MAX, p_max: int = P_MAX) -> CrossCheck:
    """Recover every row's shape by search and flag printed-divisor errata.

    An erratum is a row whose printed divisor has invariants ``(H^2, H.K)``
    different from its printed columns; the columns are taken as correct.
    """
    report = CrossCheck()
    cache: dict[int, list[SearchCandidate]] = {}
    for r in rows:
        if r.d not in cache:
            cache[r.d] = enumerate(r.d, a_max, p_max)
        hit = any(c.shape == (r.a, *r.counts) and (c.H2, c.HK) == (r.H2, r.HK) for c in cache[r.d])
        (report.recovered if hit else report.missing).append(r.index)
        printed = invariants(parse_divisor(r.printed))
        if (printed.H2, printed.HK) != (r.H2, r.HK):
            report.errata.append((r.index, (printed.H2, printed.HK), (r.H2, r.HK)))
    return report
