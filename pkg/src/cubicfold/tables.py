"""Reference data: the 25 rational surfaces and their cohomology dimensions."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class TableRow:
    index: int
    d: int
    p: int
    a: int
    counts: tuple[int, int, int]  # points of multiplicity 1, 2, 3
    printed: str
    H2: int
    HK: int
    h0_I3: int
    h0_N: int
    h0_NX: int
    erratum: str | None = None

    @property
    def mults(self) -> tuple[int, ...]:
        i, j, k = self.counts
        return (1,) * i + (2,) * j + (3,) * k


_ERRATUM_12_7 = (
    "printed divisor 4L-(E1+...+E6)-3E7 gives H^2=1, H.K=-3; the printed columns "
    "H^2=6, H.K=-4 force multiplicity 2 at the seventh point"
)

# (d, p, a, (i, j, k), printed H, H^2, H.K, h0(I(3)), h0(N_S/P5), h0(N_S/X))
_ROWS = [
    (12, 7, 4, (6, 1, 0), "4L-(E1+...+E6)-3E7", 6, -4, 22, 41, 8),
    (12, 13, 5, (12, 1, 0), "5L-(E1+...+E12)-2E13", 9, -1, 13, 53, 11),
    (12, 16, 7, (9, 7, 0), "7L-(E1+...+E9)-2(E10+...+E16)", 12, 2, 4, 59, 8),
    (14, 4, 3, (4, 0, 0), "3L-E1-E2-E3-E4", 5, -5, 25, 35, 5),
    (14, 9, 4, (9, 0, 0), "4L-E1-...-E9", 7, -3, 19, 45, 9),
    (14, 11, 5, (9, 2, 0), "5L-(E1+...+E9)-2(E10+E11)", 8, -2, 16, 49, 10),
    (14, 14, 6, (10, 4, 0), "6L-(E1+...+E10)-2(E11+...+E14)", 10, 0, 10, 55, 10),
    (14, 15, 7, (9, 5, 1), "7L-(E1+...+E9)-2(E10+...+E14)-3E15", 11, 1, 7, 57, 9),
    (14, 16, 8, (6, 9, 1), "8L-(E1+...+E6)-2(E7+...+E15)-3E16", 13, 3, 1, 59, 5),
    (18, 12, 6, (7, 5, 0), "6L-(E1+...+E7)-2(E8+...+E12)", 9, -1, 13, 51, 9),
    (18, 15, 8, (6, 7, 2), "8L-(E1+...+E6)-2(E7+...+E13)-3(E14+E15)", 12, 2, 4, 57, 6),
    (20, 0, 2, (0, 0, 0), "2L", 4, -6, 28, 27, 0),
    (20, 10, 6, (4, 6, 0), "6L-(E1+...+E4)-2(E5+...+E10)", 8, -2, 16, 47, 8),
    (20, 13, 7, (6, 6, 1), "7L-(E1+...+E6)-2(E7+...+E12)-3E13", 10, 0, 10, 53, 8),
    (20, 14, 7, (6, 8, 0), "7L-(E1+...+E6)-2(E7+...+E14)", 11, 1, 7, 55, 7),
    (20, 15, 8, (3, 12, 0), "8L-(E1+E2+E3)-2(E4+...+E15)", 13, 3, 1, 57, 3),
    (24, 11, 7, (3, 7, 1), "7L-(E1+...+E3)-2(E4+...+E10)-3E11", 9, -1, 13, 49, 7),
    (24, 14, 8, (3, 10, 1), "8L-(E1+E2+E3)-2(E4+...+E13)-3E14", 12, 2, 4, 55, 4),
    (26, 12, 7, (3, 9, 0), "7L-(E1+E2+E3)-2(E4+...+E12)", 10, 0, 10, 51, 6),
    (26, 13, 8, (3, 8, 2), "8L-(E1+E2+E3)-2(E4+...+E11)-3(E12+E13)", 11, 1, 7, 53, 5),
    (30, 10, 7, (0, 10, 0), "7L-2(E1+...+E10)", 9, -1, 13, 47, 5),
    (32, 11, 9, (1, 4, 6), "9L-E1-2(E2+...+E5)-3(E6+...+E11)", 10, 0, 10, 49, 4),
    (36, 12, 10, (0, 4, 8), "10L-2(E1+...+E4)-3(E5+...+E12)", 12, 2, 4, 51, 0),
    (38, 10, 10, (0, 0, 10), "10L-3(E1+...+E10)", 10, 0, 10, 47, 2),
    (38, 11, 10, (0, 2, 9), "10L-2(E1+E2)-3(E3+...+E11)", 11, 1, 7, 49, 1),
]

TABLE = tuple(
    TableRow(
        index=n,
        d=d,
        p=p,
        a=a,
        counts=counts,
        printed=printed,
        H2=h2,
        HK=hk,
        h0_I3=i3,
        h0_N=nn,
        h0_NX=nx,
        erratum=_ERRATUM_12_7 if (d, p) == (12, 7) else None,
    )
    for n, (d, p, a, counts, printed, h2, hk, i3, nn, nx) in enumerate(_ROWS)
)

# Fano model of an Enriques surface (d = 44): degree 10, H.K = 0, K^2 = 0,
# topological Euler characteristic 12; ideal generated by 10 cubics.
ENRIQUES = dict(d=44, H2=10, HK=0, K2=0, chi_top=12, h0_I3=10, h0_N=45, h0_NX=0)


class UnknownRow(LookupError):
    pass


def find_row(d: int, p: int, row: int | None = None) -> TableRow:
    """Row with discriminant ``d`` and ``p`` points; ``row`` disambiguates."""
    matches = [r for r in TABLE if r.d == d and r.p == p]
    if row is not None:
        matches = [r for r in matches if r.index == row] or (
            [matches[row]] if 0 <= row < len(matches) else []
        )
    if not matches:
        raise UnknownRow(f"no table row with d={d}, p={p}")
    return matches[0]
