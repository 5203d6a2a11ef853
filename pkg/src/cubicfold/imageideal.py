"""Graded pieces of the ideal of a surface in P^5, its generators and syzygies.

A quotient ``A = R/I`` (``R = F_q[x0..x5]``) is handled through one linear map
per degree, ``W_e : R_e -> F_q^{h_e}``, whose kernel is exactly ``I_e`` and
whose rank ``h_e`` is the Hilbert function.  Two realisations exist:

* for the image of a rational map, ``W_e`` evaluates degree-``e`` monomials at
  the images of plane points.  On the grid ``{(i, j, 1) : i + j <= n}`` a plane
  form of degree ``n`` is determined by its values, so with ``n = e * a`` a
  form lies in ``I_e`` iff its pullback vanishes on the grid.  Only an
  independent subset of grid points (the RREF pivots) is kept;
* for an ideal given by generators, ``W_e`` is the normal-form projection onto
  the standard monomials of the RREF of ``I_e``.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from math import comb

import numpy as np

from .arith import kernel_from_rref, left_kernel, matmul, reduce, rref, row_space_complement
from .poly import (
    HomogeneousPoly,
    evaluate_monomials,
    mult_table,
    multiplication_matrix,
    n_monomials,
    vectors_times_monomials,
)
from .surface import RationalMap, SurfaceInvariants

NVARS = 6
DEFAULT_D = 6


class BoundTooSmall(ValueError):
    pass


class GeneratorBoundWarning(UserWarning):
    """New generators appeared at the top degree searched."""


@dataclass
class GradedPiece:
    t: int
    basis: np.ndarray  # rows: coefficient vectors over monomial_basis(6, t)

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def forms(self, q: int) -> list[HomogeneousPoly]:
        return [HomogeneousPoly.from_vector(NVARS, self.t, v, q) for v in self.basis]


def plane_grid(n: int) -> np.ndarray:
    """Points ``(i, j, 1)`` with ``i + j <= n``: unisolvent for plane forms of degree n."""
    pts = [(i, j, 1) for i in range(n + 1) for j in range(n + 1 - i)]
    return np.array(pts, dtype=np.float64)


class _Degree:
    __slots__ = ("W", "std", "ideal", "points")

    def __init__(self, W, std=None, ideal=None, points=None):
        self.W = W
        self.std = std
        self.ideal = ideal
        self.points = points


class Quotient:
    """Degree-wise linear model of ``R/I``; subclasses fill ``_build``."""

    q: int

    def __init__(self, q: int):
        self.q = q
        self._cache: dict[int, _Degree] = {}

    def _get(self, e: int) -> _Degree:
        if e not in self._cache:
            self._cache[e] = self._build(e)
        return self._cache[e]

    def _build(self, e: int) -> _Degree:  # pragma: no cover
        raise NotImplementedError

    def _fill(self, e: int) -> _Degree:
        entry = self._get(e)
        if entry.std is None:
            r, piv = rref(entry.W.T, self.q)
            entry.std = np.array(piv, dtype=np.int64)
            entry.ideal = kernel_from_rref(r, piv, entry.W.shape[0], self.q)
        return entry

    def hilbert(self, e: int) -> int:
        return self._get(e).W.shape[1]

    def ideal_basis(self, e: int) -> np.ndarray:
        return self._fill(e).ideal

    def standard(self, e: int) -> np.ndarray:
        """Indices of monomials of degree ``e`` forming a basis of ``A_e``."""
        return self._fill(e).std

    def coords(self, e: int, vecs: np.ndarray) -> np.ndarray:
        """Coordinates in ``A_e`` of degree-``e`` coefficient vectors (rows)."""
        return matmul(np.atleast_2d(vecs), self._get(e).W, self.q)

    def product_coords(self, e: int, A: np.ndarray, d: int, idx: np.ndarray) -> np.ndarray:
        """Coordinates of ``a_s * m_k`` in ``A_e``; shape ``(len(A), h_e, len(idx))``.

        ``A`` holds forms of degree ``e - d`` and ``idx`` indexes monomials of
        degree ``d``.
        """
        W = self._get(e).W
        table = mult_table(NVARS, e - d, d)
        A = np.atleast_2d(A)
        out = np.empty((A.shape[0], W.shape[1], len(idx)))
        for k, m in enumerate(idx):
            out[:, :, k] = matmul(A, W[table[:, m]], self.q)
        return out


class ImageQuotient(Quotient):
    """Homogeneous coordinate ring of the image of a plane rational map."""

    def __init__(self, M: RationalMap):
        super().__init__(M.q)
        self.map = M

    def _build(self, e: int) -> _Degree:
        grid = plane_grid(e * self.map.degree)
        Y = self.map.evaluate(grid)
        vals = evaluate_monomials(Y, e, self.q)
        _, piv = rref(vals, self.q)
        return _Degree(vals[:, piv], points=Y[piv])

    def product_coords(self, e, A, d, idx):
        # evaluation is multiplicative, so products are pointwise
        Y = self._get(e).points
        a_vals = matmul(np.atleast_2d(A), evaluate_monomials(Y, e - d, self.q), self.q)
        m_vals = evaluate_monomials(Y, d, self.q)[np.asarray(idx, dtype=np.int64)]
        return reduce(a_vals[:, :, None] * m_vals.T[None, :, :], self.q)


def generator_matrix(gens: list[tuple[int, np.ndarray]], e: int, q: int) -> np.ndarray:
    """Rows ``m * g_j`` for all generators of degree <= e and monomials m."""
    blocks = []
    for d, g in gens:
        if d <= e:
            blocks.append(multiplication_matrix(HomogeneousPoly.from_vector(NVARS, d, g, q), e - d))
    if not blocks:
        return np.zeros((0, n_monomials(NVARS, e)))
    return np.vstack(blocks)


class PresentedQuotient(Quotient):
    """``R/I`` for an ideal given by generators, via normal-form coordinates."""

    def __init__(self, gens: list[tuple[int, np.ndarray]], q: int):
        super().__init__(q)
        self.gens = gens

    def _build(self, e: int) -> _Degree:
        n = n_monomials(NVARS, e)
        r, piv = rref(generator_matrix(self.gens, e, self.q), self.q)
        std = np.setdiff1d(np.arange(n), piv)
        W = np.zeros((n, std.size))
        W[std, np.arange(std.size)] = 1.0
        if piv:
            W[piv] = reduce(-r[:, std], self.q)
        return _Degree(W, std=std, ideal=r)


@dataclass
class IdealModel:
    quotient: Quotient
    q: int
    D: int
    pieces: dict[int, GradedPiece] = field(default_factory=dict)
    gens: list[tuple[int, np.ndarray]] = field(default_factory=list)
    syzygies: dict[int, np.ndarray] = field(default_factory=dict)  # minimal, per degree
    syzygy_dims: dict[int, int] = field(default_factory=dict)
    hilbert: dict[int, int] = field(default_factory=dict)
    map: RationalMap | None = None
    _K: tuple[int, np.ndarray] | None = None

    @property
    def generator_polys(self) -> list[tuple[int, HomogeneousPoly]]:
        return [(d, HomogeneousPoly.from_vector(NVARS, d, g, self.q)) for d, g in self.gens]

    @property
    def max_degree(self) -> int:
        return max(d for d, _ in self.gens)

    def piece(self, t: int) -> GradedPiece:
        if t not in self.pieces:
            self.pieces[t] = GradedPiece(t, self.quotient.ideal_basis(t))
            self.hilbert[t] = self.quotient.hilbert(t)
        return self.pieces[t]

    def ensure_syzygies(self, E: int) -> None:
        """Minimal syzygies of the generators in every degree <= E."""
        if not self.gens:
            return
        start = min(d for d, _ in self.gens) + 1
        e = max([start - 1, *self.syzygies]) + 1
        while e <= E:
            K = syzygy_kernel(self.gens, e, self.q)
            span = [koszul(self.gens, e, self.q)]
            if self._K is not None and self._K[0] == e - 1 and self._K[1].shape[0]:
                span.append(lift(self._K[1], self.gens, e - 1, 1, self.q))
            span_rows = _compress(np.vstack(span), K.shape[0], e, self.q)
            self.syzygies[e] = row_space_complement(span_rows, K, self.q) if K.shape[0] else K
            self.syzygy_dims[e] = K.shape[0]
            self._K = (e, K)
            e += 1


def _compress(rows: np.ndarray, dim: int, seed: int, q: int) -> np.ndarray:
    """Random combinations of ``rows``, enough to span them when rank <= dim.

    Any loss of rank only makes the complement larger, i.e. some returned
    syzygies would be non-minimal.  They still are syzygies, so the normal
    sheaf computation stays correct.
    """
    target = dim + 16
    if rows.shape[0] <= 2 * target:
        return rows
    rng = np.random.Generator(np.random.Philox(seed))
    G = rng.integers(0, q, size=(target, rows.shape[0])).astype(np.float64)
    return matmul(G, rows, q)


def block_offsets(gens, e: int) -> list[tuple[int, int]]:
    """Slices of ``F_e = sum_j R_{e - d_j}`` belonging to each generator."""
    out, pos = [], 0
    for d, _ in gens:
        n = n_monomials(NVARS, e - d) if d <= e else 0
        out.append((pos, pos + n))
        pos += n
    return out


def split_syzygy(vecs: np.ndarray, gens, e: int) -> list[np.ndarray]:
    vecs = np.atleast_2d(vecs)
    return [vecs[:, a:b] for a, b in block_offsets(gens, e)]


def syzygy_kernel(gens, e: int, q: int) -> np.ndarray:
    """Basis of ``{(a_j) : sum a_j g_j = 0}`` in degree ``e`` (rows in ``F_e``)."""
    return left_kernel(generator_matrix(gens, e, q), q)


def koszul(gens, e: int, q: int) -> np.ndarray:
    """Koszul relations ``g_j e_i - g_i e_j`` of degree ``e``."""
    offs = block_offsets(gens, e)
    width = offs[-1][1]
    rows = []
    for i, (di, gi) in enumerate(gens):
        for j in range(i + 1, len(gens)):
            dj, gj = gens[j]
            if di + dj == e:
                v = np.zeros(width)
                v[offs[i][0] : offs[i][1]] = gj
                v[offs[j][0] : offs[j][1]] = reduce(-np.asarray(gi), q)
                rows.append(v)
    return np.array(rows).reshape(-1, width)


def lift(vecs: np.ndarray, gens, e: int, delta: int, q: int) -> np.ndarray:
    """All products of syzygies of degree ``e`` with monomials of degree ``delta``."""
    blocks = split_syzygy(vecs, gens, e)
    parts = []
    for (d, _), blk in zip(gens, blocks):
        if d > e + delta:
            continue
        if d > e:
            parts.append(np.zeros((n_monomials(NVARS, delta), blk.shape[0], n_monomials(NVARS, e + delta - d))))
        else:
            parts.append(vectors_times_monomials(blk, NVARS, e - d, delta))
    out = np.concatenate(parts, axis=2)
    return out.reshape(-1, out.shape[2])


def _new_generators(model: IdealModel, D: int) -> None:
    q = model.q
    for t in range(2, D + 1):
        I_t = model.piece(t).basis
        if t - 1 >= 1 and model.piece(t - 1).dim:
            prev = model.piece(t - 1).basis
            span = vectors_times_monomials(prev, NVARS, t - 1, 1).reshape(-1, I_t.shape[1])
        else:
            span = np.zeros((0, I_t.shape[1]))
        for g in row_space_complement(span, I_t, q):
            model.gens.append((t, g))
        if t == D and any(d == D for d, _ in model.gens):
            warnings.warn(
                f"new generators in degree {D}; the generator bound may be too small",
                GeneratorBoundWarning,
                stacklevel=3,
            )


def image_model(M: RationalMap, D: int = DEFAULT_D) -> IdealModel:
    """Ideal of the image of ``M``: pieces and minimal generators up to degree ``D``."""
    if D < 2:
        raise ValueError("need D >= 2")
    model = IdealModel(ImageQuotient(M), M.q, D, map=M)
    model.piece(1)
    _new_generators(model, D)
    return model


def presented_model(gens: list[HomogeneousPoly], D: int | None = None) -> IdealModel:
    """Ideal given by homogeneous generators in six variables."""
    if not gens:
        raise ValueError("need at least one generator")
    q = gens[0].q
    pairs = [(g.degree, g.to_vector()) for g in gens if not g.is_zero()]
    D = D if D is not None else max(DEFAULT_D, max(d for d, _ in pairs))
    model = IdealModel(PresentedQuotient(pairs, q), q, D)
    model.piece(1)
    _new_generators(model, D)
    return model


def graded_piece(M: RationalMap, t: int) -> GradedPiece:
    """Forms of degree ``t`` whose pullback along ``M`` is zero."""
    if t < 1:
        raise ValueError("need t >= 1")
    return GradedPiece(t, ImageQuotient(M).ideal_basis(t))


def hilbert_function(M: RationalMap | IdealModel, t_max: int) -> dict[int, int]:
    if t_max < 1:
        raise ValueError("need t_max >= 1")
    quot = M.quotient if isinstance(M, IdealModel) else ImageQuotient(M)
    return {t: quot.hilbert(t) for t in range(1, t_max + 1)}


def minimal_generators(M: RationalMap | IdealModel, D: int = DEFAULT_D) -> list[tuple[int, HomogeneousPoly]]:
    model = M if isinstance(M, IdealModel) else image_model(M, D)
    return model.generator_polys


def syzygies_up_to(gens: list[tuple[int, HomogeneousPoly]] | list[HomogeneousPoly], E: int) -> dict[int, np.ndarray]:
    """Full syzygy module of the generators, degree by degree up to ``E``.

    Each value is a basis (rows) of the kernel of ``(a_j) -> sum a_j g_j`` in
    ``F_e = sum_j R_{e - d_j}``, blocks in generator order.
    """
    pairs = [(g.degree, g) if isinstance(g, HomogeneousPoly) else g for g in gens]
    if not pairs:
        raise ValueError("need at least one generator")
    top = max(d for d, _ in pairs)
    if E < top + 1:
        raise BoundTooSmall(f"E={E} but generators reach degree {top}")
    q = pairs[0][1].q
    vecs = [(d, g.to_vector()) for d, g in pairs]
    lo = min(d for d, _ in vecs)
    return {e: syzygy_kernel(vecs, e, q) for e in range(lo + 1, E + 1)}


def apply_syzygy(gens: list[tuple[int, HomogeneousPoly]], syz: np.ndarray, e: int) -> HomogeneousPoly:
    """``sum_j a_j g_j`` for a single syzygy vector ``syz`` of degree ``e``."""
    q = gens[0][1].q
    total = HomogeneousPoly.zero(NVARS, e, q)
    for (d, g), blk in zip(gens, split_syzygy(syz, [(d, None) for d, _ in gens], e)):
        if d <= e and blk.any():
            total = total + HomogeneousPoly.from_vector(NVARS, e - d, blk[0], q) * g
    return total


@dataclass
class NormalityVerdict:
    passed: bool
    linear_forms: int
    hilbert: dict[int, int]
    expected: dict[int, int]

    def __bool__(self):
        return self.passed


def degree_linear_normality_check(M: RationalMap | IdealModel, inv: SurfaceInvariants, t_max: int = 3) -> NormalityVerdict:
    """No linear forms vanish and ``h(t) = min(dim R_t, chi(tH))`` for ``t <= t_max``.

    Equality with ``chi(tH)`` itself is impossible once ``chi(tH)`` exceeds
    ``dim R_t``, so the expected value is the maximal-rank one.
    """
    model = M if isinstance(M, IdealModel) else None
    quot = model.quotient if model else ImageQuotient(M)
    hil = {t: quot.hilbert(t) for t in range(1, t_max + 1)}
    lin = comb(NVARS, 1) - hil[1]
    expected = {t: min(comb(t + NVARS - 1, NVARS - 1), inv.chi(t)) for t in hil}
    return NormalityVerdict(lin == 0 and hil == expected, lin, hil, expected)
