"""Global sections of the normal sheaves of S in P^5 and in a cubic X.

``H^0(N_{S/P^5})`` is computed as the degree-0 part of ``Hom_R(I, R/I)``: a
homomorphism is fixed by values ``v_j in A_{d_j}`` on the generators, subject
to ``sum_j a_j v_j = 0`` in ``A`` for every syzygy ``(a_j)``.  It suffices to
impose this for minimal syzygies.  Koszul relations are automatic and are
never imposed.  ``H^0(N_{S/X})`` is the kernel of ``phi -> phi(f)`` in ``A_3``.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from .arith import kernel_from_rref, matmul, rank, rref, solve
from .imageideal import NVARS, IdealModel, generator_matrix, split_syzygy
from .poly import HomogeneousPoly, n_monomials


class NoCubicContainsSurface(ValueError):
    pass


class NotStabilized(UserWarning):
    """h0(N) still dropped when the syzygy bound was raised."""


@dataclass
class HomSection:
    values: list[np.ndarray]  # v_j in R_{d_j}, coefficient vectors

    def polys(self, gens, q: int) -> list[HomogeneousPoly]:
        return [HomogeneousPoly.from_vector(NVARS, d, v, q) for (d, _), v in zip(gens, self.values)]


@dataclass
class CubicForm:
    f: HomogeneousPoly
    coords: list[np.ndarray]  # c_j in R_{3 - d_j}; empty for d_j > 3


@dataclass
class NormalResult:
    dim: int
    basis: list[HomSection]
    stabilized: bool
    dims_by_bound: dict[int, int] = field(default_factory=dict)
    n_unknowns: int = 0
    _coeffs: np.ndarray | None = None  # basis in unknown coordinates


class _Unknowns:
    """Parametrisation ``v_j = sum_k c_{jk} m_{std_j[k]}``."""

    def __init__(self, model: IdealModel):
        self.model = model
        self.std = [model.quotient.standard(d) for d, _ in model.gens]
        self.offsets = np.cumsum([0] + [len(s) for s in self.std])

    @property
    def n(self) -> int:
        return int(self.offsets[-1])

    def block(self, e: int, coeffs: list[np.ndarray], nrows: int) -> np.ndarray:
        """Matrix of ``c -> sum_j coeffs_j * v_j`` in ``A_e`` coordinates.

        ``coeffs[j]`` stacks ``nrows`` forms of degree ``e - d_j``; the result
        has shape ``(nrows * h_e, n)``.
        """
        quot = self.model.quotient
        h = quot.hilbert(e)
        out = np.zeros((nrows, h, self.n))
        for j, ((d, _), c) in enumerate(zip(self.model.gens, coeffs)):
            if d > e or not len(self.std[j]) or not c.any():
                continue
            out[:, :, self.offsets[j] : self.offsets[j + 1]] = quot.product_coords(e, c, d, self.std[j])
        return out.reshape(nrows * h, self.n)

    def sections(self, kernel: np.ndarray) -> list[HomSection]:
        out = []
        for row in kernel:
            vals = []
            for j, (d, _) in enumerate(self.model.gens):
                v = np.zeros(n_monomials(NVARS, d))
                v[self.std[j]] = row[self.offsets[j] : self.offsets[j + 1]]
                vals.append(v)
            out.append(HomSection(vals))
        return out


def _constraints(U: _Unknowns, e: int, chunk: int):
    """Constraint rows from the minimal syzygies of degree ``e``, in chunks."""
    model = U.model
    syz = model.syzygies.get(e)
    if syz is None or not syz.shape[0]:
        return
    h = model.quotient.hilbert(e)
    step = max(1, chunk // max(h, 1))
    for s in range(0, syz.shape[0], step):
        part = syz[s : s + step]
        yield U.block(e, split_syzygy(part, model.gens, e), part.shape[0])


class _Accumulator:
    """Row space of a growing constraint matrix, kept in RREF."""

    def __init__(self, n: int, q: int):
        self.q = q
        self.rows = np.zeros((0, n))

    def add(self, block: np.ndarray):
        block = block[block.any(axis=1)]
        if block.shape[0]:
            self.rows, _ = rref(np.vstack([self.rows, block]), self.q)

    @property
    def rank(self) -> int:
        return self.rows.shape[0]


def default_bound(model: IdealModel) -> int:
    return model.max_degree + 3


def h0_normal_ambient(model: IdealModel, E: int | None = None, extra: int = 2) -> NormalResult:
    """``h^0(N_{S/P^5})`` from syzygies up to degree ``E``, checked at ``E + extra``.

    The returned basis satisfies every constraint up to ``E + extra``; if the
    dimension is still falling there, a NotStabilized warning is issued.
    """
    E = default_bound(model) if E is None else E
    q = model.q
    model.ensure_syzygies(E + extra)
    U = _Unknowns(model)
    acc = _Accumulator(U.n, q)
    chunk = max(2 * U.n, 512)
    dims = {}
    lo = min(d for d, _ in model.gens) + 1
    for e in range(min(lo, E), E + extra + 1):
        for block in _constraints(U, e, chunk):
            acc.add(block)
        if e >= E:
            dims[e] = U.n - acc.rank
    top = E + extra
    stabilized = len(set(dims.values())) == 1
    if not stabilized:
        warnings.warn(f"h0(N) not stable in syzygy bound: {dims}", NotStabilized, stacklevel=2)
    # kernel of the accumulated constraints
    if acc.rank:
        piv = [int(np.flatnonzero(r)[0]) for r in acc.rows]
        kernel = kernel_from_rref(acc.rows, piv, U.n, q)
    else:
        kernel = np.eye(U.n)
    return NormalResult(dims[top], U.sections(kernel), stabilized, dims, U.n, kernel)


def check_sections(model: IdealModel, res: NormalResult, E: int) -> bool:
    """Re-verify every basis section against every minimal syzygy up to ``E``."""
    U = _Unknowns(model)
    if res._coeffs is None or not res._coeffs.shape[0]:
        return True
    for e in sorted(model.syzygies):
        if e > E:
            continue
        for block in _constraints(U, e, 4096):
            if matmul(block, res._coeffs.T, model.q).any():
                return False
    return True


def random_cubic(model: IdealModel, seed: int) -> CubicForm:
    """Random nonzero cubic in ``I_3`` with its expression in the generators."""
    q = model.q
    I3 = model.piece(3).basis
    if not I3.shape[0]:
        raise NoCubicContainsSurface("the surface lies on no cubic")
    rng = np.random.Generator(np.random.Philox(seed))
    while True:
        lam = rng.integers(0, q, size=I3.shape[0]).astype(np.float64)
        if lam.any():
            break
    f = matmul(lam[None, :], I3, q)[0]
    low = [(d, g) for d, g in model.gens if d <= 3]
    x = solve(generator_matrix(low, 3, q).T, f, q)
    if x is None:
        raise RuntimeError("cubic not in the span of the generators")
    coords, pos = [], 0
    for d, _ in model.gens:
        if d <= 3:
            n = n_monomials(NVARS, 3 - d)
            coords.append(x[pos : pos + n])
            pos += n
        else:
            coords.append(np.zeros(0))
    return CubicForm(HomogeneousPoly.from_vector(NVARS, 3, f, q), coords)


def h0_normal_in_X(res: NormalResult, f: CubicForm, model: IdealModel) -> int:
    """Dimension of the sections of ``N_{S/P^5}`` killing ``f`` in ``A_3``."""
    if not res.dim:
        return 0
    U = _Unknowns(model)
    coeffs = [c[None, :] if c.size else np.zeros((1, 0)) for c in f.coords]
    M = U.block(3, coeffs, 1)
    images = matmul(M, res._coeffs.T, model.q)
    return res.dim - rank(images, model.q)
