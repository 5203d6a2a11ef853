"""Exact arithmetic over a prime field F_q and dense linear algebra.

Matrices are plain numpy arrays holding canonical representatives in
``[0, q)``.  Internally everything is stored as float64: for ``q < 2**26``
every product of two residues is below ``2**52`` and a dot product of up to
``CHUNK`` terms stays exactly representable, so BLAS matrix products are
exact after reduction.  Dense storage is intended for matrices up to roughly
5000 columns.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

DEFAULT_Q = 32003

# Inner dimension per exact float64 matmul chunk: CHUNK * (q - 1)**2 < 2**53.
_MAX_Q = 1 << 26


class ZeroInverse(ZeroDivisionError):
    """Raised when inverting zero in F_q."""


class NonPrimeModulus(ValueError):
    """Raised when a field is requested for a composite modulus."""


class DimensionMismatch(ValueError):
    pass


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for 64-bit integers."""
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for s in small:
        if n % s == 0:
            return n == s
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class PrimeField:
    """The prime field F_q.

    ``q`` must be prime and exceed 1000 so that Hasse-derivative
    multiplicity conditions and random sampling behave generically.
    """

    q: int = DEFAULT_Q

    def __post_init__(self):
        if not is_prime(self.q):
            raise NonPrimeModulus(f"{self.q} is not prime")
        if self.q <= 1000:
            raise ValueError(f"q={self.q} is too small; need a prime > 1000")
        if self.q >= _MAX_Q:
            raise ValueError(f"q={self.q} too large for exact float64 kernels")

    def __call__(self, value: int) -> int:
        return int(value) % self.q

    def inverse(self, a: int) -> int:
        return field_inverse(a, self.q)

    def array(self, values) -> np.ndarray:
        """Canonical float64 array of residues."""
        return reduce(np.asarray(values, dtype=np.float64), self.q)


def field_inverse(a: int, q: int) -> int:
    """Inverse of ``a`` modulo the prime ``q``."""
    a = int(a) % q
    if a == 0:
        raise ZeroInverse("0 has no inverse")
    return pow(a, -1, q)


def _chunk(q: int) -> int:
    # loose residues satisfy |x| < 1.5 q, so products are below 2.25 q**2
    return max(1, int((2.0**53 - 1) // (2.25 * float(q) ** 2)))


def reduce(x: np.ndarray, q: int) -> np.ndarray:
    """Reduce an integral float64 array to ``[0, q)``; returns a new array."""
    return _canonical(np.array(x, dtype=np.float64, copy=True), q)


def _canonical(x: np.ndarray, q: int) -> np.ndarray:
    t = x * (1.0 / q)
    np.floor(t, out=t)
    t *= q
    x -= t
    np.subtract(x, q, out=x, where=x >= q)
    np.add(x, q, out=x, where=x < 0)
    return x


def _loose(x: np.ndarray, q: int) -> np.ndarray:
    """In-place reduction to a loose residue with ``|x| < 1.5 q``.

    Multiples of ``q`` always map to exactly 0, so zero tests stay exact.
    """
    t = x * (1.0 / q)
    np.rint(t, out=t)
    t *= q
    x -= t
    return x


def _mm(a: np.ndarray, b: np.ndarray, q: int) -> np.ndarray:
    """Product of loose residue matrices, reduced loosely."""
    k = a.shape[-1]
    step = _chunk(q)
    if k <= step:
        return _loose(a @ b, q)
    out = None
    for s in range(0, k, step):
        part = _loose(a[..., s : s + step] @ b[s : s + step], q)
        out = part if out is None else _loose(out + part, q)
    return out


def matmul(a: np.ndarray, b: np.ndarray, q: int) -> np.ndarray:
    """Exact product of two residue matrices modulo ``q``."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    return _canonical(_mm(a, b, q), q)


def _panel_pivots(sub: np.ndarray, q: int) -> tuple[list[int], list[int]]:
    """Pivot columns of ``sub`` and the rows supplying them (first nonzero)."""
    a = sub.astype(np.int64) % q
    m, b = a.shape
    rows = np.arange(m)
    cols: list[int] = []
    prow: list[int] = []
    r = 0
    for c in range(b):
        if r == m:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
            rows[[r, i]] = rows[[i, r]]
        inv = pow(int(a[r, c]), -1, q)
        a[r, c:] = a[r, c:] * inv % q
        below = r + 1 + np.flatnonzero(a[r + 1 :, c])
        if below.size:
            a[below, c:] = (a[below, c:] - a[below, c][:, None] * a[r, c:]) % q
        cols.append(c)
        prow.append(int(rows[r]))
        r += 1
    return cols, prow


def _inverse_small(b: np.ndarray, q: int) -> np.ndarray:
    k = b.shape[0]
    aug = np.hstack([b.astype(np.int64) % q, np.eye(k, dtype=np.int64)])
    for c in range(k):
        i = c + int(np.flatnonzero(aug[c:, c])[0])
        if i != c:
            aug[[c, i]] = aug[[i, c]]
        aug[c] = aug[c] * pow(int(aug[c, c]), -1, q) % q
        f = aug[:, c].copy()
        f[c] = 0
        nz = np.flatnonzero(f)
        if nz.size:
            aug[nz] = (aug[nz] - f[nz, None] * aug[c]) % q
    return aug[:, k:].astype(np.float64)


_PANEL = 96


def _eliminate(rows: np.ndarray, pc: list[int], u: np.ndarray, c0: int, q: int) -> None:
    """Clear columns ``pc`` of ``rows`` using pivot rows ``u`` (columns c0 on)."""
    f = rows[:, pc]
    nz = f.any(axis=1)
    if not nz.any():
        return
    if nz.all():
        block = rows[:, c0:]
        block -= f @ u
        _loose(block, q)
    else:
        idx = np.flatnonzero(nz)
        block = rows[idx, c0:]
        block -= f[idx] @ u
        rows[idx, c0:] = _loose(block, q)


def _find_pivots(act: np.ndarray, c0: int, c1: int, q: int) -> tuple[list[int], list[int]]:
    # a few rows usually have full rank on the panel; otherwise use all rows
    width = c1 - c0
    probe = 2 * width
    if act.shape[0] > probe:
        cols, prow = _panel_pivots(act[:probe, c0:c1], q)
        if len(cols) == width:
            return cols, prow
    return _panel_pivots(act[:, c0:c1], q)


def _rref(a: np.ndarray, q: int) -> tuple[np.ndarray, list[int]]:
    """Column-panel elimination with BLAS trailing updates, then back-substitution.

    Rows ``[0, top)`` hold finished pivot rows; the rest are active.  Pivot
    rows are moved into place by swapping, never by reordering the matrix.
    Entries stay loose residues until the end.
    """
    n = a.shape[1]
    blocks: list[tuple[int, list[int]]] = []
    top = 0
    c0 = 0
    while c0 < n and top < a.shape[0]:
        c1 = min(n, c0 + _PANEL)
        act = a[top:]
        cols, prow = _find_pivots(act, c0, c1, q)
        if cols:
            k = len(cols)
            pc = [c0 + c for c in cols]
            u = _mm(_inverse_small(act[np.ix_(prow, pc)], q), act[prow, c0:], q)
            chosen = set(prow)
            displaced = [i for i in range(k) if i not in chosen]
            vacated = [i for i in prow if i >= k]
            if displaced:
                act[vacated] = act[displaced]
            act[:k, :c0] = 0.0
            act[:k, c0:] = u
            _eliminate(act[k:], pc, u, c0, q)
            blocks.append((top, pc))
            top += k
        # drop active rows that vanished, once enough of them accumulate
        if top < a.shape[0] and c1 < n:
            live = a[top:, c1:].any(axis=1)
            dead = live.size - int(live.sum())
            if dead and (dead * 4 >= live.size or dead > 256):
                a = np.concatenate([a[:top], a[top:][live]])
        c0 = c1
    r = a[:top]
    pivots = [c for _, pc in blocks for c in pc]
    for start, pc in reversed(blocks):
        if start:
            k = len(pc)
            _eliminate(r[:start], pc, r[start : start + k, pc[0] :], pc[0], q)
    return _canonical(r, q), pivots


def rref(a, q: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form over F_q.

    Returns the nonzero rows of the RREF (shape ``rank x n``) and the pivot
    columns.  The RREF is unique, so the output does not depend on the
    panel width or pivot order used to compute it.
    """
    a = reduce(a, q)
    if a.ndim != 2:
        raise DimensionMismatch("expected a 2-d matrix")
    if a.shape[0] == 0 or a.shape[1] == 0:
        return np.zeros((0, a.shape[1])), []
    return _rref(a, q)


def rank(a, q: int) -> int:
    return len(rref(a, q)[1])


def kernel_from_rref(r: np.ndarray, pivots: list[int], n: int, q: int) -> np.ndarray:
    free = np.setdiff1d(np.arange(n), pivots)
    k = np.zeros((free.size, n))
    k[np.arange(free.size), free] = 1.0
    if pivots:
        k[:, pivots] = reduce(-r[:, free].T, q)
    return k


def rank_kernel(a, q: int) -> tuple[int, np.ndarray]:
    """Rank of ``a`` and a basis of its right kernel.

    The kernel basis is returned as the rows of a ``(n - rank) x n`` array;
    each row ``v`` satisfies ``a @ v == 0`` exactly.
    """
    a = np.asarray(a, dtype=np.float64)
    n = a.shape[1]
    r, piv = rref(a, q)
    return len(piv), kernel_from_rref(r, piv, n, q)


def left_kernel(a, q: int) -> np.ndarray:
    """Rows ``v`` with ``v @ a == 0``."""
    return rank_kernel(np.asarray(a).T, q)[1]


def solve(a, b, q: int) -> np.ndarray | None:
    """Some ``x`` with ``a @ x == b`` over F_q, or ``None`` if inconsistent."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.ndim != 2 or b.shape[0] != a.shape[0]:
        raise DimensionMismatch(f"matrix has {a.shape[0]} rows, rhs has {b.shape[0]}")
    vec = b.ndim == 1
    bb = b.reshape(a.shape[0], -1)
    n = a.shape[1]
    r, piv = rref(np.hstack([a, bb]), q)
    if piv and piv[-1] >= n:
        return None
    x = np.zeros((n, bb.shape[1]))
    if piv:
        x[piv] = r[:, n:]
    return x[:, 0] if vec else x


def row_space_complement(span_rows, candidates, q: int) -> np.ndarray:
    """Rows spanning ``span(candidates)`` modulo ``span(span_rows)``.

    The result is in reduced form relative to the RREF of ``span_rows`` and
    every returned row lies in ``span(span_rows) + span(candidates)``.
    """
    candidates = reduce(np.asarray(candidates, dtype=np.float64), q)
    if candidates.shape[0] == 0:
        return candidates
    span_rows = np.asarray(span_rows, dtype=np.float64)
    if span_rows.shape[0]:
        r, piv = rref(span_rows, q)
        if piv:
            candidates = _canonical(candidates - _mm(candidates[:, piv], r, q), q)
    out, _ = rref(candidates, q)
    return out
