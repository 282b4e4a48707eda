"""Column-transfer operators for grid strips.

A column of an m-row strip is encoded, up to translation, by its vector of
m-1 consecutive within-column differences, each in [-h, h].  The transfer
weight between two columns counts the admissible integer offsets between
them, which turns exact strip counting into iterated operator application
and growth constants into top eigenvalues.

Operator kinds
  band            0/1 matrix over one free row below a pinned all-zero row
  tent            weights 2h+1-|i-j|; identical to free-strip(2)
  free-strip(m)   m free rows, weight max(0, 2h+1 - spread of prefix offsets)
  pinned-strip(m) m free rows below an all-zero row, 0/1 transitions

All applications are matrix-free.  Exact integer paths are used for counts;
spectra run in floating point with a fixed summation order.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import ResourceLimitError
from .iterate import power_iteration

DEFAULT_STATE_BUDGET = 10**7
_INT64_SAFE = 1 << 62


def state_index(diffs: Sequence[int], h: int) -> int:
    """Mixed-radix index of a difference vector, each entry in [-h, h]."""
    idx = 0
    base = 2 * h + 1
    for d in diffs:
        if abs(d) > h:
            raise ValueError(f"difference {d} outside [-{h}, {h}]")
        idx = idx * base + (d + h)
    return idx


def index_state(idx: int, m: int, h: int) -> tuple[int, ...]:
    base = 2 * h + 1
    out = []
    for _ in range(m - 1):
        out.append(idx % base - h)
        idx //= base
    return tuple(reversed(out))


def _prefix_table(m: int, h: int) -> np.ndarray:
    """All states' prefix sums: row = (0, d1, d1+d2, ...), shape (dim, m)."""
    base = 2 * h + 1
    dim = base ** (m - 1)
    if m == 1:
        return np.zeros((1, 1), dtype=np.int64)
    grids = np.indices((base,) * (m - 1)).reshape(m - 1, dim).T - h
    pref = np.zeros((dim, m), dtype=np.int64)
    pref[:, 1:] = np.cumsum(grids, axis=1)
    return pref


class TransferOperator:
    """Common interface: kind, h, m, dim, ones(), apply(), normalized()."""

    kind: str
    h: int
    m: int
    dim: int

    def ones(self) -> np.ndarray:
        raise NotImplementedError

    def apply(self, x: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def normalized(self, eigenvalue: float) -> float:
        """Per-vertex growth scale: band -> lam/h, otherwise lam^(1/m)/h."""
        if self.h < 1:
            raise ValueError("normalization needs h >= 1")
        if self.kind == "band":
            return eigenvalue / self.h
        return eigenvalue ** (1.0 / self.m) / self.h


class BandOperator(TransferOperator):
    """Entries 1 iff |i-j| <= h on indices 0..2h (one row over a zero row)."""

    kind = "band"
    m = 1

    def __init__(self, h: int):
        if h < 0:
            raise ValueError("h must be nonnegative")
        self.h = h
        self.dim = 2 * h + 1

    def ones(self) -> np.ndarray:
        return np.ones(self.dim)

    def apply(self, x: np.ndarray) -> np.ndarray:
        if x.shape != (self.dim,):
            raise ValueError(f"expected vector of length {self.dim}")
        c = np.cumsum(x)
        hi = np.minimum(np.arange(self.dim) + self.h, self.dim - 1)
        lo = np.arange(self.dim) - self.h
        out = c[hi].astype(float)
        mask = lo > 0
        out[mask] -= c[lo[mask] - 1]
        return out


class FreeStripOperator(TransferOperator):
    """Transfer over m free rows; states are within-column difference vectors.

    The weight between states U and V is the number of integer column offsets
    delta with |delta + P_i(V) - P_i(U)| <= h for every row i, where P is the
    prefix sum of differences (P_1 = 0); that equals
    max(0, 2h+1 - (max_i D_i - min_i D_i)) with D = P(V) - P(U).
    """

    kind = "free-strip"

    def __init__(self, m: int, h: int, state_budget: int = DEFAULT_STATE_BUDGET):
        if m < 1:
            raise ValueError("m must be at least 1")
        if h < 0:
            raise ValueError("h must be nonnegative")
        self.m = m
        self.h = h
        self.dim = (2 * h + 1) ** (m - 1)
        if self.dim > state_budget:
            raise ResourceLimitError(
                f"state space (2h+1)^(m-1) = {self.dim} exceeds budget {state_budget}")
        self._pref = _prefix_table(m, h)

    def ones(self) -> np.ndarray:
        return np.ones(self.dim)

    def weight(self, u_diffs: Sequence[int], v_diffs: Sequence[int]) -> int:
        pu = self._pref[state_index(u_diffs, self.h)]
        pv = self._pref[state_index(v_diffs, self.h)]
        delta = pv - pu
        return max(0, 2 * self.h + 1 - int(delta.max() - delta.min()))

    def _sweep(self, x: np.ndarray) -> np.ndarray:
        """One output state at a time; O(dim * m) work per state."""
        span = 2 * self.h + 1
        pref = self._pref
        out = np.empty(self.dim, dtype=x.dtype)
        for v in range(self.dim):
            delta = pref[v] - pref
            spread = delta.max(axis=1) - delta.min(axis=1)
            w = np.maximum(span - spread, 0).astype(x.dtype)
            out[v] = w @ x
        return out

    def apply(self, x: np.ndarray) -> np.ndarray:
        if x.shape != (self.dim,):
            raise ValueError(f"expected vector of length {self.dim}")
        if self.m == 1:
            return x * (2 * self.h + 1)
        if self.m == 2:
            return _tent_apply(x, self.h)
        return self._sweep(x.astype(float))

    def apply_exact(self, xs: list[int]) -> list[int]:
        """Integer application; falls back to big ints before int64 overflow."""
        span = 2 * self.h + 1
        if self.m == 1:
            return [span * xs[0]]
        total = sum(xs)
        if span * total < _INT64_SAFE:
            y = self._sweep(np.asarray(xs, dtype=np.int64))
            return [int(v) for v in y]
        pref = self._pref
        out = []
        for v in range(self.dim):
            delta = pref[v] - pref
            spread = delta.max(axis=1) - delta.min(axis=1)
            w = np.maximum(span - spread, 0)
            out.append(sum(int(wi) * xi for wi, xi in zip(w, xs) if wi))
        return out


def _tent_apply(x: np.ndarray, h: int) -> np.ndarray:
    """y_s = sum_i (2h+1 - |s-i|) x_i in O(dim) via prefix sums."""
    span = 2 * h + 1
    idx = np.arange(x.size)
    a = np.cumsum(x)                # sum x_i, i <= s
    b = np.cumsum(idx * x)          # sum i x_i, i <= s
    total, total_i = a[-1], b[-1]
    # sum |s-i| x_i = s*a_s - b_s + (total_i - b_s) - s*(total - a_s)
    abs_part = idx * a - b + (total_i - b) - idx * (total - a)
    return span * total - abs_part


class TentOperator(FreeStripOperator):
    """Two-row transfer with entries 2h+1-|i-j| (free-strip(2) weights)."""

    kind = "tent"

    def __init__(self, h: int):
        super().__init__(2, h)
        self.kind = "tent"


class PinnedStripOperator(TransferOperator):
    """m free rows below an all-zero row; transitions are coordinatewise boxes.

    States are absolute value vectors (y_1..y_m) with |y_1| <= h and
    |y_{i+1} - y_i| <= h; a transition to (z_1..z_m) is allowed iff
    |z_i - y_i| <= h for all i.  Vectors live on an embedded box with axis i
    covering [-(i+1)h, (i+1)h]; invalid states stay zero.
    """

    kind = "pinned-strip"

    def __init__(self, m: int, h: int, state_budget: int = DEFAULT_STATE_BUDGET):
        if m < 1:
            raise ValueError("m must be at least 1")
        if h < 0:
            raise ValueError("h must be nonnegative")
        self.m = m
        self.h = h
        self.dim = (2 * h + 1) ** m
        self.shape = tuple(2 * (i + 1) * h + 1 for i in range(m))
        if int(np.prod(self.shape)) > state_budget:
            raise ResourceLimitError(
                f"embedded box {self.shape} exceeds budget {state_budget}")
        mask = np.ones(self.shape, dtype=bool)
        for i in range(m - 1):
            lo = np.arange(self.shape[i]) - (i + 1) * h
            hi = np.arange(self.shape[i + 1]) - (i + 2) * h
            diff = np.abs(hi.reshape((1,) * (i + 1) + (-1,) + (1,) * (m - i - 2))
                          - lo.reshape((1,) * i + (-1, 1) + (1,) * (m - i - 2)))
            mask &= diff <= h
        self.mask = mask

    def ones(self) -> np.ndarray:
        return self.mask.astype(float)

    def apply(self, x: np.ndarray) -> np.ndarray:
        if x.shape != self.shape:
            raise ValueError(f"expected box of shape {self.shape}")
        y = x
        for axis in range(self.m):
            y = _sliding_window_sum(y, self.h, axis)
        return y * self.mask

    def states(self) -> list[tuple[int, ...]]:
        """Valid states in C order of the embedded box."""
        coords = np.argwhere(self.mask)
        offs = np.array([(i + 1) * self.h for i in range(self.m)])
        return [tuple(int(c) for c in row - offs) for row in coords]

    def basis(self, state: tuple[int, ...]) -> np.ndarray:
        e = np.zeros(self.shape)
        pos = tuple(state[i] + (i + 1) * self.h for i in range(self.m))
        e[pos] = 1.0
        return e


def _sliding_window_sum(arr: np.ndarray, half: int, axis: int) -> np.ndarray:
    """Sum over a window of half-width ``half`` along ``axis``, zero padded."""
    c = np.cumsum(arr, axis=axis, dtype=float)
    length = arr.shape[axis]
    idx_hi = np.minimum(np.arange(length) + half, length - 1)
    out = np.take(c, idx_hi, axis=axis)
    lo = np.arange(length) - half - 1
    valid = lo >= 0
    sub = np.take(c, np.maximum(lo, 0), axis=axis)
    shape = [1] * arr.ndim
    shape[axis] = length
    out -= sub * valid.reshape(shape)
    return out


def make_operator(kind: str, h: int, m: int | None = None,
                  state_budget: int = DEFAULT_STATE_BUDGET) -> TransferOperator:
    if kind == "band":
        return BandOperator(h)
    if kind == "tent":
        return TentOperator(h)
    if kind == "free-strip":
        return FreeStripOperator(m if m is not None else 2, h, state_budget)
    if kind == "pinned-strip":
        return PinnedStripOperator(m if m is not None else 1, h, state_budget)
    raise ValueError(f"unknown operator kind {kind!r}")


def dense_matrix(op: TransferOperator) -> np.ndarray:
    """Materialize small operators column-by-column (tests and inspection)."""
    if isinstance(op, PinnedStripOperator):
        states = op.states()
        cols = [op.apply(op.basis(s))[op.mask] for s in states]
        return np.column_stack(cols)
    cols = []
    for j in range(op.dim):
        e = np.zeros(op.dim)
        e[j] = 1.0
        cols.append(op.apply(e))
    return np.column_stack(cols)


@dataclass(frozen=True)
class SpectralEstimate:
    kind: str
    m: int
    h: int
    dim: int
    eigenvalue: float
    normalized: float
    residual: float
    iterations: int


def top_eigenvalue(op: TransferOperator, tol: float = 1e-10,
                   max_iter: int = 10**5) -> SpectralEstimate:
    """Dominant eigenvalue by power iteration from the all-ones vector.

    Converged when successive Rayleigh quotients agree to a relative ``tol``;
    the all-ones start has positive overlap with the Perron vector.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    lam, _, residual, iters = power_iteration(op.apply, op.ones(), tol, max_iter)
    return SpectralEstimate(op.kind, op.m, op.h, op.dim, lam,
                            op.normalized(lam), residual, iters)


def strip_count_exact(m: int, n: int, h: int,
                      state_budget: int = DEFAULT_STATE_BUDGET) -> int:
    """Exact count of h-Lipschitz functions on the m-row, n-column grid.

    Equals 1^T W^(n-1) 1 over free-strip(m) states: the first column, rooted
    at its top vertex, realises every difference vector exactly once, and each
    transfer weight counts the offsets of the next column.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    if m < 1:
        raise ValueError("m must be at least 1")
    if h < 0:
        raise ValueError("h must be nonnegative")
    if n == 1:
        # a single rooted column: one valid assignment per difference vector
        return (2 * h + 1) ** (m - 1)
    op = FreeStripOperator(m, h, state_budget)
    xs = [1] * op.dim
    for _ in range(n - 1):
        xs = op.apply_exact(xs)
    return sum(xs)


def rayleigh_lower_bound(m: int, h: int,
                         state_budget: int = DEFAULT_STATE_BUDGET) -> Fraction:
    """Certified bound lam >= (1^T W 1) / dim for free-strip(m), exact rational."""
    op = FreeStripOperator(m, h, state_budget)
    total = sum(op.apply_exact([1] * op.dim))
    return Fraction(total, op.dim)


@dataclass(frozen=True)
class ExtrapolationFit:
    """Limit of normalized(h) = limit + a/h (+ curvature/h^2) fitted in 1/h."""

    limit: float
    slope: float
    curvature: float


def extrapolate_limit(estimates: Sequence[tuple[float, float]]) -> ExtrapolationFit:
    """Richardson-style h -> infinity limit from (h, normalized value) pairs.

    Fits a quadratic in 1/h (least squares when more than three points), which
    models the first-order boundary error of the discrete operators plus one
    correction term.  The fitted 1/h coefficient is reported so the model
    assumption stays auditable.
    """
    if len(estimates) < 3:
        raise ValueError("need at least 3 points")
    hs = [float(h) for h, _ in estimates]
    if sorted(set(hs)) != hs:
        raise ValueError("h values must be distinct and increasing")
    z = 1.0 / np.asarray(hs)
    vals = np.asarray([v for _, v in estimates], dtype=float)
    coeffs = np.polynomial.polynomial.polyfit(z, vals, deg=2)
    return ExtrapolationFit(float(coeffs[0]), float(coeffs[1]), float(coeffs[2]))
