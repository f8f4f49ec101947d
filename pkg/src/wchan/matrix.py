"""Weight-state transition matrix of n independently flipping binary channels.

Each of ``n`` channels is either good (1) or bad (0) and toggles with
probability ``alpha`` during one transmission slot.  The receiver only sees
the number of good channels, so the process lives on the weight states
``w = 0, ..., n``.  ``A[u, v]`` is the probability of moving from ``u`` good
channels to ``v`` good channels.

The inverse has a closed form: flip the sign of every entry with odd index
sum and divide by ``(1 - 2*alpha)**n``.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

import numpy as np

__all__ = [
    "MAX_CHANNELS",
    "SINGULARITY_GUARD",
    "PIVOT_FLOOR",
    "ParameterError",
    "SingularAlpha",
    "NumericallySingular",
    "ChannelParams",
    "TransitionMatrix",
    "InverseMatrix",
    "entry",
    "build_matrix",
    "build_inverse",
    "sign_pattern",
    "signed_companion",
    "numeric_inverse_oracle",
]

MAX_CHANNELS = 30
SINGULARITY_GUARD = 1e-9
PIVOT_FLOOR = 1e-13


class ParameterError(ValueError):
    """Raised for out-of-range channel parameters or weight states."""


class SingularAlpha(ArithmeticError):
    """Raised when ``|1 - 2*alpha|`` is too small for the closed-form inverse."""


class NumericallySingular(ArithmeticError):
    """Raised by the elimination oracle when a pivot falls below ``PIVOT_FLOOR``."""


@dataclass(frozen=True)
class ChannelParams:
    """Number of binary channels ``n`` and the per-slot flip probability ``alpha``."""

    n: int
    alpha: float

    def __post_init__(self):
        if isinstance(self.n, bool) or not isinstance(self.n, (int, np.integer)):
            raise ParameterError(f"n must be an integer, got {self.n!r}")
        if not 1 <= self.n <= MAX_CHANNELS:
            raise ParameterError(f"n must be in [1, {MAX_CHANNELS}], got {self.n}")
        alpha = float(self.alpha)
        if not 0.0 <= alpha <= 1.0:  # also rejects nan
            raise ParameterError(f"alpha must be in [0, 1], got {self.alpha!r}")
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "alpha", alpha)

    @property
    def size(self) -> int:
        return self.n + 1


def _frozen(a: np.ndarray) -> np.ndarray:
    a.flags.writeable = False
    return a


@dataclass(frozen=True, eq=False)
class TransitionMatrix:
    """Row-stochastic ``(n+1) x (n+1)`` matrix, ``entries[w_from, w_to]``."""

    params: ChannelParams
    entries: np.ndarray

    @property
    def n(self) -> int:
        return self.params.n

    @property
    def alpha(self) -> float:
        return self.params.alpha

    def is_row_stochastic(self, tol: float = 1e-12) -> bool:
        e = self.entries
        return bool(
            np.all(e >= 0.0) and np.all(e <= 1.0)
            and np.all(np.abs(e.sum(axis=1) - 1.0) <= tol)
        )

    def is_centrosymmetric(self) -> bool:
        """Bit-exact check of ``A[u, v] == A[n-u, n-v]``."""
        return bool(np.array_equal(self.entries, self.entries[::-1, ::-1]))


@dataclass(frozen=True, eq=False)
class InverseMatrix:
    """Closed-form inverse of a :class:`TransitionMatrix`."""

    params: ChannelParams
    entries: np.ndarray


def _check_state(n: int, w) -> int:
    if isinstance(w, bool) or not isinstance(w, (int, np.integer)):
        raise ParameterError(f"weight state must be an integer, got {w!r}")
    if not 0 <= w <= n:
        raise ParameterError(f"weight state must be in [0, {n}], got {w}")
    return int(w)


def _powers(x: float, n: int) -> list[float]:
    out = [1.0]
    for _ in range(n):
        out.append(out[-1] * x)
    return out


def _entry(n: int, u: int, v: int, a_pow: list[float], b_pow: list[float]) -> float:
    # s good channels turn bad, so v - u + s bad ones must turn good
    total = 0.0
    for s in range(max(u - v, 0), min(n - v, u) + 1):
        flips = v - u + 2 * s
        total += comb(u, s) * comb(n - u, v - u + s) * a_pow[flips] * b_pow[n - flips]
    return total


def entry(params: ChannelParams, w_from: int, w_to: int) -> float:
    """Probability of moving from ``w_from`` to ``w_to`` good channels in one slot.

    Sums over ``s``, the number of good channels that turn bad; the binomial
    coefficients are exact integers and are converted to float only when
    multiplied by the probability weights.
    """
    n = params.n
    u = _check_state(n, w_from)
    v = _check_state(n, w_to)
    a = params.alpha
    return _entry(n, u, v, _powers(a, n), _powers(1.0 - a, n))


def build_matrix(params: ChannelParams) -> TransitionMatrix:
    n = params.n
    a_pow = _powers(params.alpha, n)
    b_pow = _powers(1.0 - params.alpha, n)
    m = np.empty((n + 1, n + 1))
    for u in range(n + 1):
        for v in range(n + 1):
            m[u, v] = _entry(n, u, v, a_pow, b_pow)
    return TransitionMatrix(params, _frozen(m))


def sign_pattern(size: int) -> np.ndarray:
    """Checkerboard of ``(-1)**(i + j)``."""
    idx = np.arange(size)
    return np.where((idx[:, None] + idx[None, :]) % 2 == 0, 1.0, -1.0)


def signed_companion(matrix: TransitionMatrix) -> np.ndarray:
    """``A*[i, j] = (-1)**(i+j) * A[i, j]``; satisfies ``A @ A* = (1-2a)**n * I``."""
    e = matrix.entries
    return sign_pattern(e.shape[0]) * e


def build_inverse(params: ChannelParams, matrix: TransitionMatrix | None = None) -> InverseMatrix:
    """Closed-form inverse of :func:`build_matrix` ``(params)``.

    Raises :class:`SingularAlpha` when ``|1 - 2*alpha| < SINGULARITY_GUARD``.
    A prebuilt ``matrix`` for the same parameters may be passed to skip
    reconstruction.
    """
    gap = 1.0 - 2.0 * params.alpha
    if abs(gap) < SINGULARITY_GUARD:
        raise SingularAlpha(
            f"transition matrix is singular at alpha={params.alpha!r} "
            f"(|1 - 2*alpha| = {abs(gap):.3g} < {SINGULARITY_GUARD:g})"
        )
    if matrix is None:
        matrix = build_matrix(params)
    elif matrix.params != params:
        raise ParameterError("matrix was built for different parameters")
    inv = signed_companion(matrix) / gap**params.n
    return InverseMatrix(params, _frozen(inv))


def numeric_inverse_oracle(matrix) -> np.ndarray:
    """Invert by Gauss-Jordan elimination with partial pivoting.

    Knows nothing about the closed form; it exists to cross-check
    :func:`build_inverse`.  Accepts a :class:`TransitionMatrix` or any square
    array.
    """
    a = np.array(getattr(matrix, "entries", matrix), dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    size = a.shape[0]
    aug = np.hstack([a, np.eye(size)])
    for col in range(size):
        piv = col + int(np.argmax(np.abs(aug[col:, col])))
        if abs(aug[piv, col]) < PIVOT_FLOOR:
            raise NumericallySingular(
                f"pivot {aug[piv, col]:.3g} in column {col} is below {PIVOT_FLOOR:g}"
            )
        if piv != col:
            aug[[col, piv]] = aug[[piv, col]]
        aug[col] /= aug[col, col]
        for row in range(size):
            if row != col and aug[row, col] != 0.0:
                aug[row] -= aug[row, col] * aug[col]
    return aug[:, size:]
