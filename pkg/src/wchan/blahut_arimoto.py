"""Blahut-Arimoto iteration for the capacity of a discrete memoryless channel."""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

__all__ = ["BAConfig", "BAResult", "NotConvergedWarning", "blahut_arimoto"]


class NotConvergedWarning(RuntimeWarning):
    pass


@dataclass(frozen=True)
class BAConfig:
    tolerance_bits: float = 1e-10
    max_iterations: int = 100_000

    def __post_init__(self):
        if not self.tolerance_bits >= 1e-14:
            raise ValueError(f"tolerance_bits must be >= 1e-14, got {self.tolerance_bits!r}")
        if not 1 <= self.max_iterations <= 10**6:
            raise ValueError(f"max_iterations must be in [1, 1e6], got {self.max_iterations!r}")


@dataclass(frozen=True, eq=False)
class BAResult:
    """Capacity estimate with its certificate.

    ``capacity_bits`` is the lower end of the final bracket and never exceeds
    the true capacity; ``upper_bound_bits`` never falls below it.  The
    per-iteration brackets are kept in ``lower_history``/``upper_history``.
    """

    capacity_bits: float
    p_opt: np.ndarray
    iterations: int
    converged: bool
    upper_bound_bits: float
    lower_history: np.ndarray = field(repr=False)
    upper_history: np.ndarray = field(repr=False)

    @property
    def gap_bits(self) -> float:
        return self.upper_bound_bits - self.capacity_bits


def _divergences(a: np.ndarray, row_terms: np.ndarray, p: np.ndarray, live: np.ndarray) -> np.ndarray:
    # c_i = sum_j A_ij log2(A_ij / q_j); dead columns have A_ij = 0 and log_q left at 0
    q = p @ a
    log_q = np.zeros_like(q)
    log_q[live] = np.log2(q[live])
    return row_terms - a @ log_q


def blahut_arimoto(matrix, config: BAConfig | None = None) -> BAResult:
    """Maximise ``I(X;Y)`` over input distributions.

    Starts from the uniform input.  Each step evaluates
    ``c_i = D(A[i] || q)``, brackets the capacity by
    ``[log2 sum_i p_i 2**c_i, max_i c_i]`` and reweights ``p_i *= 2**c_i``.
    Stops once the bracket is narrower than ``config.tolerance_bits``; if the
    iteration budget runs out a :class:`NotConvergedWarning` is issued and
    the last iterate is returned with ``converged=False``.
    """
    config = config or BAConfig()
    a = np.asarray(getattr(matrix, "entries", matrix), dtype=float)
    if a.ndim != 2:
        raise ValueError("channel matrix must be two-dimensional")
    m = a.shape[0]
    with np.errstate(divide="ignore"):
        log_a = np.where(a > 0.0, np.log2(np.where(a > 0.0, a, 1.0)), 0.0)
    row_terms = np.sum(a * log_a, axis=1)
    live = np.any(a > 0.0, axis=0)

    p = np.full(m, 1.0 / m)
    lows, highs = [], []
    converged = False
    for _ in range(config.max_iterations):
        c = _divergences(a, row_terms, p, live)
        c_max = float(c.max())
        w = p * np.exp2(c - c_max)
        s = float(w.sum())
        lower = c_max + float(np.log2(s))
        lows.append(lower)
        highs.append(c_max)
        if c_max - lower <= config.tolerance_bits:
            converged = True
            break
        p = w / s

    if not converged:
        warnings.warn(
            f"Blahut-Arimoto stopped after {config.max_iterations} iterations with "
            f"gap {highs[-1] - lows[-1]:.3g} bits",
            NotConvergedWarning,
            stacklevel=2,
        )
    return BAResult(
        capacity_bits=lows[-1],
        p_opt=p,
        iterations=len(lows),
        converged=converged,
        upper_bound_bits=highs[-1],
        lower_history=np.array(lows),
        upper_history=np.array(highs),
    )
