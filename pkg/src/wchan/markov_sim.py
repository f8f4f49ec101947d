"""Monte Carlo estimate of the weight-state transition matrix.

Every starting weight ``w`` gets its own Philox-4x64 stream keyed by
``(seed, w)`` with the counter starting at zero.  Trial ``t`` consumes the
``n`` uniform doubles at stream positions ``t*n .. t*n + n - 1``, bit ``b``
flips when its uniform is below ``alpha``.  Results therefore depend only on
``(seed, n, alpha, trials_per_state)``, not on block size or thread count.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .matrix import ChannelParams, build_matrix

__all__ = [
    "DEFAULT_SEED",
    "SimConfig",
    "SimEstimate",
    "representative",
    "state_stream",
    "sample_weights",
    "simulate_transitions",
]

DEFAULT_SEED = 20240611
_BLOCK = 1 << 16
_U64 = (1 << 64) - 1


@dataclass(frozen=True)
class SimConfig:
    params: ChannelParams
    trials_per_state: int
    seed: int = DEFAULT_SEED

    def __post_init__(self):
        if int(self.trials_per_state) < 1:
            raise ValueError(f"trials_per_state must be >= 1, got {self.trials_per_state}")
        if not 0 <= int(self.seed) <= _U64:
            raise ValueError(f"seed must be an unsigned 64-bit integer, got {self.seed}")


@dataclass(frozen=True, eq=False)
class SimEstimate:
    empirical: np.ndarray
    counts: np.ndarray
    trials_per_state: int
    max_abs_deviation: float


def representative(n: int, w: int) -> np.ndarray:
    """Weight-``w`` bit string with its ones in the lowest positions."""
    bits = np.zeros(n, dtype=np.int8)
    bits[:w] = 1
    return bits


def state_stream(seed: int, w: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(key=np.array([seed, w], dtype=np.uint64)))


def sample_weights(bits, alpha: float, trials: int, rng: np.random.Generator) -> np.ndarray:
    """Counts of the resulting weight after one slot, from a fixed bit string."""
    bits = np.asarray(bits, dtype=bool)
    n = bits.size
    counts = np.zeros(n + 1, dtype=np.int64)
    ones = int(bits.sum())
    done = 0
    while done < trials:
        m = min(_BLOCK, trials - done)
        flips = rng.random((m, n)) < alpha
        # good channels lost minus bad channels gained
        weight = ones - flips[:, bits].sum(axis=1) + flips[:, ~bits].sum(axis=1)
        counts += np.bincount(weight, minlength=n + 1)
        done += m
    return counts


def simulate_transitions(config: SimConfig, workers: int | None = None) -> SimEstimate:
    params = config.params
    n, trials = params.n, int(config.trials_per_state)

    def row(w):
        return sample_weights(representative(n, w), params.alpha, trials,
                              state_stream(int(config.seed), w))

    workers = workers or min(n + 1, os.cpu_count() or 1)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        counts = np.vstack(list(pool.map(row, range(n + 1))))
    empirical = counts / trials
    deviation = float(np.max(np.abs(empirical - build_matrix(params).entries)))
    return SimEstimate(empirical, counts, trials, deviation)
