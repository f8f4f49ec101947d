"""Closed-form vs Blahut-Arimoto capacity over an (n, alpha) grid."""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import astuple, dataclass
from decimal import Decimal

from .blahut_arimoto import BAConfig, blahut_arimoto
from .capacity import Validity, solve_closed_form, stationarity_residual
from .matrix import ChannelParams, build_inverse, build_matrix

__all__ = ["SWEEP_HEADER", "SweepRecord", "alpha_grid", "solve_point", "run_sweep", "thread_cap"]

SWEEP_HEADER = (
    "n,alpha,capacity_closed_bits,capacity_ba_bits,validity,min_p_star,stationarity_residual"
)


@dataclass(frozen=True)
class SweepRecord:
    n: int
    alpha: float
    capacity_closed_bits: float
    capacity_ba_bits: float
    validity: Validity
    min_p_star: float
    stationarity_residual: float

    def csv_row(self) -> str:
        n, alpha, closed, ba, validity, min_p, resid = astuple(self)
        return ",".join([str(n), repr(alpha), repr(closed), repr(ba), str(validity),
                         repr(min_p), repr(resid)])


def alpha_grid(alpha_min, alpha_max, alpha_step) -> list[float]:
    """Inclusive grid computed in decimal so ``0.01 .. 0.20`` gives exactly 20 points."""
    lo, hi, step = (Decimal(str(x)) for x in (alpha_min, alpha_max, alpha_step))
    if step <= 0:
        raise ValueError("alpha_step must be positive")
    if lo > hi:
        raise ValueError("alpha_min must not exceed alpha_max")
    count = int((hi - lo) / step) + 1
    return [float(lo + k * step) for k in range(count)]


def solve_point(n: int, alpha: float, ba_config: BAConfig | None = None) -> SweepRecord:
    params = ChannelParams(n, alpha)
    a = build_matrix(params)
    inv = build_inverse(params, a)
    sol = solve_closed_form(a, inv)
    ba = blahut_arimoto(a, ba_config)
    return SweepRecord(
        n=n,
        alpha=alpha,
        capacity_closed_bits=sol.capacity_bits,
        capacity_ba_bits=ba.capacity_bits,
        validity=sol.validity,
        min_p_star=float(sol.p_star.min()),
        stationarity_residual=stationarity_residual(a, inv, sol),
    )


def thread_cap() -> int:
    """Worker count, capped by the ``WCHAN_THREADS`` environment variable."""
    default = os.cpu_count() or 1
    raw = os.environ.get("WCHAN_THREADS")
    if not raw:
        return default
    try:
        return max(1, int(raw))
    except ValueError:
        return default


def run_sweep(n_max: int, alphas, ba_config: BAConfig | None = None,
              workers: int | None = None) -> list[SweepRecord]:
    """One record per ``(n, alpha)``, ordered n-major then alpha."""
    points = [(n, a) for n in range(1, n_max + 1) for a in alphas]
    with ThreadPoolExecutor(max_workers=workers or thread_cap()) as pool:
        records = list(pool.map(lambda pt: solve_point(*pt, ba_config), points))
    return sorted(records, key=lambda r: (r.n, r.alpha))
