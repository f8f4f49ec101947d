"""Closed-form channel capacity from the stationarity conditions in output space.

Writing the input as ``p = inv(A).T @ q`` turns the mutual information into a
function of the output distribution ``q`` alone:

    I(q) = -sum_j q_j log2 q_j + q @ K,    K = inv(A) @ h,

with ``h_i = sum_k A[i, k] log2 A[i, k]`` the negated row entropies.  Its
maximiser over the simplex is ``q_j = 2**(K_j - nu - 1)`` with
``nu = log2 sum_j 2**(K_j - 1)``.  The recovered ``p`` is a genuine
distribution only in part of the parameter space; elsewhere the value is an
upper bound on capacity.

All logarithms are base 2.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .matrix import ChannelParams, InverseMatrix, TransitionMatrix

__all__ = [
    "VALIDITY_GUARD",
    "DISTRIBUTION_TOL",
    "ZERO_ENTRY",
    "InvalidDistribution",
    "Validity",
    "CapacityRole",
    "MutualInformationBreakdown",
    "CapacitySolution",
    "binary_entropy",
    "row_log_terms",
    "mutual_information",
    "k_vector",
    "classify_validity",
    "solve_closed_form",
    "stationarity_residual",
]

VALIDITY_GUARD = 1e-9
DISTRIBUTION_TOL = 1e-9
ZERO_ENTRY = 1e-300


class InvalidDistribution(ValueError):
    pass


class Validity(str, enum.Enum):
    VALID = "Valid"
    INVALID_INPUT = "InvalidInput"

    def __str__(self):
        return self.value


class CapacityRole(str, enum.Enum):
    EXACT = "Exact"
    UPPER_BOUND = "UpperBound"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class MutualInformationBreakdown:
    h_y: float
    h_y_given_x: float
    i_xy: float


@dataclass(frozen=True, eq=False)
class CapacitySolution:
    """Output of :func:`solve_closed_form`.

    ``p_star`` is the raw recovered input and may leave the simplex.
    ``p_clamped`` is the guard-band-cleaned version when ``validity`` is
    ``VALID`` and ``None`` otherwise.
    """

    params: ChannelParams
    k_vector: np.ndarray
    nu_star: float
    q_star: np.ndarray
    p_star: np.ndarray
    capacity_bits: float
    validity: Validity
    capacity_role: CapacityRole
    p_clamped: np.ndarray | None = None

    @property
    def is_valid(self) -> bool:
        return self.validity is Validity.VALID


def _entries(matrix) -> np.ndarray:
    return np.asarray(getattr(matrix, "entries", matrix), dtype=float)


def _xlog2x(x: np.ndarray) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    out = np.zeros_like(x)
    pos = x > ZERO_ENTRY
    out[pos] = x[pos] * np.log2(x[pos])
    return out


def binary_entropy(alpha):
    """``H_b(alpha)`` in bits, with ``H_b(0) = H_b(1) = 0``."""
    a = np.asarray(alpha, dtype=float)
    h = -(_xlog2x(a) + _xlog2x(1.0 - a))
    return float(h) if h.ndim == 0 else h


def row_log_terms(matrix) -> np.ndarray:
    """``h_i = sum_k A[i, k] log2 A[i, k]``, i.e. minus each row's entropy."""
    return _xlog2x(_entries(matrix)).sum(axis=1)


def mutual_information(matrix, p) -> MutualInformationBreakdown:
    """``I(X;Y) = H(Y) - H(Y|X)`` for input distribution ``p``."""
    a = _entries(matrix)
    p = np.asarray(p, dtype=float)
    if p.shape != (a.shape[0],):
        raise InvalidDistribution(f"p has shape {p.shape}, expected ({a.shape[0]},)")
    if np.any(p < 0.0) or abs(p.sum() - 1.0) > DISTRIBUTION_TOL:
        raise InvalidDistribution("p must be non-negative and sum to 1")
    q = p @ a
    h_y = float(-_xlog2x(q).sum())
    h_y_given_x = float(-(p @ row_log_terms(a)))
    return MutualInformationBreakdown(h_y, h_y_given_x, h_y - h_y_given_x)


def k_vector(matrix, inverse) -> np.ndarray:
    """``K_j = sum_i inv(A)[j, i] * h_i``, the gradient of ``q @ inv(A) @ h``."""
    return _entries(inverse) @ row_log_terms(matrix)


def classify_validity(p_star, guard: float = VALIDITY_GUARD):
    """Return ``(validity, cleaned)`` for a recovered input vector.

    ``cleaned`` is ``p_star`` clipped to ``[0, 1]`` and renormalised when every
    entry lies within ``guard`` of the unit interval, else ``None``.
    """
    p = np.asarray(p_star, dtype=float)
    if np.all(p >= -guard) and np.all(p <= 1.0 + guard):
        cleaned = np.clip(p, 0.0, 1.0)
        return Validity.VALID, cleaned / cleaned.sum()
    return Validity.INVALID_INPUT, None


def solve_closed_form(matrix: TransitionMatrix, inverse: InverseMatrix) -> CapacitySolution:
    a = _entries(matrix)
    inv = _entries(inverse)
    h = row_log_terms(a)
    k = inv @ h
    # nu = log2 sum 2**(K - 1), shifted by max(K) to avoid overflow
    k_max = float(k.max())
    nu = k_max - 1.0 + float(np.log2(np.sum(np.exp2(k - k_max))))
    q = np.exp2(k - nu - 1.0)
    p = inv.T @ q
    validity, cleaned = classify_validity(p)
    if validity is Validity.VALID:
        capacity = mutual_information(a, cleaned).i_xy
        role = CapacityRole.EXACT
    else:
        # -sum q log2 q + p @ h, with p @ h taken as q @ K to skip the
        # ill-conditioned round trip through p; equals log2 sum 2**K
        capacity = float(-_xlog2x(q).sum() + q @ k)
        role = CapacityRole.UPPER_BOUND
    return CapacitySolution(
        params=matrix.params,
        k_vector=k,
        nu_star=nu,
        q_star=q,
        p_star=p,
        capacity_bits=capacity,
        validity=validity,
        capacity_role=role,
        p_clamped=cleaned,
    )


def stationarity_residual(matrix, inverse, solution: CapacitySolution, q=None) -> float:
    """Largest violation of ``nu = K_j - (1 + log2 q_j)`` over ``j``, in bits.

    Evaluated at ``solution.q_star`` unless another output distribution ``q``
    is supplied.
    """
    k = k_vector(matrix, inverse)
    q = solution.q_star if q is None else np.asarray(q, dtype=float)
    with np.errstate(divide="ignore"):
        r = k - (1.0 + np.log2(q)) - solution.nu_star
    return float(np.max(np.abs(r)))
