"""Closed-form inverse and capacity of n parallel flipping binary channels."""

from .blahut_arimoto import BAConfig, BAResult, NotConvergedWarning, blahut_arimoto
from .capacity import (
    CapacityRole,
    CapacitySolution,
    InvalidDistribution,
    MutualInformationBreakdown,
    Validity,
    binary_entropy,
    classify_validity,
    k_vector,
    mutual_information,
    solve_closed_form,
    stationarity_residual,
)
from .markov_sim import SimConfig, SimEstimate, simulate_transitions
from .matrix import (
    ChannelParams,
    InverseMatrix,
    NumericallySingular,
    ParameterError,
    SingularAlpha,
    TransitionMatrix,
    build_inverse,
    build_matrix,
    entry,
    numeric_inverse_oracle,
    signed_companion,
)
from .sweep import SweepRecord, run_sweep

__version__ = "0.1.0"
