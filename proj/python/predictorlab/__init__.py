"""Finite-past predictor coefficients for stationary processes.

The compiled core computes MA/AR expansions, autocovariances, Durbin-Levinson
and normal-equation predictors, the explicit alternating-projection series,
and the large-n experiments.
"""

from ._core import (
    ArgumentError,
    DegeneracyError,
    DisagreementError,
    Error,
    ModelError,
    ProcessModel,
    RegimeError,
    TruncationError,
    autocov,
    baxter_experiment,
    beta_seq,
    d_vectors,
    dk_scaling_experiment,
    durbin_levinson,
    expand_ar,
    expand_ma,
    finite_predictor,
    fk0,
    hankel_apply,
    infinite_predictor,
    multistep_normal_solve,
    projection_iterates,
    rate_experiment,
    run_cli,
    tail_sum_phi,
)

__all__ = [
    "ArgumentError",
    "DegeneracyError",
    "DisagreementError",
    "Error",
    "ModelError",
    "ProcessModel",
    "RegimeError",
    "TruncationError",
    "autocov",
    "baxter_experiment",
    "beta_seq",
    "d_vectors",
    "dk_scaling_experiment",
    "durbin_levinson",
    "expand_ar",
    "expand_ma",
    "finite_predictor",
    "fk0",
    "hankel_apply",
    "infinite_predictor",
    "multistep_normal_solve",
    "projection_iterates",
    "rate_experiment",
    "run_cli",
    "tail_sum_phi",
]
