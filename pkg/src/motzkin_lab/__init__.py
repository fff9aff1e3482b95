"""Weighted Motzkin path statistics: exact enumeration, generating functions and limit laws."""

from .convergence import (
    ConvergenceReport,
    convergence_report,
    kolmogorov_distance,
    local_law_residual,
    moment_fit,
    rate_estimate,
    tv_distance_geometric,
)
from .gf import Model, base_series, gf_pmf, model_for, model_gf, model_jet
from .laws import (
    Geometric,
    HalfNormal,
    Normal,
    Rayleigh,
    Scaling,
    SchemeInstance,
    SchemeReport,
    builtin_scheme,
    check_scheme,
    predict_law,
)
from .paths import (
    PathFamily,
    Statistic,
    StatisticPMF,
    count_family,
    count_table,
    exhaustive_listing,
    path_statistics,
    pmf_exact,
    pmf_table,
)
from .sampler import SampleConfig, empirical_pmf, empirical_pmfs, sample_walk
from .series import FloatSeries, TruncatedSeries, UJet
from .steps import StepWeights, kernel_roots, new_step_weights, structural_constants, u1_series

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "base_series",
    "builtin_scheme",
    "check_scheme",
    "convergence_report",
    "ConvergenceReport",
    "count_family",
    "count_table",
    "empirical_pmf",
    "empirical_pmfs",
    "exhaustive_listing",
    "FloatSeries",
    "Geometric",
    "gf_pmf",
    "HalfNormal",
    "kernel_roots",
    "kolmogorov_distance",
    "local_law_residual",
    "Model",
    "model_for",
    "model_gf",
    "model_jet",
    "moment_fit",
    "new_step_weights",
    "Normal",
    "path_statistics",
    "PathFamily",
    "pmf_exact",
    "pmf_table",
    "predict_law",
    "rate_estimate",
    "Rayleigh",
    "sample_walk",
    "SampleConfig",
    "Scaling",
    "SchemeInstance",
    "SchemeReport",
    "Statistic",
    "StatisticPMF",
    "StepWeights",
    "structural_constants",
    "TruncatedSeries",
    "tv_distance_geometric",
    "u1_series",
    "UJet",
]
