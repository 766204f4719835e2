"""Pointwise uncertainty for monotone regression.

Credible intervals from a projection posterior, two percentile bootstrap
constructions, and a smoothed residual bootstrap, together with a
deterministic Monte Carlo harness for coverage and conditional-probability
experiments.
"""

__version__ = "0.1.0"

from .binning import (
    BinSummaries,
    bin_index,
    binned_lse,
    choose_num_bins,
    monotone_binned_lse,
    summarize_bins,
)
from .bootstrap import (
    BootstrapDrawSet,
    conditional_prob_below,
    pairs_bootstrap_draw,
    percentile_interval,
    regression_bootstrap_draw,
    sample_regression_bootstrap_values,
)
from .isotonic import (
    CusumDiagram,
    SortedSample,
    StepFunction,
    cusum,
    eval_step,
    isotonic_fit,
    sort_sample,
    step_from_knots,
)
from .posterior import (
    PosteriorParams,
    PriorSpec,
    credible_interval,
    draw_projected_posterior,
    empirical_bayes_sigma2,
    empirical_bayes_zeta,
    posterior_params,
    sample_posterior_coefficients,
)
from .quantiles import order_statistic, quantile_interval
from .simulate import (
    CORRECTED_LEVEL,
    DEFAULT_T_GRID,
    METHODS,
    CoverageReport,
    CoverageRow,
    ScenarioConfig,
    default_regression_fn,
    generate_dataset,
    intervals_for_sample,
    run_conditional_histogram,
    run_coverage,
)
from .smoothed import centered_conditional_prob, smoothed_bootstrap_draw, smoothed_ci
from .smoothing import (
    TRIWEIGHT,
    Bandwidth,
    Kernel,
    centered_residuals,
    kernel_value,
    optimal_bandwidth_constant,
    slse_asymptotic_moments,
    slse_evaluate,
)

__all__ = [
    "__version__",
    "BinSummaries",
    "bin_index",
    "binned_lse",
    "choose_num_bins",
    "monotone_binned_lse",
    "summarize_bins",
    "BootstrapDrawSet",
    "conditional_prob_below",
    "pairs_bootstrap_draw",
    "percentile_interval",
    "regression_bootstrap_draw",
    "sample_regression_bootstrap_values",
    "CusumDiagram",
    "SortedSample",
    "StepFunction",
    "cusum",
    "eval_step",
    "isotonic_fit",
    "sort_sample",
    "step_from_knots",
    "PosteriorParams",
    "PriorSpec",
    "credible_interval",
    "draw_projected_posterior",
    "empirical_bayes_sigma2",
    "empirical_bayes_zeta",
    "posterior_params",
    "sample_posterior_coefficients",
    "order_statistic",
    "quantile_interval",
    "CORRECTED_LEVEL",
    "DEFAULT_T_GRID",
    "METHODS",
    "CoverageReport",
    "CoverageRow",
    "ScenarioConfig",
    "default_regression_fn",
    "generate_dataset",
    "intervals_for_sample",
    "run_conditional_histogram",
    "run_coverage",
    "centered_conditional_prob",
    "smoothed_bootstrap_draw",
    "smoothed_ci",
    "TRIWEIGHT",
    "Bandwidth",
    "Kernel",
    "centered_residuals",
    "kernel_value",
    "optimal_bandwidth_constant",
    "slse_asymptotic_moments",
    "slse_evaluate",
]
