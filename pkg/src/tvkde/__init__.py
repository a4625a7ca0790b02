"""Time-varying kernel density estimation with PIT-based parameter
selection, divergence tracking, and Monte Carlo significance bands."""

from .bands import ConfidenceBands, NullSimConfig, confidence_bands, simulate_null_paths
from .data import PriceSeries, ReturnSeries, load_prices, resolve_t0, to_returns
from .divergence import (
    DIVERGENCE_KINDS,
    DivergenceSeries,
    GriddedDistribution,
    divergence_series,
    hellinger,
    kl_divergence,
    ks_distance,
    peak_date,
    wasserstein1,
)
from .dynamic_density import (
    DynamicDensity,
    StaticDensity,
    default_grid,
    exact_weights,
    init_dynamic,
    static_pdf_cdf,
)
from .errors import DataError, GridError, ParameterError, SelectionError, TvkdeError
from .kernels import EPANECHNIKOV, GAUSSIAN, KernelSpec, kernel_by_name, kernel_cdf, kernel_eval
from .pit import CriterionConfig, PitSeries, compute_pits, d_nu, d_nu_alt, ks_lagged, ks_uniform
from .selection import SelectionProblem, SelectionResult, objective, select, select_static
from .simstudy import (
    CauchyStudyConfig,
    ComparisonReport,
    run_method_comparison,
    run_static_comparison,
    sample_cauchy_path,
    true_density_on_grid,
)

__version__ = "0.1.0"
