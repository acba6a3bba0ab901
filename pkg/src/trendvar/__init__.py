"""trendvar: persistence-aware random-walk models of asset prices.

Simulation of sign-persistent walks and their event-time (renewal)
counterpart, closed-form long-run variance laws, persistence estimation
from price series, model-validation tests, and PIT-based forecast
calibration, plus a CSV-centric CLI tying the pieces together.
"""

from ._kernels import BACKEND as KERNEL_BACKEND
from .conditional import (
    ConditionalEmpirical,
    MuTauEstimate,
    build_conditional_empirical,
    estimate_mu_tau,
)
from .errors import DataFormatError, DegeneracyError
from .estimation import (
    IncrementSeries,
    VarianceReport,
    analyze_asset,
    estimate_moments,
    estimate_p,
    extract_increments,
)
from .forecast import (
    CalibrationCurve,
    ForecastDistribution,
    argmin_p,
    forecast_distribution,
    ks_uniform,
    pit,
    sweep_p,
)
from .params import Empirical, MagnitudeModel, Moments, PointMass, SignChainParams
from .rng import RngStream
from .series import PricePath, TickSeries
from .simulate import (
    crw_terminals,
    renewal_terminals,
    semiparametric_terminals,
    simulate_crw,
    simulate_renewal,
    simulate_rw,
    simulate_semiparametric,
)
from .theory import (
    TransitionMatrix2,
    VarianceRate,
    enumerate_variance_oracle,
    exact_variance,
    limiting_variance_rate,
    renewal_limiting_variance,
    sign_autocovariance,
    transition_matrix_n,
    variance_ratio,
)
from .validation import (
    AssetRecord,
    FilterDecision,
    KsResult,
    ValidationReport,
    filter_universe,
    ks_two_sample,
    pearson_corr_test,
    symmetry_test,
    validate_asset,
)

__version__ = "0.1.0"
