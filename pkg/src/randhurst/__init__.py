"""randhurst: exact statistics, simulation, and estimation for fractional
Brownian motion and Riemann-Liouville fractional Brownian motion with fixed
or random Hurst exponent."""

from .analytic import (
    LagTriple,
    ProcessKind,
    Regime,
    cov_asymptotic,
    fbm_cov,
    long_ratio_coeff,
    rlfbm_cov,
    rlfbm_etamsd,
    rlfbm_etamsd_asymptotic,
    rlfbm_inc_sm,
    rlfbm_inc_sm_asymptotic,
)
from .errors import (
    ConfigError,
    ConvergenceError,
    DomainError,
    NonPositiveDefiniteError,
    PoleError,
    UnsupportedModelError,
)
from .hurst import (
    DeterministicHurst,
    HurstModel,
    TabulatedHurst,
    TwoPointHurst,
    mgf,
    model_from_dict,
    model_to_dict,
    pdf_eval,
    sample_h,
)
from .randomized import (
    MixtureStat,
    ProcessSpec,
    StatKind,
    eb_plateau,
    fbmre_cov,
    fbmre_etamsd,
    fbmre_inc_sm,
    mixture_asymptotic,
    re_abs_moment,
    re_pdf,
    rlfbmre_cov,
    rlfbmre_etamsd,
    rlfbmre_inc_sm,
)
from .estimate import (
    StatCurve,
    StatPoint,
    eb_parameter,
    emsd,
    inc_sm_hat,
    mean_tamsd,
    sample_cov,
    tamsd,
)
from .experiment import (
    ENV_OUT,
    ExperimentConfig,
    config_from_dict,
    config_to_dict,
    load_config,
    read_curves,
    resolve_out_dir,
    run_experiment,
    write_curves,
)
from .simulate import (
    Ensemble,
    TimeGrid,
    Trajectory,
    child_rng,
    cov_matrix,
    simulate_ensemble,
    simulate_path,
)
from .specfun import gamma_fn, hyp2f1, ln_gamma
from ._version import __version__

__all__ = [
    "ConfigError",
    "ConvergenceError",
    "DeterministicHurst",
    "DomainError",
    "ENV_OUT",
    "Ensemble",
    "ExperimentConfig",
    "HurstModel",
    "LagTriple",
    "MixtureStat",
    "NonPositiveDefiniteError",
    "PoleError",
    "ProcessKind",
    "ProcessSpec",
    "Regime",
    "StatCurve",
    "StatKind",
    "StatPoint",
    "TabulatedHurst",
    "TimeGrid",
    "Trajectory",
    "TwoPointHurst",
    "UnsupportedModelError",
    "__version__",
    "child_rng",
    "config_from_dict",
    "config_to_dict",
    "cov_asymptotic",
    "cov_matrix",
    "eb_parameter",
    "eb_plateau",
    "emsd",
    "fbm_cov",
    "fbmre_cov",
    "fbmre_etamsd",
    "fbmre_inc_sm",
    "gamma_fn",
    "hyp2f1",
    "inc_sm_hat",
    "ln_gamma",
    "load_config",
    "long_ratio_coeff",
    "mean_tamsd",
    "mgf",
    "mixture_asymptotic",
    "model_from_dict",
    "model_to_dict",
    "pdf_eval",
    "re_abs_moment",
    "re_pdf",
    "read_curves",
    "resolve_out_dir",
    "rlfbm_cov",
    "rlfbm_etamsd",
    "rlfbm_etamsd_asymptotic",
    "rlfbm_inc_sm",
    "rlfbm_inc_sm_asymptotic",
    "rlfbmre_cov",
    "rlfbmre_etamsd",
    "rlfbmre_inc_sm",
    "run_experiment",
    "sample_cov",
    "sample_h",
    "simulate_ensemble",
    "simulate_path",
    "tamsd",
    "write_curves",
]
