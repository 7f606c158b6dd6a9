"""Statistics of FBM and Riemann-Liouville FBM with a random Hurst exponent
(FBMRE and RL FBMRE): marginal density, absolute moments, autocovariance,
expected TAMSD, increment second moments, and the two-point asymptotic
expansions of all of them.

Every statistic is a conditional-expectation mixture of the corresponding
fixed-H form over the Hurst model: an exact one- or two-term sum for the
atomic models, a trapezoid rule over the nodes for a tabulated density.
This mirrors how the formulas are derived (condition on H, average), so the
two-point "closed forms" are not separate code paths, just the mixture rule
applied to a two-atom law.

The process mean is taken to be 0 throughout (the Gaussian integral
construction forces it); only second-order quantities carry the random
exponent.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from . import analytic, specfun
from .analytic import ProcessKind, Regime
from .errors import DomainError, UnsupportedModelError
from .hurst import (
    DeterministicHurst,
    HurstModel,
    TabulatedHurst,
    TwoPointHurst,
    mgf,
)


@dataclass(frozen=True)
class ProcessSpec:
    """A process kind together with its Hurst-exponent law."""

    kind: ProcessKind
    hurst: HurstModel

    def __post_init__(self) -> None:
        if not isinstance(self.kind, ProcessKind):
            raise DomainError(f"kind must be a ProcessKind, got {self.kind!r}")
        if not isinstance(
            self.hurst, (DeterministicHurst, TwoPointHurst, TabulatedHurst)
        ):
            raise UnsupportedModelError(
                f"unknown Hurst model {type(self.hurst).__name__}"
            )


class StatKind(enum.Enum):
    """Which second-order statistic a two-point asymptotic expansion targets."""

    SECOND_MOMENT = "second-moment"
    COV = "cov"
    ETAMSD = "etamsd"
    INC_SM = "inc-sm"


@dataclass(frozen=True)
class MixtureStat:
    """A statistic/regime pair selecting one printed two-point asymptote."""

    stat: StatKind
    regime: Regime

    def __post_init__(self) -> None:
        if not isinstance(self.stat, StatKind):
            raise DomainError(f"stat must be a StatKind, got {self.stat!r}")
        if not isinstance(self.regime, Regime):
            raise DomainError(f"regime must be a Regime, got {self.regime!r}")


def _mix(model: HurstModel, f):
    """E[f(H)] under the model; f maps a Hurst value to float or ndarray."""
    if isinstance(model, DeterministicHurst):
        return f(model.value)
    if isinstance(model, TwoPointHurst):
        v1 = f(model.h1)
        v2 = f(model.h2)
        return model.p * v1 + (1.0 - model.p) * v2
    if isinstance(model, TabulatedHurst):
        hs, fs = model._arrays
        vals = np.stack([np.asarray(f(h), dtype=float) for h in hs])
        weighted = vals * fs.reshape((-1,) + (1,) * (vals.ndim - 1))
        out = np.trapezoid(weighted, hs, axis=0)
        return float(out) if out.ndim == 0 else out
    raise UnsupportedModelError(f"unknown Hurst model {type(model).__name__}")


def _power_mean(model: HurstModel, base: float, mult: float) -> float:
    """E[base^(mult H)] = M(mult ln base), with the base = 0 limit equal 0."""
    if base < 0.0:
        raise DomainError(f"needs a nonnegative base, got {base}")
    if base == 0.0:
        return 0.0
    return mgf(model, mult * math.log(base))


def re_pdf(spec: ProcessSpec, x, t: float):
    """Marginal density of the process at time t > 0: a mixture of centered
    Gaussian densities with variance t^(2h).  Identical for both process
    kinds, which share the one-dimensional marginal law.  x may be an array.
    """
    t = float(t)
    if t <= 0.0:
        raise DomainError(f"the marginal density needs t > 0, got {t}")
    x_arr = np.asarray(x, dtype=float)
    scalar = x_arr.ndim == 0

    def component(h: float):
        var = t ** (2.0 * h)
        return np.exp(-x_arr * x_arr / (2.0 * var)) / math.sqrt(2.0 * math.pi * var)

    out = _mix(spec.hurst, component)
    return float(out) if scalar else out


def re_abs_moment(spec: ProcessSpec, q: float, t: float) -> float:
    """E|X(t)|^q = c_q M(q ln t) with c_q = 2^(q/2) Gamma((q+1)/2) / sqrt(pi).

    Shared by both process kinds.  c_2 = 1, so q = 2 gives the plain second
    moment E[t^(2H)].
    """
    q = float(q)
    t = float(t)
    if q <= 0.0:
        raise DomainError(f"moment order must be positive, got {q}")
    if t < 0.0:
        raise DomainError(f"t must be nonnegative, got {t}")
    c_q = 2.0 ** (0.5 * q) * specfun.gamma_fn(0.5 * (q + 1.0)) / math.sqrt(math.pi)
    return c_q * _power_mean(spec.hurst, t, q)


def fbmre_cov(model: HurstModel, t: float, tau: float) -> float:
    """Autocovariance of FBMRE,
    [M(2 ln(t+tau)) + M(2 ln t) - M(2 ln tau)] / 2, the t = 0 term being 0.
    """
    t = float(t)
    tau = float(tau)
    if t < 0.0 or tau <= 0.0:
        raise DomainError("needs t >= 0 and tau > 0")
    return 0.5 * (
        _power_mean(model, t + tau, 2.0)
        + _power_mean(model, t, 2.0)
        - _power_mean(model, tau, 2.0)
    )


def fbmre_etamsd(model: HurstModel, tau: float) -> float:
    """Expected TAMSD of FBMRE, M(2 ln tau): free of the horizon, and equal
    to the increment second moment at every t (stationary increments survive
    the exponent randomization)."""
    tau = float(tau)
    if tau <= 0.0:
        raise DomainError(f"tau must be positive, got {tau}")
    return _power_mean(model, tau, 2.0)


def fbmre_inc_sm(model: HurstModel, t: float, tau: float) -> float:
    """Increment second moment of FBMRE; t-independent, equals fbmre_etamsd."""
    if float(t) < 0.0:
        raise DomainError(f"t must be nonnegative, got {t}")
    return fbmre_etamsd(model, tau)


def rlfbmre_cov(model: HurstModel, t, tau) -> float:
    """Autocovariance of RL FBMRE: the Hurst mixture of rlfbm_cov."""
    return _mix(model, lambda h: analytic.rlfbm_cov(h, t, tau))


def rlfbmre_etamsd(model: HurstModel, tau: float, horizon: float) -> float:
    """Expected TAMSD of RL FBMRE: the Hurst mixture of rlfbm_etamsd."""
    return _mix(model, lambda h: analytic.rlfbm_etamsd(h, tau, horizon))


def rlfbmre_inc_sm(model: HurstModel, t: float, tau: float) -> float:
    """Increment second moment of RL FBMRE: the Hurst mixture of the closed
    fixed-H form."""
    return _mix(model, lambda h: analytic.rlfbm_inc_sm(h, t, tau, form="closed"))


def _require_two_point(model: HurstModel) -> TwoPointHurst:
    if not isinstance(model, TwoPointHurst):
        raise UnsupportedModelError(
            "two-point asymptotics need a TwoPointHurst model, got "
            f"{type(model).__name__}"
        )
    return model


def mixture_asymptotic(
    stat: MixtureStat,
    kind: ProcessKind,
    model: HurstModel,
    t: float | None = None,
    tau: float | None = None,
) -> float:
    """Printed two-point asymptotic expansions, dispatched on (stat, regime,
    kind), all terms included.

    SECOND_MOMENT needs t and ignores kind (both processes share the second
    moment): p t^(2H1) short, (1-p) t^(2H2) long.  COV needs t and tau and
    mixes the fixed-H cov_asymptotic brackets.  ETAMSD needs tau: for FBM
    p tau^(2H1) / (1-p) tau^(2H2); for RL FBM the same with C(H_i) factors.
    INC_SM needs tau and exists in printed form only for RL FBM
    (p tau^(2H1) + (1-p) tau^(2H2) short; the same with C(H_i) factors
    long); the FBM increment second moment is exactly lag-determined, so no
    expansion is printed for it and requesting one raises.
    """
    if not isinstance(stat, MixtureStat):
        raise DomainError(f"stat must be a MixtureStat, got {stat!r}")
    if not isinstance(kind, ProcessKind):
        raise DomainError(f"kind must be a ProcessKind, got {kind!r}")
    m = _require_two_point(model)
    short = stat.regime is Regime.SHORT_RATIO
    p, h1, h2 = m.p, m.h1, m.h2

    if stat.stat is StatKind.SECOND_MOMENT:
        if t is None or t <= 0.0:
            raise DomainError("second-moment asymptote needs t > 0")
        return p * t ** (2.0 * h1) if short else (1.0 - p) * t ** (2.0 * h2)

    if stat.stat is StatKind.COV:
        if t is None or tau is None:
            raise DomainError("covariance asymptote needs both t and tau")
        return p * analytic.cov_asymptotic(kind, h1, t, tau, stat.regime) + (
            1.0 - p
        ) * analytic.cov_asymptotic(kind, h2, t, tau, stat.regime)

    if tau is None or tau <= 0.0:
        raise DomainError(f"{stat.stat.value} asymptote needs tau > 0")
    b1 = tau ** (2.0 * h1)
    b2 = tau ** (2.0 * h2)

    if stat.stat is StatKind.ETAMSD:
        if kind is ProcessKind.FBM:
            return p * b1 if short else (1.0 - p) * b2
        if short:
            return p * analytic.long_ratio_coeff(h1) * b1
        return (1.0 - p) * analytic.long_ratio_coeff(h2) * b2

    # INC_SM
    if kind is ProcessKind.FBM:
        raise DomainError(
            "the FBM increment second moment is exactly M(2 ln tau) at every "
            "t; no asymptotic expansion is defined for it"
        )
    if short:
        return p * b1 + (1.0 - p) * b2
    return p * analytic.long_ratio_coeff(h1) * b1 + (1.0 - p) * analytic.long_ratio_coeff(
        h2
    ) * b2


def eb_plateau(model: HurstModel, tau: float) -> float:
    """Large-horizon limit of the ergodicity-breaking parameter of the FBMRE
    TAMSD at lag tau: M(4 ln tau) / M(2 ln tau)^2 - 1.

    Zero only when the exponent is degenerate; a strictly positive plateau
    is the fingerprint of a genuinely random H (the TAMSD stays random for
    arbitrarily long trajectories).
    """
    tau = float(tau)
    if tau <= 0.0:
        raise DomainError(f"tau must be positive, got {tau}")
    s = 2.0 * math.log(tau)
    first = mgf(model, s)
    return mgf(model, 2.0 * s) / (first * first) - 1.0
