"""Closed-form statistics of fractional Brownian motion (FBM) and of the
Riemann-Liouville fractional Brownian motion (RL FBM) at a fixed Hurst
exponent H in (0, 1):

* autocovariances Cov(B(t), B(t+tau)) for both processes,
* the second moment of the lag-tau increment process of RL FBM, in a
  hypergeometric closed form and in an integral (kernel) form,
* the expected time-averaged mean squared displacement (TAMSD) of RL FBM
  over a horizon T,
* the short- and long-ratio asymptotic expansions of all of the above.

Asymptotic operations return the full printed multi-term expansions, not
just the leading order: the leading term alone is visibly off at ratio
1e-2 while the three-term brackets track the exact curves to a fraction
of a percent, which is what the figure presets rely on.

H = 1/2 is Brownian motion and is special-cased exactly everywhere the
general expressions have removable singularities: covariance min(t, t+tau),
increment second moment tau, TAMSD tau.

Scalar arguments give float results; fbm_cov, rlfbm_cov and cov_asymptotic
also broadcast over numpy arrays (covariance-matrix assembly feeds ~1e6
points at once).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from . import specfun
from .errors import ConvergenceError, DomainError

# kernel-form quadrature target; keeps the 1e-8 closed/kernel cross-check
# two orders of margin
KERNEL_QUAD_TOL = 1e-10


class ProcessKind(enum.Enum):
    """The two Gaussian processes covered by this library."""

    FBM = "fbm"
    RLFBM = "rlfbm"


class Regime(enum.Enum):
    """Which side of the time-to-lag ratio an asymptotic expansion targets.

    SHORT_RATIO means t/tau << 1 (or tau << 1 where the expansion is in tau
    alone); LONG_RATIO is the opposite limit.
    """

    SHORT_RATIO = "short"
    LONG_RATIO = "long"


@dataclass(frozen=True)
class LagTriple:
    """A (time, lag, horizon) bundle with the usual ordering constraints."""

    t: float
    tau: float
    horizon: float | None = None

    def __post_init__(self) -> None:
        if self.t < 0.0:
            raise DomainError(f"t must be nonnegative, got {self.t}")
        if self.tau <= 0.0:
            raise DomainError(f"tau must be positive, got {self.tau}")
        if self.horizon is not None and not self.tau < self.horizon:
            raise DomainError(
                f"horizon must exceed tau, got tau={self.tau}, horizon={self.horizon}"
            )


def _check_hurst(h: float) -> float:
    h = float(h)
    if not 0.0 < h < 1.0 or not math.isfinite(h):
        raise DomainError(f"Hurst exponent must lie in (0, 1), got {h}")
    return h


def _as_float_array(name: str, x, minimum: float = 0.0):
    arr = np.asarray(x, dtype=float)
    if np.any(arr < minimum) or not np.all(np.isfinite(arr)):
        kind = "nonnegative" if minimum == 0.0 else f">= {minimum}"
        raise DomainError(f"{name} must be finite and {kind}")
    return arr


def long_ratio_coeff(h: float) -> float:
    """C(H) = 2H Gamma(1/2+H)^2 / (Gamma(1+2H) sin(pi H)).

    The constant relating the long-ratio RL FBM statistics to tau^(2H):
    both the TAMSD expectation for T/tau >> 1 and the increment second
    moment for t/tau >> 1 approach C(H) tau^(2H).  C(1/2) = 1.
    """
    h = _check_hurst(h)
    g = specfun.gamma_fn(0.5 + h)
    return 2.0 * h * g * g / (specfun.gamma_fn(1.0 + 2.0 * h) * math.sin(math.pi * h))


def fbm_cov(h: float, t, tau):
    """Cov(B_H(t), B_H(t+tau)) = (|t+tau|^2H + |t|^2H - |tau|^2H) / 2."""
    h = _check_hurst(h)
    t_arr = _as_float_array("t", t)
    tau_arr = _as_float_array("tau", tau)
    e = 2.0 * h
    out = 0.5 * ((t_arr + tau_arr) ** e + t_arr**e - tau_arr**e)
    if out.ndim == 0:
        return float(out)
    return out


def rlfbm_cov(h: float, t, tau):
    """Autocovariance Cov(B*(t), B*(t+tau)) of the Riemann-Liouville process,

        [2H (t+tau)^(H-1/2) t^(H+1/2) / (H+1/2)] * 2F1(1/2-H, 1; 3/2+H; z),

    with z = t/(t+tau).  Boundary values by continuity: 0 at t = 0 and the
    variance t^(2H) at tau = 0.  H = 1/2 returns t exactly.
    """
    h = _check_hurst(h)
    t_arr = _as_float_array("t", t)
    tau_arr = _as_float_array("tau", tau)
    scalar = t_arr.ndim == 0 and tau_arr.ndim == 0
    if h == 0.5:
        out = np.broadcast_arrays(t_arr, tau_arr)[0].astype(float).copy()
        return float(out) if scalar else out

    if scalar:
        tv = float(t_arr)
        tauv = float(tau_arr)
        if tv == 0.0:
            return 0.0
        if tauv == 0.0:
            return tv ** (2.0 * h)
        z = tv / (tv + tauv)
        f = specfun.hyp2f1(0.5 - h, 1.0, 1.5 + h, z)
        pref = 2.0 * h / (h + 0.5) * (tv + tauv) ** (h - 0.5) * tv ** (h + 0.5)
        return pref * f

    t_b, tau_b = np.broadcast_arrays(t_arr, tau_arr)
    out = np.zeros(t_b.shape, dtype=float)
    pos = t_b > 0.0
    zero_lag = pos & (tau_b == 0.0)
    out[zero_lag] = t_b[zero_lag] ** (2.0 * h)
    body = pos & (tau_b > 0.0)
    if np.any(body):
        tv = t_b[body]
        tauv = tau_b[body]
        z = tv / (tv + tauv)
        f = specfun.hyp2f1_b1(0.5 - h, 1.5 + h, z)
        out[body] = 2.0 * h / (h + 0.5) * (tv + tauv) ** (h - 0.5) * tv ** (h + 0.5) * f
    return out


def _increment_integral(big: float, h: float) -> float:
    """I = int_0^big ((1+u)^(H-1/2) - u^(H-1/2))^2 du by adaptive quadrature.

    The integrand has an integrable u^(2H-1) singularity at the origin when
    H < 1/2; substituting u = v^m with m = max(2, ceil(1/(2H))) makes the
    transformed integrand bounded there for every H in (0, 1).  (Plain
    u = v^2 suffices only for H >= 1/4.)  The tail beyond u = 1 decays like
    u^(2H-3) and is integrated after the substitution u = e^x to compress
    the horizon, which can reach t/tau ~ 1e6.
    """

    def f(u: float) -> float:
        d = (1.0 + u) ** (h - 0.5) - u ** (h - 0.5)
        return d * d

    def q(fn, lo, hi):
        val, err = integrate.quad(
            fn, lo, hi, epsabs=KERNEL_QUAD_TOL, epsrel=KERNEL_QUAD_TOL, limit=400
        )
        if not math.isfinite(val):
            raise ConvergenceError("increment-integral quadrature diverged")
        return val

    head = min(1.0, big)
    if h < 0.5:
        m = max(2, math.ceil(1.0 / (2.0 * h)))
        total = q(lambda v: f(v**m) * m * v ** (m - 1), 0.0, head ** (1.0 / m))
    else:
        total = q(f, 0.0, head)
    if big > 1.0:
        total += q(lambda x: f(math.exp(x)) * math.exp(x), 0.0, math.log(big))
    return total


def rlfbm_inc_sm(h: float, t: float, tau: float, form: str = "closed") -> float:
    """Second moment of the lag-tau increment of the Riemann-Liouville
    process at time t, E[(B*(t+tau) - B*(t))^2].

    form="closed" evaluates (t+tau)^2H + t^2H - 2 Cov(t, t+tau) with the
    hypergeometric covariance; form="kernel" evaluates the integral
    representation 2H tau^2H (I(t/tau; H) + 1/(2H)) by quadrature.  The two
    agree to well below 1e-8 relative, which the verification suite checks.

    H = 1/2 returns tau exactly, and t = 0 returns tau^2H exactly (the
    increment from the origin is B*(tau) itself).
    """
    h = _check_hurst(h)
    t = float(t)
    tau = float(tau)
    if t < 0.0:
        raise DomainError(f"t must be nonnegative, got {t}")
    if tau <= 0.0:
        raise DomainError(f"tau must be positive, got {tau}")
    if form not in ("closed", "kernel"):
        raise DomainError(f"form must be 'closed' or 'kernel', got {form!r}")
    if h == 0.5:
        return tau
    if t == 0.0:
        return tau ** (2.0 * h)
    if form == "closed":
        e = 2.0 * h
        return (t + tau) ** e + t**e - 2.0 * rlfbm_cov(h, t, tau)
    i_val = _increment_integral(t / tau, h)
    return 2.0 * h * tau ** (2.0 * h) * (i_val + 0.5 / h)


def rlfbm_etamsd(h: float, tau: float, horizon: float) -> float:
    """Expected TAMSD of the Riemann-Liouville process at lag tau over a
    trajectory of length T = horizon,

        (T^(2H+1) - tau^(2H+1)) / ((2H+1)(T - tau))
        + (T - tau)^2H / (2H+1)
        - [4H / ((H+1/2)(H+3/2))] (T-tau)^(H+1/2) tau^(H-1/2)
          * 2F1(1/2+H, 1/2-H; 5/2+H; (tau-T)/tau).

    The hypergeometric argument is large negative (1 - T/tau), which the
    evaluator handles through its linear-transformation branches.  H = 1/2
    returns tau exactly.
    """
    h = _check_hurst(h)
    tau = float(tau)
    horizon = float(horizon)
    if not 0.0 < tau < horizon:
        raise DomainError(f"requires 0 < tau < horizon, got tau={tau}, horizon={horizon}")
    if h == 0.5:
        return tau
    e = 2.0 * h
    t1 = (horizon ** (e + 1.0) - tau ** (e + 1.0)) / ((e + 1.0) * (horizon - tau))
    t2 = (horizon - tau) ** e / (e + 1.0)
    f = specfun.hyp2f1(0.5 + h, 0.5 - h, 2.5 + h, (tau - horizon) / tau)
    t3 = (
        4.0 * h / ((h + 0.5) * (h + 1.5))
        * (horizon - tau) ** (h + 0.5)
        * tau ** (h - 0.5)
        * f
    )
    return t1 + t2 - t3


def cov_asymptotic(kind: ProcessKind, h: float, t, tau, regime: Regime):
    """Multi-term asymptotic expansion of the autocovariance.

    All four printed three-term brackets, by (kind, regime); x = t/tau:

    FBM, short ratio:    tau^2H (2H x + x^2H + H(2H-1) x^2) / 2
    FBM, long ratio:     t^2H (2 + 2H/x - (1/x)^2H + H(2H-1)/x^2) / 2
    RL FBM, short ratio: tau^2H x^(H+1/2) (2H/(1/2+H) - [2H(1/2-H)/(3/2+H)] x
                         + [H(1/2-H)(3/2-H)/(5/2+H)] x^2)
    RL FBM, long ratio:  t^2H (2 + 2H/x - C(H)(1/x)^2H + H(2H-1)/x^2) / 2

    The long-ratio brackets of the two kinds differ only in the coefficient
    of the (tau/t)^2H term (1 versus C(H)); both carry the leading 1/2 and
    both were checked against the exact covariances, so the expansions are
    used exactly as printed.  Only positivity of t and tau is enforced;
    supplying a regime inconsistent with the actual ratio is the caller's
    lookout.
    """
    h = _check_hurst(h)
    if not isinstance(kind, ProcessKind):
        raise DomainError(f"kind must be a ProcessKind, got {kind!r}")
    if not isinstance(regime, Regime):
        raise DomainError(f"regime must be a Regime, got {regime!r}")
    t_arr = _as_float_array("t", t)
    tau_arr = _as_float_array("tau", tau)
    if np.any(t_arr <= 0.0) or np.any(tau_arr <= 0.0):
        raise DomainError("asymptotic expansions need t > 0 and tau > 0")
    scalar = t_arr.ndim == 0 and tau_arr.ndim == 0
    e = 2.0 * h

    if regime is Regime.SHORT_RATIO:
        x = t_arr / tau_arr
        if kind is ProcessKind.FBM:
            out = 0.5 * tau_arr**e * (e * x + x**e + h * (e - 1.0) * x * x)
        else:
            c0 = 2.0 * h / (0.5 + h)
            c1 = 2.0 * h * (0.5 - h) / (1.5 + h)
            c2 = h * (0.5 - h) * (1.5 - h) / (2.5 + h)
            out = tau_arr**e * x ** (h + 0.5) * (c0 - c1 * x + c2 * x * x)
    else:
        y = tau_arr / t_arr
        c = 1.0 if kind is ProcessKind.FBM else long_ratio_coeff(h)
        out = 0.5 * t_arr**e * (2.0 + e * y - c * y**e + h * (e - 1.0) * y * y)
    return float(out) if scalar else out


def rlfbm_etamsd_asymptotic(h: float, tau: float) -> float:
    """Long-horizon (T/tau >> 1) TAMSD asymptote C(H) tau^(2H) of the
    Riemann-Liouville process."""
    h = _check_hurst(h)
    tau = float(tau)
    if tau <= 0.0:
        raise DomainError(f"tau must be positive, got {tau}")
    return long_ratio_coeff(h) * tau ** (2.0 * h)


def rlfbm_inc_sm_asymptotic(h: float, tau: float, regime: Regime) -> float:
    """Asymptotic increment second moment of the Riemann-Liouville process:
    tau^(2H) for t/tau << 1 and C(H) tau^(2H) for t/tau >> 1."""
    h = _check_hurst(h)
    tau = float(tau)
    if tau <= 0.0:
        raise DomainError(f"tau must be positive, got {tau}")
    if not isinstance(regime, Regime):
        raise DomainError(f"regime must be a Regime, got {regime!r}")
    base = tau ** (2.0 * h)
    if regime is Regime.SHORT_RATIO:
        return base
    return long_ratio_coeff(h) * base
