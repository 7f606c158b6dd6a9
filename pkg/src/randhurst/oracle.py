"""Independent reference implementations used to validate the closed forms.

Nothing in this module shares code with the main formula paths: the
hypergeometric reference is a compensated direct summation, log-gamma uses a
shifted Stirling series instead of Lanczos, and the process statistics are
obtained by adaptive quadrature of their defining integrals.  The only
deliberate exception is quad_etamsd, which averages the kernel-form increment
second moment (itself quadrature-based, not hypergeometric) over the window.

Tolerances here are at least ten times tighter than the acceptance tolerances
they back.
"""

from __future__ import annotations

import math
import warnings

from scipy import integrate

from .errors import ConvergenceError, DomainError, PoleError

# quadrature targets
_COV_EPS = 1e-12      # quad_ito_cov
_I_EPS = 1e-12        # quad_I
_ETAMSD_EPS = 1e-10   # outer average in quad_etamsd

_REF_MAX_TERMS = 5_000_000

# Bernoulli-number coefficients B_2n / (2n (2n-1)) of the Stirling series.
_STIRLING_COEF = (
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
)


def ln_gamma_ref(x: float) -> float:
    """log |Gamma(x)| from the shifted Stirling (de Moivre) series.

    Independent of the Lanczos evaluation in specfun: the argument is raised
    above 20 by the recurrence Gamma(x+1) = x Gamma(x), where the asymptotic
    series with eight Bernoulli terms is accurate to well below 1e-15.
    """
    x = float(x)
    if x <= 0.0 and x == math.floor(x):
        raise PoleError(f"ln_gamma_ref pole at x = {x}")
    if x < 0.5:
        # reflection; |sin(pi x)| via reduced argument
        r = x - math.floor(x)
        s = math.sin(math.pi * r)
        return math.log(math.pi) - math.log(abs(s)) - ln_gamma_ref(1.0 - x)
    shift = 0.0
    while x < 20.0:
        shift -= math.log(x)
        x += 1.0
    inv = 1.0 / x
    inv2 = inv * inv
    corr = 0.0
    p = inv
    for cn in _STIRLING_COEF:
        corr += cn * p
        p *= inv2
    return shift + (x - 0.5) * math.log(x) - x + 0.5 * math.log(2.0 * math.pi) + corr


def series_2f1_ref(a: float, b: float, c: float, z: float) -> float:
    """2F1(a, b; c; z) by compensated (Kahan) summation of the power series.

    For z < 0 the Pfaff map w = z/(z-1) is applied first, retaining the
    smaller upper parameter so the transformed terms decay fastest.  The sum
    runs to machine-precision stagnation with no fixed term budget below
    5e6; mapped arguments with w very close to 1 (z below about -1e4) are
    slow but still reach ~1e-12 truncation levels.

    This function is intentionally a single plain summation: it exists to
    check the branch logic of the main evaluator, so it must not contain any
    of that branch logic itself (beyond the one Pfaff map).
    """
    a = float(a)
    b = float(b)
    c = float(c)
    z = float(z)
    if c <= 0.0 and c == math.floor(c):
        raise DomainError(f"series_2f1_ref undefined for c = {c}")
    if z >= 1.0:
        raise DomainError(f"series_2f1_ref requires z < 1, got {z}")
    prefactor = 1.0
    if z < 0.0:
        lo, hi = (a, b) if a <= b else (b, a)
        prefactor = (1.0 - z) ** (-lo)
        a, b = lo, c - hi
        z = z / (z - 1.0)

    total = 1.0
    comp = 0.0
    term = 1.0
    stale = 0
    for k in range(_REF_MAX_TERMS):
        term *= (a + k) * (b + k) / ((c + k) * (1.0 + k)) * z
        if term == 0.0:
            break
        y = term - comp
        t = total + y
        comp = (t - total) - y
        total = t
        if abs(term) <= 1e-16 * abs(total):
            stale += 1
            if stale >= 2:
                break
        else:
            stale = 0
    else:
        raise ConvergenceError(
            f"series_2f1_ref stagnation not reached (a={a}, b={b}, c={c}, z={z})"
        )
    return prefactor * total


def _quad(fn, lo: float, hi: float, eps: float, **kw) -> float:
    with warnings.catch_warnings():
        warnings.simplefilter("error", integrate.IntegrationWarning)
        try:
            val, _ = integrate.quad(fn, lo, hi, epsabs=eps, epsrel=eps, limit=800, **kw)
        except integrate.IntegrationWarning as exc:  # pragma: no cover - defensive
            raise ConvergenceError(f"quadrature failed on [{lo}, {hi}]: {exc}") from exc
    return val


def quad_ito_cov(h: float, t: float, tau: float) -> float:
    """Covariance of the Riemann-Liouville process by the Ito isometry,

        Cov(t, t+tau) = 2H int_0^t (t-s)^(H-1/2) (t+tau-s)^(H-1/2) ds,

    evaluated by adaptive quadrature.  For H < 1/2 the substitution
    s = t - v^(1/(H+1/2)) removes the endpoint singularity exactly.
    """
    if not 0.0 < h < 1.0:
        raise DomainError(f"Hurst exponent out of (0,1): {h}")
    if t < 0.0 or tau < 0.0:
        raise DomainError("t and tau must be nonnegative")
    if t == 0.0:
        return 0.0
    if h < 0.5:
        p = h + 0.5
        ip = 1.0 / p
        val = _quad(lambda v: (tau + v ** ip) ** (h - 0.5), 0.0, t ** p, _COV_EPS)
        return 2.0 * h * val / p
    val = _quad(lambda u: u ** (h - 0.5) * (tau + u) ** (h - 0.5), 0.0, t, _COV_EPS)
    return 2.0 * h * val


def quad_I(t: float, tau: float, h: float) -> float:
    """int_0^(t/tau) ((1+u)^(H-1/2) - u^(H-1/2))^2 du by adaptive quadrature.

    The integrand behaves like u^(2H-1) at the origin.  A power substitution
    u = v^m with m = max(2, ceil(1/(2H))) makes the transformed integrand
    bounded for every H in (0, 1/2); plain u = v^2 only does so for H >= 1/4.
    The slowly decaying tail beyond u = 1 is integrated in log space.
    """
    if not 0.0 < h < 1.0:
        raise DomainError(f"Hurst exponent out of (0,1): {h}")
    if tau <= 0.0 or t < 0.0:
        raise DomainError("requires tau > 0 and t >= 0")
    big = t / tau
    if big == 0.0 or h == 0.5:
        return 0.0

    def f(u: float) -> float:
        return ((1.0 + u) ** (h - 0.5) - u ** (h - 0.5)) ** 2

    head = min(1.0, big)
    if h < 0.5:
        m = max(2, math.ceil(1.0 / (2.0 * h)))
        total = _quad(lambda v: f(v ** m) * m * v ** (m - 1), 0.0, head ** (1.0 / m), _I_EPS)
    else:
        total = _quad(f, 0.0, head, _I_EPS)
    if big > 1.0:
        total += _quad(lambda x: f(math.exp(x)) * math.exp(x), 0.0, math.log(big), _I_EPS)
    return total


def quad_etamsd(h: float, tau: float, horizon: float) -> float:
    """Expected time-averaged MSD of the Riemann-Liouville process,

        (1/(T-tau)) int_0^(T-tau) E[(B(t+tau) - B(t))^2] dt,

    with the inner expectation taken from the kernel-form increment second
    moment (quadrature, not hypergeometric), so the closed form under test
    contributes nothing to this number.
    """
    if not 0.0 < h < 1.0:
        raise DomainError(f"Hurst exponent out of (0,1): {h}")
    if not 0.0 < tau < horizon:
        raise DomainError("requires 0 < tau < horizon")
    from .analytic import rlfbm_inc_sm

    top = horizon - tau
    pts = [p * tau for p in (1.0, 10.0, 100.0, 1000.0) if p * tau < top]
    val = _quad(
        lambda t: rlfbm_inc_sm(h, t, tau, form="kernel"),
        0.0,
        top,
        _ETAMSD_EPS,
        points=pts or None,
    )
    return val / top
