"""Self-contained special-function kernel: log-gamma, gamma and the Gauss
hypergeometric function 2F1 on the real line below the branch point z = 1.

The module is written for the parameter families that arise in the covariance
and time-averaged statistics of Riemann-Liouville fractional Brownian motion,

    F(1/2 - H, 1; 3/2 + H; z)          with z = t/(t + tau) in [0, 1),
    F(1/2 + H, 1/2 - H; 5/2 + H; z)    with z = (tau - T)/tau in (-inf, 0],

for Hurst exponents H in (0, 1), but the evaluators accept generic real
parameters whenever the chosen evaluation path is well posed.

Evaluation strategy for hyp2f1:

* |z| <= 0.5           : direct power series.
* -9 <= z < -0.5       : Pfaff transformation w = z/(z-1) in (1/3, 0.9],
                         then the power series in w.
* z < -9               : the 1/z linear-transformation pair of series.  The
                         Pfaff map alone sends z = -1e4 to w = 0.9999, where
                         the series needs several hundred thousand terms to
                         reach a 1e-16 truncation threshold, so very negative
                         arguments go through the 1/z connection instead.
* 0.5 < z < 1          : Pfaff first (w < -1), then the 1/w connection on the
                         transformed series.  This also covers z -> 1-, where
                         the direct series stalls for small H.

Series are truncated when a term falls below 1e-16 of the partial sum, with a
hard cap of 1e5 terms; hitting the cap raises ConvergenceError.  The linear
connection formulas require the relevant parameter differences to stay away
from integers; the degenerate in-scope cases (H = 1/2) all reduce to a unit
upper parameter of zero and return exactly 1 before any transformation.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import ConvergenceError, DomainError, PoleError

# Truncation control for all hypergeometric series in this module.
SERIES_RTOL = 1e-16
MAX_TERMS = 100_000

# Lanczos approximation, g = 7, 9 coefficients.  Standard published set,
# relative error of the rational part is a few ulps over x > 0.5.
_LANCZOS_G = 7.0
_LANCZOS_COEF = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)

_LN_SQRT_TWO_PI = 0.9189385332046727417803297364


def _sinpi(x: float) -> float:
    """sin(pi*x) with argument reduction, exact zeros at integers."""
    r = x - math.floor(x)
    if r == 0.0:
        return 0.0
    # exploit sin(pi(1-r)) = sin(pi r) to keep the argument small
    if r > 0.5:
        r = 1.0 - r
        return math.sin(math.pi * r) if (math.floor(x) % 2 == 0) else -math.sin(math.pi * r)
    s = math.sin(math.pi * r)
    return s if (math.floor(x) % 2 == 0) else -s


def _is_nonpositive_integer(x: float) -> bool:
    return x <= 0.0 and x == math.floor(x)


def _lanczos_lngamma(x: float) -> float:
    # valid for x >= 0.5
    acc = _LANCZOS_COEF[0]
    for i in range(1, len(_LANCZOS_COEF)):
        acc += _LANCZOS_COEF[i] / (x - 1.0 + i)
    t = x + _LANCZOS_G - 0.5
    return _LN_SQRT_TWO_PI + (x - 0.5) * math.log(t) - t + math.log(acc)


def ln_gamma(x: float) -> float:
    """Natural log of |Gamma(x)| for real non-pole x.

    Parameters
    ----------
    x : float
        Any real number except 0, -1, -2, ...

    Returns
    -------
    float
        log(Gamma(x)) for x > 0; log(|Gamma(x)|) for negative non-integer x
        (the reflection formula is applied there).

    Raises
    ------
    PoleError
        If x is zero or a negative integer.
    """
    x = float(x)
    if _is_nonpositive_integer(x):
        raise PoleError(f"ln_gamma pole at x = {x}")
    if x >= 0.5:
        return _lanczos_lngamma(x)
    # reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x)
    return math.log(math.pi) - math.log(abs(_sinpi(x))) - _lanczos_lngamma(1.0 - x)


def gamma_fn(x: float) -> float:
    """Gamma(x) for real non-pole x, including the sign for x < 0.

    Raises
    ------
    PoleError
        If x is zero or a negative integer.
    """
    x = float(x)
    if _is_nonpositive_integer(x):
        raise PoleError(f"gamma pole at x = {x}")
    if x >= 0.5:
        acc = _LANCZOS_COEF[0]
        for i in range(1, len(_LANCZOS_COEF)):
            acc += _LANCZOS_COEF[i] / (x - 1.0 + i)
        t = x + _LANCZOS_G - 0.5
        return math.sqrt(2.0 * math.pi) * t ** (x - 0.5) * math.exp(-t) * acc
    # reflection keeps the sign: Gamma(x) = pi / (sin(pi x) Gamma(1 - x))
    return math.pi / (_sinpi(x) * gamma_fn(1.0 - x))


def _reciprocal_gamma(x: float) -> float:
    """1/Gamma(x); zero at the poles of Gamma."""
    if _is_nonpositive_integer(x):
        return 0.0
    return 1.0 / gamma_fn(x)


def _series(a: float, b: float, c: float, z: float) -> float:
    """Direct power series sum_k (a)_k (b)_k / ((c)_k k!) z^k.

    Terminates early when an exact zero Pochhammer factor makes the series a
    polynomial.  Raises ConvergenceError at the term cap.
    """
    s = 1.0
    term = 1.0
    for k in range(MAX_TERMS):
        term *= (a + k) * (b + k) / ((c + k) * (1.0 + k)) * z
        if term == 0.0:
            return s
        s += term
        if abs(term) <= SERIES_RTOL * abs(s):
            return s
    raise ConvergenceError(
        f"hypergeometric series did not converge in {MAX_TERMS} terms "
        f"(a={a}, b={b}, c={c}, z={z})"
    )


def _connection_large_negative(a: float, b: float, c: float, z: float) -> float:
    """F(a,b;c;z) for z < -1 via the 1/z linear transformation.

    Requires b - a to be non-integer; the two gamma prefactors otherwise sit
    on poles that must cancel between the terms, which a float evaluation
    cannot do.
    """
    diff = b - a
    if abs(diff - round(diff)) < 1e-8:
        raise ConvergenceError(
            f"1/z connection degenerate: b - a = {diff} is (near-)integer "
            f"(a={a}, b={b}, c={c}, z={z})"
        )
    t1 = 0.0
    coef1 = gamma_fn(c) * gamma_fn(b - a) * _reciprocal_gamma(b) * _reciprocal_gamma(c - a)
    if coef1 != 0.0:
        t1 = coef1 * (-z) ** (-a) * _series(a, a - c + 1.0, a - b + 1.0, 1.0 / z)
    t2 = 0.0
    coef2 = gamma_fn(c) * gamma_fn(a - b) * _reciprocal_gamma(a) * _reciprocal_gamma(c - b)
    if coef2 != 0.0:
        t2 = coef2 * (-z) ** (-b) * _series(b, b - c + 1.0, b - a + 1.0, 1.0 / z)
    return t1 + t2


def hyp2f1(a: float, b: float, c: float, z: float) -> float:
    """Gauss hypergeometric function 2F1(a, b; c; z) for real z < 1.

    Parameters
    ----------
    a, b, c : float
        Real parameters.  c must not be zero or a negative integer.
    z : float
        Real argument, z < 1.

    Returns
    -------
    float

    Raises
    ------
    DomainError
        If z >= 1 or c is a nonpositive integer.
    ConvergenceError
        If a series hits the term cap, or a linear-transformation branch is
        degenerate for these parameters.

    Notes
    -----
    Branch layout and truncation rules are described in the module docstring.
    For terms that are eventually monotonically decreasing the truncation
    error is bounded by the first neglected term, which the 1e-16 relative
    threshold keeps far below the 1e-10 accuracy target of this module.
    """
    a = float(a)
    b = float(b)
    c = float(c)
    z = float(z)
    if _is_nonpositive_integer(c):
        raise DomainError(f"hyp2f1 undefined for c = {c} (nonpositive integer)")
    if z >= 1.0:
        raise DomainError(f"hyp2f1 requires z < 1, got z = {z}")
    if a == 0.0 or b == 0.0 or z == 0.0:
        return 1.0
    if abs(z) <= 0.5:
        return _series(a, b, c, z)
    if z < 0.0:
        if z >= -9.0:
            # Pfaff; keep the smaller upper parameter so the transformed
            # terms decay like k^(-|a-b|-1) w^k
            lo, hi = (a, b) if a <= b else (b, a)
            w = z / (z - 1.0)
            return (1.0 - z) ** (-lo) * _series(lo, c - hi, c, w)
        return _connection_large_negative(a, b, c, z)
    # 0.5 < z < 1: Pfaff sends z to w < -1, then the 1/w connection applies
    w = z / (z - 1.0)
    return (1.0 - z) ** (-a) * _connection_large_negative(a, c - b, c, w)


def hyp2f1_b1(a: float, c: float, z: np.ndarray | float):
    """Vectorized 2F1(a, 1; c; z) for z in [0, 1).

    This is the covariance parameter family of the Riemann-Liouville process
    evaluated over grids of z = t/(t + tau); simulation covariance matrices
    call it with ~1e6 arguments at once.

    For z <= 0.6 the direct series is summed for all elements together.  For
    z > 0.6 the unit upper parameter collapses the second 1/w-connection
    series to a single closed term:

        F(a, 1; c; z) = K1 z^(-a) F(a, a-c+1; a-c+2; (z-1)/z)
                        + K2 z^(1-c) (1-z)^(c-1-a),
        K1 = Gamma(c) Gamma(c-1-a) / (Gamma(c-1) Gamma(c-a)),
        K2 = Gamma(c) Gamma(a-c+1) / Gamma(a),

    with (z-1)/z in (-2/3, 0), so both branches converge in under ~200 terms.

    Parameters
    ----------
    a, c : float
        Parameters; c - 1 - a must not be an integer <= 0 (for the in-scope
        family a = 1/2 - H, c = 3/2 + H this means H != 1/2, and the H = 1/2
        case short-circuits to 1 via a = 0).
    z : array_like
        Values in [0, 1).

    Returns
    -------
    numpy.ndarray or float
        Same shape as z (scalar in, scalar out).
    """
    zarr = np.asarray(z, dtype=float)
    scalar = zarr.ndim == 0
    zarr = np.atleast_1d(zarr)
    if np.any(zarr < 0.0) or np.any(zarr >= 1.0):
        raise DomainError("hyp2f1_b1 requires 0 <= z < 1")
    if a == 0.0:
        out = np.ones_like(zarr)
        return float(out[0]) if scalar else out

    out = np.empty_like(zarr)
    lo = zarr <= 0.6
    if np.any(lo):
        zz = zarr[lo]
        s = np.ones_like(zz)
        term = np.ones_like(zz)
        for k in range(MAX_TERMS):
            term = term * ((a + k) / (c + k)) * zz
            s += term
            if np.max(np.abs(term)) <= SERIES_RTOL * np.min(np.abs(s)):
                break
        else:
            raise ConvergenceError("hyp2f1_b1 direct series hit the term cap")
        out[lo] = s
    hi = ~lo
    if np.any(hi):
        d = c - 1.0 - a
        if _is_nonpositive_integer(d):
            raise ConvergenceError(
                f"hyp2f1_b1 connection degenerate: c - 1 - a = {d}"
            )
        zz = zarr[hi]
        u = (zz - 1.0) / zz
        k1 = gamma_fn(c) * gamma_fn(d) * _reciprocal_gamma(c - 1.0) * _reciprocal_gamma(c - a)
        k2 = gamma_fn(c) * gamma_fn(a - c + 1.0) * _reciprocal_gamma(a)
        b2 = a - c + 1.0
        c2 = a - c + 2.0
        s = np.ones_like(zz)
        term = np.ones_like(zz)
        for k in range(MAX_TERMS):
            term = term * ((a + k) * (b2 + k) / ((c2 + k) * (1.0 + k))) * u
            s += term
            if np.max(np.abs(term)) <= SERIES_RTOL * np.min(np.abs(s)):
                break
        else:
            raise ConvergenceError("hyp2f1_b1 connection series hit the term cap")
        out[hi] = k1 * zz ** (-a) * s + k2 * zz ** (1.0 - c) * (1.0 - zz) ** d
    return float(out[0]) if scalar else out
