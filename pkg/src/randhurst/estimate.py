"""Trajectory statistics: time-averaged MSD, ensemble MSD, increment second
moments, sample autocovariance, and the ergodicity-breaking parameter.

All reductions use fixed summation order (plain numpy folds over arrays laid
out by trajectory index), so repeated runs over the same ensemble reproduce
results bit for bit.  Standard errors are plain ensemble standard deviations
over sqrt(N), reported per abscissa with no cross-lag correction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError
from .simulate import Ensemble, Trajectory


@dataclass(frozen=True)
class StatPoint:
    """One (abscissa, value, standard error) triple; stderr is None for
    exact curves (analytic overlays)."""

    abscissa: float
    value: float
    stderr: float | None = None

    def __post_init__(self) -> None:
        if self.stderr is not None and self.stderr < 0.0:
            raise DomainError(f"stderr must be nonnegative, got {self.stderr}")


@dataclass(frozen=True)
class StatCurve:
    """A named statistic sampled over strictly increasing abscissas."""

    stat_name: str
    points: tuple[StatPoint, ...]
    params: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, "points", tuple(self.points))
        absc = [p.abscissa for p in self.points]
        if any(b <= a for a, b in zip(absc, absc[1:])):
            raise DomainError(
                f"abscissas of {self.stat_name!r} must be strictly increasing"
            )

    @property
    def abscissas(self) -> np.ndarray:
        return np.array([p.abscissa for p in self.points])

    @property
    def values(self) -> np.ndarray:
        return np.array([p.value for p in self.points])

    @property
    def stderrs(self) -> np.ndarray:
        return np.array(
            [math.nan if p.stderr is None else p.stderr for p in self.points]
        )


def _check_lag(n: int, k: int) -> None:
    if not 1 <= k < n:
        raise DomainError(f"lag must satisfy 1 <= k < n = {n}, got {k}")


def _require_paths(ens: Ensemble, minimum: int) -> np.ndarray:
    if len(ens) < minimum:
        raise DomainError(f"needs at least {minimum} trajectories, got {len(ens)}")
    return ens.values_matrix()


def tamsd(traj: Trajectory, k: int) -> float:
    """Discrete time-averaged MSD at lag k dt with overlapping windows:
    (1/(n-k+1)) sum_i (x_{i+k} - x_i)^2 over i = 0..n-k."""
    _check_lag(traj.grid.n, k)
    d = traj.values[k:] - traj.values[:-k]
    return float(np.mean(d * d))


def _tamsd_matrix(values: np.ndarray, lags) -> np.ndarray:
    out = np.empty((values.shape[0], len(lags)))
    for j, k in enumerate(lags):
        d = values[:, k:] - values[:, :-k]
        out[:, j] = np.mean(d * d, axis=1)
    return out


def mean_tamsd(ens: Ensemble, lags) -> StatCurve:
    """Ensemble mean and standard error of the TAMSD at each lag; abscissas
    are the lag times k dt."""
    values = _require_paths(ens, 1)
    lags = [int(k) for k in lags]
    for k in lags:
        _check_lag(ens.grid.n, k)
    table = _tamsd_matrix(values, lags)
    return _mc_curve("mean_tamsd", np.array(lags) * ens.grid.dt, table)


def emsd(ens: Ensemble, indices) -> StatCurve:
    """Ensemble mean of x_i^2 (the paths are zero-mean by construction, so
    the raw second moment is the MSD); abscissas are the times i dt."""
    values = _require_paths(ens, 1)
    indices = [int(i) for i in indices]
    for i in indices:
        if not 0 <= i <= ens.grid.n:
            raise DomainError(f"index must lie in [0, {ens.grid.n}], got {i}")
    table = values[:, indices] ** 2
    return _mc_curve("emsd", np.array(indices) * ens.grid.dt, table)


def inc_sm_hat(ens: Ensemble, i: int, k: int) -> StatPoint:
    """Ensemble mean of the squared lag-k increment starting at index i,
    abscissa i dt."""
    values = _require_paths(ens, 1)
    if not (0 <= i and i + k <= ens.grid.n and k >= 1):
        raise DomainError(
            f"needs 0 <= i and 1 <= k with i + k <= n = {ens.grid.n}, "
            f"got i={i}, k={k}"
        )
    sq = (values[:, i + k] - values[:, i]) ** 2
    n_paths = len(sq)
    stderr = float(np.std(sq, ddof=1) / math.sqrt(n_paths)) if n_paths > 1 else None
    return StatPoint(abscissa=i * ens.grid.dt, value=float(np.mean(sq)), stderr=stderr)


def sample_cov(ens: Ensemble, i: int, j: int) -> StatPoint:
    """Raw-product covariance estimate of (x_i, x_j); both processes are
    zero-mean, so no centering term.  Abscissa is min(i, j) dt."""
    values = _require_paths(ens, 2)
    for idx in (i, j):
        if not 0 <= idx <= ens.grid.n:
            raise DomainError(f"index must lie in [0, {ens.grid.n}], got {idx}")
    prod = values[:, i] * values[:, j]
    return StatPoint(
        abscissa=min(i, j) * ens.grid.dt,
        value=float(np.mean(prod)),
        stderr=float(np.std(prod, ddof=1) / math.sqrt(len(prod))),
    )


def eb_parameter(ens: Ensemble, k: int) -> float:
    """Ergodicity-breaking parameter of the TAMSD at lag k dt:
    EB = mean(delta^2) / mean(delta)^2 - 1 over per-trajectory TAMSDs.

    Decays to 0 with trajectory length for an ergodic increment sequence;
    approaches a positive plateau when the Hurst exponent is genuinely
    random.
    """
    values = _require_paths(ens, 2)
    _check_lag(ens.grid.n, k)
    d = values[:, k:] - values[:, :-k]
    deltas = np.mean(d * d, axis=1)
    mean = float(np.mean(deltas))
    if mean == 0.0:
        raise DomainError("degenerate ensemble: all TAMSD values are zero")
    return float(np.mean(deltas * deltas) / (mean * mean) - 1.0)


def _mc_curve(name: str, abscissas: np.ndarray, table: np.ndarray) -> StatCurve:
    """Column means of a (paths, points) table as a StatCurve."""
    n_paths = table.shape[0]
    means = np.mean(table, axis=0)
    if n_paths > 1:
        errs = np.std(table, axis=0, ddof=1) / math.sqrt(n_paths)
    else:
        errs = np.full(table.shape[1], np.nan)
    order = np.argsort(abscissas)
    points = [
        StatPoint(
            abscissa=float(abscissas[idx]),
            value=float(means[idx]),
            stderr=None if math.isnan(errs[idx]) else float(errs[idx]),
        )
        for idx in order
    ]
    return StatCurve(stat_name=name, points=points)
