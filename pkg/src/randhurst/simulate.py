"""Exact-in-law trajectory sampling for FBM, RL FBM, and their random-Hurst
extensions on uniform time grids.

The baseline generator is Cholesky-from-covariance: build the covariance
matrix of the nonzero grid points from the closed forms, factor it once, and
multiply the factor by i.i.d. standard normals.  One code path serves both
processes because both covariances are available in closed form, and the
output is exact in law at any grid size.  The factorization cost caps the
grid at CHOLESKY_MAX_N steps.

FBM additionally has a circulant-embedding fast path (stationary increments
make the increment covariance Toeplitz, so the usual length-2n circulant
carries an exact spectral factorization).  It is the only way past the
Cholesky cap; RL FBM increments are non-stationary, so no such path exists
for them and larger grids are rejected.

Randomness: a splittable counter-based generator.  Trajectory i of an
ensemble uses the child stream SeedSequence(master_seed, spawn_key=(i,)),
so paths are reproducible individually, independent of generation order,
and ensembles parallelize deterministically across threads.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .analytic import ProcessKind, fbm_cov, rlfbm_cov
from .errors import DomainError, NonPositiveDefiniteError, UnsupportedModelError
from .hurst import DeterministicHurst, TwoPointHurst, sample_h
from .randomized import ProcessSpec

# Cholesky path memory cap (~512 MB of float64 at the cap).
CHOLESKY_MAX_N = 8192

# relative sizes of the diagonal jitter escalation ladder
_JITTER_SCALES = (0.0, 1e-12, 1e-10)

_METHODS = ("auto", "cholesky", "circulant")


@dataclass(frozen=True)
class TimeGrid:
    """Uniform grid t_i = i dt, i = 0..n (n steps, n+1 points)."""

    n: int
    dt: float

    def __post_init__(self) -> None:
        if not isinstance(self.n, int) or self.n < 1:
            raise DomainError(f"n must be a positive integer, got {self.n!r}")
        if not self.dt > 0.0 or not math.isfinite(self.dt):
            raise DomainError(f"dt must be positive and finite, got {self.dt!r}")

    @property
    def times(self) -> np.ndarray:
        return self.dt * np.arange(self.n + 1)

    @property
    def horizon(self) -> float:
        return self.n * self.dt


@dataclass(frozen=True)
class Trajectory:
    """One sampled path: values[0] = 0 and values[i] is the position at
    i dt; h_draw records the Hurst exponent this path was generated with."""

    grid: TimeGrid
    values: np.ndarray
    h_draw: float
    stream_id: int

    def __post_init__(self) -> None:
        vals = np.asarray(self.values, dtype=float)
        object.__setattr__(self, "values", vals)
        if vals.shape != (self.grid.n + 1,):
            raise DomainError(
                f"values must have length n+1 = {self.grid.n + 1}, got {vals.shape}"
            )
        if vals[0] != 0.0:
            raise DomainError("paths start at the origin; values[0] must be 0")


@dataclass(frozen=True)
class Ensemble:
    """A batch of trajectories sharing one grid and process specification."""

    spec: ProcessSpec
    grid: TimeGrid
    master_seed: int
    trajectories: tuple[Trajectory, ...]

    def values_matrix(self) -> np.ndarray:
        """Stack of path values, shape (count, n+1)."""
        return np.stack([traj.values for traj in self.trajectories])

    def h_draws(self) -> np.ndarray:
        return np.array([traj.h_draw for traj in self.trajectories])

    def __len__(self) -> int:
        return len(self.trajectories)


def child_rng(master_seed: int, i: int) -> np.random.Generator:
    """Child stream i of an ensemble: counter-based, no sequential coupling."""
    return np.random.Generator(
        np.random.Philox(np.random.SeedSequence(master_seed, spawn_key=(i,)))
    )


def cov_matrix(kind: ProcessKind, h: float, grid: TimeGrid) -> np.ndarray:
    """Covariance matrix of the nonzero grid points t_1..t_n."""
    t = grid.times[1:]
    tmin = np.minimum.outer(t, t)
    tmax = np.maximum.outer(t, t)
    if kind is ProcessKind.FBM:
        return fbm_cov(h, tmin, tmax - tmin)
    cov = rlfbm_cov(h, tmin, tmax - tmin)
    # exact variance on the diagonal (the generic path computes it too, but
    # through the hypergeometric branch)
    idx = np.arange(len(t))
    cov[idx, idx] = t ** (2.0 * h)
    return cov


def _cholesky_factor(cov: np.ndarray) -> np.ndarray:
    scale = float(np.max(np.diag(cov)))
    for jitter in _JITTER_SCALES:
        try:
            return np.linalg.cholesky(
                cov if jitter == 0.0 else cov + jitter * scale * np.eye(len(cov))
            )
        except np.linalg.LinAlgError:
            continue
    raise NonPositiveDefiniteError(
        "covariance matrix is not positive definite even after jitter "
        "escalation; this signals an error in the covariance values"
    )


def _fgn_spectrum(h: float, n: int) -> np.ndarray:
    """Eigenvalues of the circulant embedding of the unit-step fGn covariance."""
    k = np.arange(n + 1, dtype=float)
    r = 0.5 * ((k + 1.0) ** (2.0 * h) - 2.0 * k ** (2.0 * h) + np.abs(k - 1.0) ** (2.0 * h))
    circ = np.concatenate([r, r[-2:0:-1]])
    lam = np.fft.fft(circ).real
    if np.any(lam < -1e-8 * lam.max()):
        raise NonPositiveDefiniteError(
            f"circulant embedding has significantly negative eigenvalues (H={h})"
        )
    return np.clip(lam, 0.0, None)


def _fbm_path_circulant(
    h: float, grid: TimeGrid, rng: np.random.Generator, lam: np.ndarray
) -> np.ndarray:
    """Exact FBM path via spectral synthesis of the increment process."""
    n = grid.n
    m = 2 * n
    z = rng.standard_normal(m)
    w = np.empty(m, dtype=complex)
    w[0] = z[0]
    w[n] = z[1]
    w[1:n] = (z[2 : n + 1] + 1j * z[n + 1 :]) / math.sqrt(2.0)
    w[n + 1 :] = np.conj(w[1:n][::-1])
    inc = np.fft.fft(np.sqrt(lam / m) * w).real[:n] * grid.dt**h
    return np.concatenate(([0.0], np.cumsum(inc)))


class _FactorCache:
    """Per-h generator state (Cholesky factor or circulant spectrum).

    Atomic Hurst models have one or two support points, so their factors are
    computed up front and shared read-only by all paths.  Continuous models
    draw a fresh h per path; storing those would accumulate one n x n factor
    per trajectory, so they are computed on the fly and dropped.
    """

    def __init__(self, spec: ProcessSpec, grid: TimeGrid, method: str):
        self.spec = spec
        self.grid = grid
        self.method = method
        self._store: dict[float, np.ndarray] = {}

    def _build(self, h: float) -> np.ndarray:
        if self.method == "cholesky":
            return _cholesky_factor(cov_matrix(self.spec.kind, h, self.grid))
        return _fgn_spectrum(h, self.grid.n)

    def prepare(self, h_values) -> None:
        for h in h_values:
            if h not in self._store:
                self._store[h] = self._build(h)

    def get(self, h: float) -> np.ndarray:
        hit = self._store.get(h)
        return hit if hit is not None else self._build(h)


def _resolve_method(spec: ProcessSpec, grid: TimeGrid, method: str) -> str:
    if method not in _METHODS:
        raise DomainError(f"method must be one of {_METHODS}, got {method!r}")
    if method == "circulant":
        if spec.kind is not ProcessKind.FBM:
            raise UnsupportedModelError(
                "circulant embedding needs stationary increments; only the "
                "FBM kind has them"
            )
        return "circulant"
    if method == "cholesky":
        if grid.n > CHOLESKY_MAX_N:
            raise DomainError(
                f"grid has {grid.n} steps; the Cholesky path caps at "
                f"{CHOLESKY_MAX_N}"
            )
        return "cholesky"
    # auto: Cholesky up to the cap, the FBM fast path beyond it
    if grid.n <= CHOLESKY_MAX_N:
        return "cholesky"
    if spec.kind is ProcessKind.FBM:
        return "circulant"
    raise DomainError(
        f"grid has {grid.n} steps; RL FBM simulation needs the Cholesky path, "
        f"which caps at {CHOLESKY_MAX_N}"
    )


def _draw_path(
    spec: ProcessSpec,
    grid: TimeGrid,
    rng: np.random.Generator,
    cache: _FactorCache,
    stream_id: int,
) -> Trajectory:
    # draw order matters for reproducibility: the Hurst value first, then
    # the path normals
    h = sample_h(spec.hurst, rng)
    if cache.method == "cholesky":
        values = np.concatenate(([0.0], cache.get(h) @ rng.standard_normal(grid.n)))
    else:
        values = _fbm_path_circulant(h, grid, rng, cache.get(h))
    return Trajectory(grid=grid, values=values, h_draw=h, stream_id=stream_id)


def _atom_support(spec: ProcessSpec):
    if isinstance(spec.hurst, DeterministicHurst):
        return (spec.hurst.value,)
    if isinstance(spec.hurst, TwoPointHurst):
        return (spec.hurst.h1, spec.hurst.h2)
    return ()


def simulate_path(
    spec: ProcessSpec,
    grid: TimeGrid,
    rng: np.random.Generator,
    method: str = "auto",
    stream_id: int = 0,
) -> Trajectory:
    """Sample one trajectory: draw H from the Hurst model using rng, then
    generate a zero-mean Gaussian path with the exact covariance of the
    process at that H on the grid.

    Raises NonPositiveDefiniteError if the covariance matrix cannot be
    factored even with diagonal jitter (0, 1e-12, 1e-10 of the largest
    variance) - that indicates wrong covariance values, not bad luck.
    """
    cache = _FactorCache(spec, grid, _resolve_method(spec, grid, method))
    return _draw_path(spec, grid, rng, cache, stream_id)


def simulate_ensemble(
    spec: ProcessSpec,
    grid: TimeGrid,
    count: int,
    master_seed: int,
    threads: int = 1,
    method: str = "auto",
) -> Ensemble:
    """Sample `count` independent trajectories, path i on the child stream
    (master_seed, i).  Output is reproducible for fixed inputs and does not
    depend on `threads`: streams are indexed, results are stored by index,
    and the per-h factors are computed up front for atomic Hurst models.

    For a tabulated Hurst model every path draws its own h, so the Cholesky
    factor cannot be shared; expect atomic models to be much faster.
    """
    if count < 1:
        raise DomainError(f"count must be >= 1, got {count}")
    if threads < 1:
        raise DomainError(f"threads must be >= 1, got {threads}")
    resolved = _resolve_method(spec, grid, method)
    cache = _FactorCache(spec, grid, resolved)
    cache.prepare(_atom_support(spec))

    def build(i: int) -> Trajectory:
        return _draw_path(spec, grid, child_rng(master_seed, i), cache, i)

    if threads == 1:
        trajectories = [build(i) for i in range(count)]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            trajectories = list(pool.map(build, range(count)))
    return Ensemble(
        spec=spec, grid=grid, master_seed=master_seed, trajectories=tuple(trajectories)
    )
