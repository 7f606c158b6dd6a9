"""Declarative experiment runner: a JSON-shaped config in, CSV StatCurves
and a JSON manifest out.

A config names a process, a grid, an ensemble size and seed, a set of lag
indices, and the statistics to produce.  Estimator statistics (emsd, tamsd,
cov, inc_sm, eb) trigger one simulation pass; analytic-overlay and
asymptote-overlay add exact curves on the same abscissas, and asymptote
overlays are written for both regimes (suffixes _short and _long) so the
caller can pick the relevant side.  With ensemble_size = 0 no simulation
runs and only the overlay curves are produced.

Output files: one CSV per curve named <stat_name>.csv with the header
`abscissa,value,stderr,stat_name`, floats at 17 significant digits, stderr
blank for exact curves; plus manifest.json echoing the config (it re-parses
into an equivalent config), the library version, the file list, and wall
time.  For a fixed config the CSV bytes are identical run to run.
"""

from __future__ import annotations

import json
import os
import time
from dataclasses import dataclass, replace
from pathlib import Path

from ._version import __version__
from .analytic import (
    ProcessKind,
    Regime,
    cov_asymptotic,
    rlfbm_etamsd_asymptotic,
    rlfbm_inc_sm_asymptotic,
)
from .errors import ConfigError, DomainError
from .estimate import StatCurve, StatPoint, eb_parameter, emsd, inc_sm_hat, mean_tamsd, sample_cov
from .hurst import TabulatedHurst, TwoPointHurst, model_from_dict, model_to_dict
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
    rlfbmre_cov,
    rlfbmre_etamsd,
    rlfbmre_inc_sm,
)
from .simulate import TimeGrid, simulate_ensemble

# default-output-directory environment variable
ENV_OUT = "RANDHURST_OUT"

ESTIMATOR_STATS = ("emsd", "tamsd", "cov", "inc_sm", "eb")
OVERLAY_STATS = ("analytic-overlay", "asymptote-overlay")
VALID_STATS = ESTIMATOR_STATS + OVERLAY_STATS

_REL_TOL = 1e-9


@dataclass(frozen=True)
class ExperimentConfig:
    """Validated experiment description; see the module docstring for the
    field semantics and from_dict for the JSON layout."""

    process: ProcessSpec
    grid: TimeGrid
    ensemble_size: int
    master_seed: int
    lags: tuple[int, ...]
    statistics: tuple[str, ...]
    tau: float | None = None
    horizon: float | None = None
    output_path: str | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "lags", tuple(int(k) for k in self.lags))
        object.__setattr__(self, "statistics", tuple(self.statistics))
        try:
            self._validate()
        except DomainError as exc:
            raise ConfigError(str(exc)) from exc

    def _validate(self) -> None:
        if self.ensemble_size < 0:
            raise ConfigError(f"ensemble_size must be >= 0, got {self.ensemble_size}")
        if not self.statistics:
            raise ConfigError("statistics must be nonempty")
        unknown = [s for s in self.statistics if s not in VALID_STATS]
        if unknown:
            raise ConfigError(
                f"unknown statistics {unknown}; valid names: {list(VALID_STATS)}"
            )
        if len(set(self.statistics)) != len(self.statistics):
            raise ConfigError("statistics contains duplicates")
        if not self.lags:
            raise ConfigError("lags must be nonempty")
        if any(b <= a for a, b in zip(self.lags, self.lags[1:])):
            raise ConfigError("lags must be strictly increasing")
        n = self.grid.n
        if self.lags[0] < 1 or self.lags[-1] >= n:
            raise ConfigError(f"lags must lie within 1 <= k < n = {n}, got {self.lags}")
        if self.horizon is not None:
            want = self.grid.horizon
            if abs(self.horizon - want) > _REL_TOL * max(1.0, abs(want)):
                raise ConfigError(
                    f"T = {self.horizon} is inconsistent with n*dt = {want}"
                )
        needs_tau = {"cov", "inc_sm"} & set(self.statistics)
        if needs_tau:
            if self.tau is None:
                raise ConfigError(f"statistics {sorted(needs_tau)} need the tau field")
            k = self.tau_steps
            if max(self.lags) + k > n:
                raise ConfigError(
                    f"start index {max(self.lags)} plus tau ({k} steps) exceeds n = {n}"
                )
        if self.ensemble_size == 0:
            if not any(s in OVERLAY_STATS for s in self.statistics):
                raise ConfigError(
                    "ensemble_size = 0 produces no Monte Carlo curves; request "
                    "at least one overlay statistic"
                )
        if "asymptote-overlay" in self.statistics and isinstance(
            self.process.hurst, TabulatedHurst
        ):
            raise ConfigError(
                "asymptote overlays exist only for deterministic and two-point "
                "Hurst models"
            )
        if (
            "eb" in self.statistics
            and "analytic-overlay" in self.statistics
            and self.process.kind is not ProcessKind.FBM
        ):
            raise ConfigError(
                "the EB plateau has a closed form only for the FBM kind; drop "
                "'analytic-overlay' or 'eb' for this process"
            )

    @property
    def tau_steps(self) -> int:
        """tau expressed in grid steps; tau must sit on the grid."""
        if self.tau is None:
            raise ConfigError("this experiment has no tau field")
        k = round(self.tau / self.grid.dt)
        if k < 1 or abs(k * self.grid.dt - self.tau) > _REL_TOL * max(self.tau, 1.0):
            raise ConfigError(
                f"tau = {self.tau} is not a positive multiple of dt = {self.grid.dt}"
            )
        return k


def config_to_dict(config: ExperimentConfig) -> dict:
    out = {
        "process": {
            "kind": config.process.kind.value,
            "hurst": model_to_dict(config.process.hurst),
        },
        "grid": {"n": config.grid.n, "dt": config.grid.dt},
        "ensemble_size": config.ensemble_size,
        "master_seed": config.master_seed,
        "lags": list(config.lags),
        "statistics": list(config.statistics),
    }
    if config.tau is not None:
        out["tau"] = config.tau
    if config.horizon is not None:
        out["T"] = config.horizon
    if config.output_path is not None:
        out["output_path"] = config.output_path
    return out


def config_from_dict(data: dict) -> ExperimentConfig:
    """Build a config from its JSON object; field names mirror the dataclass
    with the horizon spelled T."""
    if not isinstance(data, dict):
        raise ConfigError("config must be a JSON object")
    try:
        process = data["process"]
        kind = ProcessKind(process["kind"])
        hurst = model_from_dict(process["hurst"])
        grid = TimeGrid(n=int(data["grid"]["n"]), dt=float(data["grid"]["dt"]))
        return ExperimentConfig(
            process=ProcessSpec(kind=kind, hurst=hurst),
            grid=grid,
            ensemble_size=int(data["ensemble_size"]),
            master_seed=int(data["master_seed"]),
            lags=tuple(int(k) for k in data["lags"]),
            statistics=tuple(str(s) for s in data["statistics"]),
            tau=float(data["tau"]) if "tau" in data else None,
            horizon=float(data["T"]) if "T" in data else None,
            output_path=data.get("output_path"),
        )
    except (KeyError, TypeError, ValueError, DomainError) as exc:
        raise ConfigError(f"invalid experiment config: {exc}") from exc


def load_config(path: str | Path) -> ExperimentConfig:
    with open(path, encoding="utf-8") as fh:
        return config_from_dict(json.load(fh))


def resolve_out_dir(explicit: str | None, config_value: str | None = None) -> Path:
    """Output directory precedence: explicit flag, config field, the
    RANDHURST_OUT environment variable, then the working directory."""
    target = explicit or config_value or os.environ.get(ENV_OUT) or "."
    path = Path(target)
    path.mkdir(parents=True, exist_ok=True)
    return path


def _fmt(x: float | None) -> str:
    return "" if x is None else format(float(x), ".17g")


def write_curves(path: Path, curves) -> None:
    """Write one or more StatCurves into a single CSV (rows carry the
    stat_name, so multiple curves per file stay distinguishable)."""
    lines = ["abscissa,value,stderr,stat_name"]
    for curve in curves:
        for pt in curve.points:
            lines.append(
                f"{_fmt(pt.abscissa)},{_fmt(pt.value)},{_fmt(pt.stderr)},{curve.stat_name}"
            )
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def read_curves(path: Path) -> list[StatCurve]:
    """Parse a CSV written by write_curves back into StatCurves."""
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    if not lines or lines[0] != "abscissa,value,stderr,stat_name":
        raise ConfigError(f"{path} is not a StatCurve CSV")
    grouped: dict[str, list[StatPoint]] = {}
    for line in lines[1:]:
        if not line:
            continue
        absc, value, stderr, name = line.split(",")
        grouped.setdefault(name, []).append(
            StatPoint(
                abscissa=float(absc),
                value=float(value),
                stderr=float(stderr) if stderr else None,
            )
        )
    return [StatCurve(stat_name=name, points=pts) for name, pts in grouped.items()]


@dataclass(frozen=True)
class ExperimentResult:
    out_dir: Path
    curves: tuple[StatCurve, ...]
    files: tuple[str, ...]
    manifest_path: Path


def _analytic_value(config: ExperimentConfig, family: str, abscissa: float) -> float:
    spec = config.process
    model = spec.hurst
    fbm = spec.kind is ProcessKind.FBM
    if family == "emsd":
        return re_abs_moment(spec, 2.0, abscissa)
    if family == "tamsd":
        if fbm:
            return fbmre_etamsd(model, abscissa)
        return rlfbmre_etamsd(model, abscissa, config.grid.horizon)
    if family == "cov":
        if fbm:
            return fbmre_cov(model, abscissa, config.tau)
        return rlfbmre_cov(model, abscissa, config.tau)
    if family == "inc_sm":
        if fbm:
            return fbmre_inc_sm(model, abscissa, config.tau)
        return rlfbmre_inc_sm(model, abscissa, config.tau)
    if family == "eb":
        return eb_plateau(model, abscissa)
    raise ConfigError(f"no analytic overlay for {family!r}")


_STAT_KINDS = {"emsd": StatKind.SECOND_MOMENT, "tamsd": StatKind.ETAMSD,
               "cov": StatKind.COV, "inc_sm": StatKind.INC_SM}


def _asymptote_value(
    config: ExperimentConfig, family: str, abscissa: float, regime: Regime
) -> float | None:
    """Printed asymptote on the family's abscissa, or None where no printed
    form exists (the FBM increment second moment is exactly lag-determined)."""
    spec = config.process
    model = spec.hurst
    fbm = spec.kind is ProcessKind.FBM
    short = regime is Regime.SHORT_RATIO
    if family == "eb":
        return None
    if isinstance(model, TwoPointHurst):
        if family == "inc_sm" and fbm:
            return None
        kwargs = {"t": abscissa} if family in ("emsd", "cov") else {"tau": abscissa}
        if family == "cov":
            kwargs["tau"] = config.tau
        return mixture_asymptotic(
            MixtureStat(_STAT_KINDS[family], regime), spec.kind, model, **kwargs
        )
    # deterministic H: fixed-H expansions
    h = model.value
    if family == "emsd":
        return abscissa ** (2.0 * h)
    if family == "tamsd":
        if fbm:
            return abscissa ** (2.0 * h)
        return rlfbm_etamsd_asymptotic(h, abscissa)
    if family == "cov":
        return cov_asymptotic(spec.kind, h, abscissa, config.tau, regime)
    if family == "inc_sm":
        if fbm:
            return None
        return rlfbm_inc_sm_asymptotic(h, abscissa, regime)
    raise ConfigError(f"no asymptote overlay for {family!r}")


def _family_abscissas(config: ExperimentConfig, family: str) -> list[float]:
    dt = config.grid.dt
    return [k * dt for k in config.lags]


def _mc_curve(config: ExperimentConfig, family: str, ens) -> StatCurve:
    lags = list(config.lags)
    if family == "emsd":
        return emsd(ens, lags)
    if family == "tamsd":
        curve = mean_tamsd(ens, lags)
        return replace(curve, stat_name="tamsd")
    if family == "cov":
        k = config.tau_steps
        pts = [sample_cov(ens, i, i + k) for i in lags]
        return StatCurve(stat_name="cov", points=pts)
    if family == "inc_sm":
        k = config.tau_steps
        pts = [inc_sm_hat(ens, i, k) for i in lags]
        return StatCurve(stat_name="inc_sm", points=pts)
    if family == "eb":
        pts = [
            StatPoint(abscissa=k * config.grid.dt, value=eb_parameter(ens, k))
            for k in lags
        ]
        return StatCurve(stat_name="eb", points=pts)
    raise ConfigError(f"unknown estimator statistic {family!r}")


def build_curves(config: ExperimentConfig, threads: int = 1) -> list[StatCurve]:
    """All curves the config asks for, in a deterministic order: per
    estimator family the Monte Carlo curve (when ensemble_size > 0), then
    its analytic overlay, then its short/long asymptote overlays."""
    families = [s for s in config.statistics if s in ESTIMATOR_STATS]
    overlays = [s for s in config.statistics if s in OVERLAY_STATS]
    ens = None
    if config.ensemble_size > 0 and families:
        ens = simulate_ensemble(
            config.process,
            config.grid,
            config.ensemble_size,
            config.master_seed,
            threads=threads,
        )
    curves: list[StatCurve] = []
    for family in families:
        if ens is not None:
            curves.append(_mc_curve(config, family, ens))
        abscissas = _family_abscissas(config, family)
        if "analytic-overlay" in overlays:
            pts = [
                StatPoint(abscissa=a, value=_analytic_value(config, family, a))
                for a in abscissas
            ]
            curves.append(StatCurve(stat_name=f"{family}_analytic", points=pts))
        if "asymptote-overlay" in overlays:
            for regime in (Regime.SHORT_RATIO, Regime.LONG_RATIO):
                vals = [
                    (a, _asymptote_value(config, family, a, regime))
                    for a in abscissas
                ]
                if any(v is None for _, v in vals):
                    continue
                curves.append(
                    StatCurve(
                        stat_name=f"{family}_asymptote_{regime.value}",
                        points=[StatPoint(abscissa=a, value=v) for a, v in vals],
                    )
                )
    return curves


def run_experiment(
    config: ExperimentConfig, out_dir: str | None = None, threads: int = 1
) -> ExperimentResult:
    """Execute the experiment and write one CSV per curve plus manifest.json.

    Returns the curves and the written file names.  Output directory
    precedence: the out_dir argument, the config's output_path, the
    RANDHURST_OUT environment variable, the working directory.
    """
    start = time.perf_counter()
    target = resolve_out_dir(out_dir, config.output_path)
    curves = build_curves(config, threads=threads)
    files = []
    for curve in curves:
        name = f"{curve.stat_name}.csv"
        write_curves(target / name, [curve])
        files.append(name)
    manifest = {
        "version": __version__,
        "config": config_to_dict(config),
        "files": files,
        "wall_time_s": time.perf_counter() - start,
    }
    manifest_path = target / "manifest.json"
    manifest_path.write_text(
        json.dumps(manifest, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )
    return ExperimentResult(
        out_dir=target,
        curves=tuple(curves),
        files=tuple(files),
        manifest_path=manifest_path,
    )
