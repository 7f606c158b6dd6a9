"""Preset figure builder for the two-point random-Hurst comparison plots.

Twelve presets cover a 4 x 3 grid: four panels (covariance at short time
ratio, covariance at long time ratio, time-averaged MSD at short lags,
time-averaged MSD at long lags) times three mixture weights p in
{0.1, 0.5, 0.9}, always with H1 = 0.25 and H2 = 0.75.  Covariance panels
fix the lag tau = 0.1 and sweep t; TAMSD panels fix the horizon T = 20000
and sweep the lag.

Each preset writes three curve CSVs (the exact mixture curve per process
kind, plus one file holding the asymptote overlays for the panel's regime)
and renders them into a log-log PNG alongside a small JSON manifest.  The
TAMSD asymptote overlays are single-term power laws; for the
Riemann-Liouville kind at long lags the finite horizon keeps the exact
curve a few percent away from that term, so those overlays are a guide to
the eye rather than a convergence statement.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from ._version import __version__
from .analytic import ProcessKind, Regime
from .errors import ConfigError
from .estimate import StatCurve, StatPoint
from .experiment import resolve_out_dir, write_curves
from .hurst import TwoPointHurst
from .randomized import (
    MixtureStat,
    StatKind,
    fbmre_cov,
    fbmre_etamsd,
    mixture_asymptotic,
    rlfbmre_cov,
    rlfbmre_etamsd,
)

H_LOW = 0.25
H_HIGH = 0.75
COV_TAU = 0.1
TAMSD_HORIZON = 20000.0
_POINTS = 25


@dataclass(frozen=True)
class FigurePreset:
    name: str
    panel: str  # "cov" or "tamsd"
    regime: Regime
    p: float

    @property
    def abscissas(self) -> np.ndarray:
        if self.panel == "cov":
            # t relative to the fixed lag
            lo, hi = (-4.0, -2.0) if self.regime is Regime.SHORT_RATIO else (2.0, 4.0)
            return COV_TAU * np.logspace(lo, hi, _POINTS)
        lo, hi = (-4.0, -1.0) if self.regime is Regime.SHORT_RATIO else (1.0, 3.0)
        return np.logspace(lo, hi, _POINTS)


def _presets() -> dict[str, FigurePreset]:
    panels = {
        "fig1": ("cov", Regime.SHORT_RATIO),
        "fig2": ("cov", Regime.LONG_RATIO),
        "fig3": ("tamsd", Regime.SHORT_RATIO),
        "fig4": ("tamsd", Regime.LONG_RATIO),
    }
    weights = {"p01": 0.1, "p05": 0.5, "p09": 0.9}
    out = {}
    for fig, (panel, regime) in panels.items():
        for tag, p in weights.items():
            name = f"{fig}-{tag}"
            out[name] = FigurePreset(name=name, panel=panel, regime=regime, p=p)
    return out


FIGURE_PRESETS = _presets()


def _curve(name: str, xs, ys) -> StatCurve:
    pts = [StatPoint(abscissa=float(x), value=float(y)) for x, y in zip(xs, ys)]
    return StatCurve(stat_name=name, points=pts)


def build_figure_curves(preset: FigurePreset) -> dict[str, list[StatCurve]]:
    """Exact and asymptote curves for one preset, keyed by output file stem:
    'fbmre' and 'rlfbmre' hold the exact mixture curves, 'asymptotes' holds
    one overlay per process kind for the panel's regime."""
    model = TwoPointHurst(h1=H_LOW, h2=H_HIGH, p=preset.p)
    xs = preset.abscissas
    if preset.panel == "cov":
        exact_fbm = [fbmre_cov(model, t, COV_TAU) for t in xs]
        exact_rl = [rlfbmre_cov(model, t, COV_TAU) for t in xs]
        stat = MixtureStat(StatKind.COV, preset.regime)
        asym_fbm = [
            mixture_asymptotic(stat, ProcessKind.FBM, model, t=t, tau=COV_TAU)
            for t in xs
        ]
        asym_rl = [
            mixture_asymptotic(stat, ProcessKind.RLFBM, model, t=t, tau=COV_TAU)
            for t in xs
        ]
        base = "cov"
    elif preset.panel == "tamsd":
        exact_fbm = [fbmre_etamsd(model, tau) for tau in xs]
        exact_rl = [rlfbmre_etamsd(model, tau, TAMSD_HORIZON) for tau in xs]
        stat = MixtureStat(StatKind.ETAMSD, preset.regime)
        asym_fbm = [
            mixture_asymptotic(stat, ProcessKind.FBM, model, tau=tau) for tau in xs
        ]
        asym_rl = [
            mixture_asymptotic(stat, ProcessKind.RLFBM, model, tau=tau) for tau in xs
        ]
        base = "etamsd"
    else:
        raise ConfigError(f"unknown panel {preset.panel!r}")
    suffix = preset.regime.value
    return {
        "fbmre": [_curve(f"fbmre_{base}", xs, exact_fbm)],
        "rlfbmre": [_curve(f"rlfbmre_{base}", xs, exact_rl)],
        "asymptotes": [
            _curve(f"fbmre_{base}_asymptote_{suffix}", xs, asym_fbm),
            _curve(f"rlfbmre_{base}_asymptote_{suffix}", xs, asym_rl),
        ],
    }


def _render(preset: FigurePreset, curve_map, path) -> None:
    labels = {"cov": "covariance", "etamsd": "time-averaged MSD"}
    fig, ax = plt.subplots(figsize=(6.4, 4.8), dpi=150)
    colors = {"fbmre": "tab:blue", "rlfbmre": "tab:red"}
    for stem in ("fbmre", "rlfbmre"):
        (curve,) = curve_map[stem]
        ax.loglog(
            curve.abscissas,
            curve.values,
            color=colors[stem],
            marker="o",
            markersize=3,
            linewidth=1.2,
            label=curve.stat_name,
        )
    for curve, style in zip(curve_map["asymptotes"], ("--", ":")):
        ax.loglog(
            curve.abscissas,
            curve.values,
            style,
            color="black",
            linewidth=1.0,
            label=curve.stat_name,
        )
    base = "cov" if preset.panel == "cov" else "etamsd"
    xlabel = "t" if preset.panel == "cov" else "lag"
    extra = f"tau = {COV_TAU}" if preset.panel == "cov" else f"T = {TAMSD_HORIZON:g}"
    ax.set_xlabel(xlabel)
    ax.set_ylabel(labels[base])
    ax.set_title(
        f"{labels[base]}, {preset.regime.value} regime, p = {preset.p}, {extra}"
    )
    ax.legend(fontsize=8)
    ax.grid(True, which="both", alpha=0.3)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)


@dataclass(frozen=True)
class FigureResult:
    preset: str
    out_dir: object
    files: tuple[str, ...]


def run_figure(preset_name: str, out_dir: str | None = None) -> FigureResult:
    """Build one preset: three curve CSVs, the rendered PNG, and a manifest."""
    if preset_name not in FIGURE_PRESETS:
        raise ConfigError(
            f"unknown figure preset {preset_name!r}; choose one of "
            f"{sorted(FIGURE_PRESETS)}"
        )
    preset = FIGURE_PRESETS[preset_name]
    target = resolve_out_dir(out_dir)
    curve_map = build_figure_curves(preset)
    files = []
    for stem in ("fbmre", "rlfbmre", "asymptotes"):
        name = f"{preset.name}_{stem}.csv"
        write_curves(target / name, curve_map[stem])
        files.append(name)
    png_name = f"{preset.name}.png"
    _render(preset, curve_map, target / png_name)
    files.append(png_name)
    manifest = {
        "version": __version__,
        "preset": preset.name,
        "parameters": {
            "h1": H_LOW,
            "h2": H_HIGH,
            "p": preset.p,
            "panel": preset.panel,
            "regime": preset.regime.value,
            "tau": COV_TAU if preset.panel == "cov" else None,
            "T": TAMSD_HORIZON if preset.panel == "tamsd" else None,
        },
        "files": files,
    }
    manifest_name = f"{preset.name}_manifest.json"
    (target / manifest_name).write_text(
        json.dumps(manifest, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )
    files.append(manifest_name)
    return FigureResult(preset=preset.name, out_dir=target, files=tuple(files))
