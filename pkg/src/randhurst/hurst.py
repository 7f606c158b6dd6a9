"""Hurst-exponent models: a fixed value, a two-point law, and a tabulated
density, with the operations the rest of the library needs from them
(moment generating function, density evaluation, sampling, serialization).

Every model checks its own parameters at construction time so downstream
code can assume a valid law.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, UnsupportedModelError

# tabulated densities must integrate to 1 within this tolerance (trapezoid)
NORMALIZATION_ATOL = 1e-9


def _check_open_unit(name: str, value: float) -> None:
    if not 0.0 < value < 1.0 or not math.isfinite(value):
        raise DomainError(f"{name} must lie strictly inside (0, 1), got {value}")


@dataclass(frozen=True)
class DeterministicHurst:
    """A single fixed Hurst exponent in (0, 1)."""

    value: float

    def __post_init__(self) -> None:
        _check_open_unit("value", self.value)


@dataclass(frozen=True)
class TwoPointHurst:
    """H = h1 with probability p, else h2; requires h1 < h2, both in (0, 1)."""

    h1: float
    h2: float
    p: float

    def __post_init__(self) -> None:
        _check_open_unit("h1", self.h1)
        _check_open_unit("h2", self.h2)
        if not self.h1 < self.h2:
            raise DomainError(f"requires h1 < h2, got h1={self.h1}, h2={self.h2}")
        if not 0.0 <= self.p <= 1.0:
            raise DomainError(f"p must lie in [0, 1], got {self.p}")


@dataclass(frozen=True)
class TabulatedHurst:
    """Piecewise-linear density on (0, 1) given as ((h, f(h)), ...) nodes.

    Nodes must be strictly increasing in h, the density nonnegative, and the
    trapezoid integral equal to 1 within NORMALIZATION_ATOL.
    """

    nodes: tuple[tuple[float, float], ...]

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "nodes", tuple((float(h), float(f)) for h, f in self.nodes)
        )
        if len(self.nodes) < 2:
            raise DomainError("tabulated model needs at least two nodes")
        hs = [h for h, _ in self.nodes]
        fs = [f for _, f in self.nodes]
        for h in hs:
            _check_open_unit("node abscissa", h)
        if any(b <= a for a, b in zip(hs, hs[1:])):
            raise DomainError("node abscissas must be strictly increasing")
        if any(f < 0.0 or not math.isfinite(f) for f in fs):
            raise DomainError("density values must be finite and nonnegative")
        area = float(np.trapezoid(fs, hs))
        if abs(area - 1.0) > NORMALIZATION_ATOL:
            raise DomainError(
                f"density must integrate to 1 (trapezoid), got {area!r}"
            )

    @property
    def _arrays(self) -> tuple[np.ndarray, np.ndarray]:
        hs = np.array([h for h, _ in self.nodes])
        fs = np.array([f for _, f in self.nodes])
        return hs, fs


HurstModel = DeterministicHurst | TwoPointHurst | TabulatedHurst


def mgf(model: HurstModel, s: float) -> float:
    """E[exp(s H)] under the model (trapezoid rule for tabulated densities)."""
    s = float(s)
    if isinstance(model, DeterministicHurst):
        return math.exp(s * model.value)
    if isinstance(model, TwoPointHurst):
        return model.p * math.exp(s * model.h1) + (1.0 - model.p) * math.exp(s * model.h2)
    if isinstance(model, TabulatedHurst):
        hs, fs = model._arrays
        return float(np.trapezoid(np.exp(s * hs) * fs, hs))
    raise UnsupportedModelError(f"unknown Hurst model {type(model).__name__}")


def pdf_eval(model: HurstModel, h: float) -> float:
    """Density of the model at h.  Atomic models have no density and raise."""
    if isinstance(model, TabulatedHurst):
        hs, fs = model._arrays
        h = float(h)
        if h < hs[0] or h > hs[-1]:
            return 0.0
        return float(np.interp(h, hs, fs))
    raise UnsupportedModelError(
        f"{type(model).__name__} carries point masses, not a density"
    )


def sample_h(model: HurstModel, rng: np.random.Generator) -> float:
    """Draw one Hurst exponent from the model using rng."""
    if isinstance(model, DeterministicHurst):
        return model.value
    if isinstance(model, TwoPointHurst):
        return model.h1 if rng.random() < model.p else model.h2
    if isinstance(model, TabulatedHurst):
        return _sample_tabulated(model, rng.random())
    raise UnsupportedModelError(f"unknown Hurst model {type(model).__name__}")


def _sample_tabulated(model: TabulatedHurst, u: float) -> float:
    """Inverse-CDF sampling within the segment containing probability u.

    On each segment the CDF is quadratic; the root is taken in the
    cancellation-free form 2r / (f + sqrt(f^2 + 2 m r)).
    """
    hs, fs = model._arrays
    widths = np.diff(hs)
    areas = 0.5 * (fs[:-1] + fs[1:]) * widths
    cum = np.concatenate(([0.0], np.cumsum(areas)))
    total = cum[-1]
    target = u * total
    i = int(np.searchsorted(cum, target, side="right") - 1)
    i = min(max(i, 0), len(widths) - 1)
    r = target - cum[i]
    f0 = fs[i]
    slope = (fs[i + 1] - fs[i]) / widths[i]
    disc = f0 * f0 + 2.0 * slope * r
    denom = f0 + math.sqrt(max(disc, 0.0))
    if denom <= 0.0:
        x = 0.0
    else:
        x = 2.0 * r / denom
    return float(min(hs[i] + x, hs[i + 1]))


def model_to_dict(model: HurstModel) -> dict:
    """JSON-ready description of the model (inverse of model_from_dict)."""
    if isinstance(model, DeterministicHurst):
        return {"type": "deterministic", "value": model.value}
    if isinstance(model, TwoPointHurst):
        return {"type": "two-point", "h1": model.h1, "h2": model.h2, "p": model.p}
    if isinstance(model, TabulatedHurst):
        return {"type": "tabulated", "nodes": [list(node) for node in model.nodes]}
    raise UnsupportedModelError(f"unknown Hurst model {type(model).__name__}")


def model_from_dict(data: dict) -> HurstModel:
    """Build a Hurst model from its dictionary description."""
    try:
        kind = data["type"]
    except (TypeError, KeyError) as exc:
        raise DomainError("Hurst model description needs a 'type' key") from exc
    try:
        if kind == "deterministic":
            return DeterministicHurst(value=float(data["value"]))
        if kind == "two-point":
            return TwoPointHurst(
                h1=float(data["h1"]), h2=float(data["h2"]), p=float(data["p"])
            )
        if kind == "tabulated":
            return TabulatedHurst(
                nodes=tuple((float(h), float(f)) for h, f in data["nodes"])
            )
    except KeyError as exc:
        raise DomainError(f"missing field for {kind!r} Hurst model: {exc}") from exc
    raise DomainError(f"unknown Hurst model type {kind!r}")
