"""Hurst exponent models: validation, moments, sampling, serialization."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.testing import assert_allclose

from randhurst import (
    DeterministicHurst,
    TabulatedHurst,
    TwoPointHurst,
    mgf,
    model_from_dict,
    model_to_dict,
    pdf_eval,
    sample_h,
)
from randhurst.errors import DomainError, UnsupportedModelError

# tabulated expectations use the trapezoid rule on the given nodes, so the
# closed-form comparisons need a dense table; two nodes suffice for sampling
UNIFORM = TabulatedHurst(
    nodes=tuple((h, 2.0) for h in np.linspace(0.2, 0.7, 501))
)
UNIFORM_COARSE = TabulatedHurst(nodes=((0.2, 2.0), (0.7, 2.0)))


@pytest.mark.parametrize("value", [0.0, 1.0, -0.3, 1.5])
def test_deterministic_rejects_boundary(value):
    with pytest.raises(DomainError):
        DeterministicHurst(value=value)


def test_two_point_validation():
    with pytest.raises(DomainError):
        TwoPointHurst(h1=0.75, h2=0.25, p=0.5)  # must be ordered
    with pytest.raises(DomainError):
        TwoPointHurst(h1=0.25, h2=0.25, p=0.5)
    with pytest.raises(DomainError):
        TwoPointHurst(h1=0.25, h2=0.75, p=1.5)
    TwoPointHurst(h1=0.25, h2=0.75, p=0.0)
    TwoPointHurst(h1=0.25, h2=0.75, p=1.0)


def test_tabulated_validation():
    with pytest.raises(DomainError):
        TabulatedHurst(nodes=((0.5, 1.0),))  # single node has no support
    with pytest.raises(DomainError):
        TabulatedHurst(nodes=((0.6, 2.0), (0.2, 2.0)))  # not increasing
    with pytest.raises(DomainError):
        TabulatedHurst(nodes=((0.2, -1.0), (0.7, 5.0)))  # negative density
    with pytest.raises(DomainError):
        TabulatedHurst(nodes=((0.2, 1.0), (0.7, 1.0)))  # area 0.5, not 1
    # full-interval uniform within the normalization tolerance
    TabulatedHurst(nodes=((1e-12, 1.0), (1.0 - 1e-12, 1.0)))


def test_mgf_closed_forms():
    for s in (-2.0, 0.0, 0.7, 3.1):
        assert_allclose(mgf(DeterministicHurst(value=0.3), s), math.exp(0.3 * s), rtol=1e-14)
        m = TwoPointHurst(h1=0.25, h2=0.75, p=0.4)
        want = 0.4 * math.exp(0.25 * s) + 0.6 * math.exp(0.75 * s)
        assert_allclose(mgf(m, s), want, rtol=1e-14)
    # uniform on [a, b]: E[e^(sH)] = (e^(sb) - e^(sa)) / (s (b - a))
    s = 1.3
    want = (math.exp(0.7 * s) - math.exp(0.2 * s)) / (s * 0.5)
    assert_allclose(mgf(UNIFORM, s), want, rtol=1e-5)
    # coarse tables follow the trapezoid rule on their own nodes
    coarse_want = (2.0 * math.exp(0.2 * s) + 2.0 * math.exp(0.7 * s)) / 2.0 * 0.5
    assert_allclose(mgf(UNIFORM_COARSE, s), coarse_want, rtol=1e-12)


def test_mgf_at_zero_is_one():
    for model in (DeterministicHurst(value=0.6), TwoPointHurst(h1=0.1, h2=0.9, p=0.2), UNIFORM):
        assert_allclose(mgf(model, 0.0), 1.0, rtol=1e-12)


@settings(max_examples=100, deadline=None)
@given(
    h1=st.floats(0.05, 0.45),
    h2=st.floats(0.55, 0.95),
    p=st.floats(0.0, 1.0),
    s=st.floats(-3.0, 3.0),
)
def test_mgf_jensen_lower_bound(h1, h2, p, s):
    # E[e^(sH)] >= e^(s E[H])
    model = TwoPointHurst(h1=h1, h2=h2, p=p)
    mean = p * h1 + (1.0 - p) * h2
    assert mgf(model, s) >= math.exp(s * mean) * (1.0 - 1e-12)


def test_pdf_eval_tabulated():
    assert_allclose(pdf_eval(UNIFORM, 0.45), 2.0, rtol=1e-14)
    assert pdf_eval(UNIFORM, 0.1) == 0.0
    assert pdf_eval(UNIFORM, 0.9) == 0.0
    with pytest.raises(UnsupportedModelError):
        pdf_eval(DeterministicHurst(value=0.3), 0.3)
    with pytest.raises(UnsupportedModelError):
        pdf_eval(TwoPointHurst(h1=0.2, h2=0.8, p=0.5), 0.2)


def test_sample_deterministic_consumes_no_randomness():
    rng = np.random.default_rng(5)
    state_before = rng.bit_generator.state
    h = sample_h(DeterministicHurst(value=0.42), rng)
    assert h == 0.42
    assert rng.bit_generator.state == state_before


def test_sample_two_point_frequencies():
    model = TwoPointHurst(h1=0.25, h2=0.75, p=0.3)
    rng = np.random.default_rng(123)
    draws = np.array([sample_h(model, rng) for _ in range(20000)])
    assert set(np.unique(draws)) == {0.25, 0.75}
    frac = np.mean(draws == 0.25)
    # binomial: SE = sqrt(p(1-p)/N) ~ 0.0032; allow 4 SE
    assert abs(frac - 0.3) < 4.0 * math.sqrt(0.3 * 0.7 / 20000)


def test_sample_tabulated_support_and_mean():
    rng = np.random.default_rng(7)
    draws = np.array([sample_h(UNIFORM, rng) for _ in range(20000)])
    assert draws.min() >= 0.2 and draws.max() <= 0.7
    # uniform mean 0.45, SE = (b-a)/sqrt(12 N) ~ 0.001
    assert abs(draws.mean() - 0.45) < 4.0 * 0.5 / math.sqrt(12 * 20000)
    # ramp density on [0.2, 0.7]: f(x) = 8(x - 0.2), mean = 0.2 + 2/3 * 0.5
    ramp = TabulatedHurst(nodes=((0.2, 0.0), (0.7, 4.0)))
    draws = np.array([sample_h(ramp, rng) for _ in range(20000)])
    want = 0.2 + 2.0 / 3.0 * 0.5
    assert abs(draws.mean() - want) < 0.005


def test_model_dict_round_trip():
    models = [
        DeterministicHurst(value=0.37),
        TwoPointHurst(h1=0.25, h2=0.75, p=0.1),
        UNIFORM,
    ]
    for model in models:
        assert model_from_dict(model_to_dict(model)) == model


def test_model_from_dict_rejects_unknown():
    with pytest.raises(DomainError):
        model_from_dict({"type": "gaussian", "mu": 0.5})
