"""Random-Hurst mixtures: displacement law, mixture statistics, asymptotes."""

import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from randhurst import (
    DeterministicHurst,
    MixtureStat,
    ProcessKind,
    ProcessSpec,
    Regime,
    StatKind,
    TabulatedHurst,
    TwoPointHurst,
    eb_plateau,
    fbm_cov,
    fbmre_cov,
    fbmre_etamsd,
    fbmre_inc_sm,
    long_ratio_coeff,
    mixture_asymptotic,
    re_abs_moment,
    re_pdf,
    rlfbm_cov,
    rlfbm_etamsd,
    rlfbm_inc_sm,
    rlfbmre_cov,
    rlfbmre_etamsd,
    rlfbmre_inc_sm,
)
from randhurst.errors import DomainError

TP = TwoPointHurst(h1=0.25, h2=0.75, p=0.3)
FBM_TP = ProcessSpec(kind=ProcessKind.FBM, hurst=TP)
RL_TP = ProcessSpec(kind=ProcessKind.RLFBM, hurst=TP)


def test_two_point_mixture_is_convex_combination():
    t, tau = 2.0, 0.7
    want = 0.3 * rlfbm_cov(0.25, t, tau) + 0.7 * rlfbm_cov(0.75, t, tau)
    assert_allclose(rlfbmre_cov(TP, t, tau), want, rtol=1e-13)
    want = 0.3 * fbm_cov(0.25, t, tau) + 0.7 * fbm_cov(0.75, t, tau)
    assert_allclose(fbmre_cov(TP, t, tau), want, rtol=1e-13)
    want = 0.3 * rlfbm_etamsd(0.25, tau, 50.0) + 0.7 * rlfbm_etamsd(0.75, tau, 50.0)
    assert_allclose(rlfbmre_etamsd(TP, tau, 50.0), want, rtol=1e-13)
    want = 0.3 * rlfbm_inc_sm(0.25, t, tau) + 0.7 * rlfbm_inc_sm(0.75, t, tau)
    assert_allclose(rlfbmre_inc_sm(TP, t, tau), want, rtol=1e-13)


def test_deterministic_model_degenerates_to_fixed_h():
    det = DeterministicHurst(value=0.35)
    t, tau = 1.7, 0.4
    assert_allclose(fbmre_cov(det, t, tau), fbm_cov(0.35, t, tau), rtol=1e-12)
    assert_allclose(rlfbmre_cov(det, t, tau), rlfbm_cov(0.35, t, tau), rtol=1e-12)
    assert_allclose(fbmre_etamsd(det, tau), tau ** 0.7, rtol=1e-12)
    assert_allclose(
        rlfbmre_etamsd(det, tau, 80.0), rlfbm_etamsd(0.35, tau, 80.0), rtol=1e-12
    )
    assert_allclose(fbmre_inc_sm(det, t, tau), tau ** 0.7, rtol=1e-12)
    assert_allclose(
        rlfbmre_inc_sm(det, t, tau), rlfbm_inc_sm(0.35, t, tau), rtol=1e-12
    )


def test_tabulated_mixture_matches_uniform_integral():
    # uniform H on [0.3, 0.7]: E[t^(2H)] = (t^1.4 - t^0.6) / (0.8 ln t)
    dense = TabulatedHurst(nodes=tuple((h, 2.5) for h in np.linspace(0.3, 0.7, 801)))
    spec = ProcessSpec(kind=ProcessKind.FBM, hurst=dense)
    for t in (0.2, 3.0, 50.0):
        want = (t ** 1.4 - t ** 0.6) / (0.8 * math.log(t))
        assert_allclose(re_abs_moment(spec, 2.0, t), want, rtol=1e-5)


def test_fbmre_statistics_are_time_translation_free():
    # stationary increments: the increment moment depends on the lag only
    vals = {fbmre_inc_sm(TP, t, 0.3) for t in (0.0, 1.0, 9.0)}
    assert len(vals) == 1
    assert_allclose(vals.pop(), fbmre_etamsd(TP, 0.3), rtol=1e-14)


def test_re_pdf_normalization_and_shape():
    x = np.linspace(-40.0, 40.0, 20001)
    for spec in (FBM_TP, RL_TP):
        pdf = re_pdf(spec, x, t=3.0)
        mass = np.trapezoid(pdf, x)
        assert_allclose(mass, 1.0, rtol=1e-6)
        assert_allclose(pdf, pdf[::-1], rtol=1e-12)  # symmetric in x
    # explicit two-Gaussian mixture at one point
    t, xv = 3.0, 0.8
    want = 0.0
    for h, w in ((0.25, 0.3), (0.75, 0.7)):
        var = t ** (2.0 * h)
        want += w * math.exp(-xv * xv / (2.0 * var)) / math.sqrt(2.0 * math.pi * var)
    assert_allclose(float(re_pdf(FBM_TP, xv, t)), want, rtol=1e-13)


def test_re_abs_moment_values():
    # q = 2 reduces to the mean of t^(2H)
    assert_allclose(
        re_abs_moment(FBM_TP, 2.0, 10.0),
        0.3 * 10.0 ** 0.5 + 0.7 * 10.0 ** 1.5,
        rtol=1e-13,
    )
    # general q: E|x|^q = 2^(q/2) Gamma((q+1)/2) / sqrt(pi) * E[t^(qH)]
    q, t = 3.0, 2.0
    c_q = 2.0 ** (q / 2.0) * math.gamma((q + 1.0) / 2.0) / math.sqrt(math.pi)
    want = c_q * (0.3 * t ** (q * 0.25) + 0.7 * t ** (q * 0.75))
    assert_allclose(re_abs_moment(FBM_TP, q, t), want, rtol=1e-13)
    with pytest.raises(DomainError):
        re_abs_moment(FBM_TP, -0.5, 1.0)


def test_second_moment_slope_accelerates():
    # log-log slope of E[x^2](t) climbs from 2*h1 toward 2*h2
    spec = ProcessSpec(kind=ProcessKind.FBM, hurst=TwoPointHurst(0.25, 0.75, 0.5))

    def slope(t_lo, t_hi):
        lo = re_abs_moment(spec, 2.0, t_lo)
        hi = re_abs_moment(spec, 2.0, t_hi)
        return math.log(hi / lo) / math.log(t_hi / t_lo)

    assert abs(slope(1e-7, 1e-6) - 0.5) < 0.02
    assert abs(slope(1e6, 1e7) - 1.5) < 0.02
    assert 0.5 < slope(0.5, 2.0) < 1.5


def test_mixture_asymptotic_second_moment():
    m = TwoPointHurst(h1=0.25, h2=0.75, p=0.3)
    t = 1e-4
    want = 0.3 * t ** 0.5
    got = mixture_asymptotic(
        MixtureStat(StatKind.SECOND_MOMENT, Regime.SHORT_RATIO), ProcessKind.FBM, m, t=t
    )
    assert_allclose(got, want, rtol=1e-14)
    t = 1e4
    want = 0.7 * t ** 1.5
    got = mixture_asymptotic(
        MixtureStat(StatKind.SECOND_MOMENT, Regime.LONG_RATIO), ProcessKind.RLFBM, m, t=t
    )
    assert_allclose(got, want, rtol=1e-14)


def test_mixture_asymptotic_etamsd_single_terms():
    m = TwoPointHurst(h1=0.25, h2=0.75, p=0.3)
    tau = 0.01
    got = mixture_asymptotic(
        MixtureStat(StatKind.ETAMSD, Regime.SHORT_RATIO), ProcessKind.FBM, m, tau=tau
    )
    assert_allclose(got, 0.3 * tau ** 0.5, rtol=1e-14)
    got = mixture_asymptotic(
        MixtureStat(StatKind.ETAMSD, Regime.SHORT_RATIO), ProcessKind.RLFBM, m, tau=tau
    )
    assert_allclose(got, 0.3 * long_ratio_coeff(0.25) * tau ** 0.5, rtol=1e-14)
    tau = 100.0
    got = mixture_asymptotic(
        MixtureStat(StatKind.ETAMSD, Regime.LONG_RATIO), ProcessKind.RLFBM, m, tau=tau
    )
    assert_allclose(got, 0.7 * long_ratio_coeff(0.75) * tau ** 1.5, rtol=1e-14)


def test_mixture_asymptotic_increment_moment():
    m = TwoPointHurst(h1=0.25, h2=0.75, p=0.3)
    tau = 0.02
    got = mixture_asymptotic(
        MixtureStat(StatKind.INC_SM, Regime.SHORT_RATIO), ProcessKind.RLFBM, m, tau=tau
    )
    assert_allclose(got, 0.3 * tau ** 0.5 + 0.7 * tau ** 1.5, rtol=1e-14)
    got = mixture_asymptotic(
        MixtureStat(StatKind.INC_SM, Regime.LONG_RATIO), ProcessKind.RLFBM, m, tau=tau
    )
    want = 0.3 * long_ratio_coeff(0.25) * tau ** 0.5 + 0.7 * long_ratio_coeff(0.75) * tau ** 1.5
    assert_allclose(got, want, rtol=1e-14)
    # the stationary kind's increment moment is exact in the lag: no asymptote
    with pytest.raises(DomainError):
        mixture_asymptotic(
            MixtureStat(StatKind.INC_SM, Regime.SHORT_RATIO), ProcessKind.FBM, m, tau=tau
        )


def test_mixture_asymptotic_cov_weights_fixed_h_brackets():
    from randhurst import cov_asymptotic

    m = TwoPointHurst(h1=0.25, h2=0.75, p=0.3)
    t, tau = 1e-3, 1.0
    got = mixture_asymptotic(
        MixtureStat(StatKind.COV, Regime.SHORT_RATIO), ProcessKind.RLFBM, m, t=t, tau=tau
    )
    want = 0.3 * cov_asymptotic(ProcessKind.RLFBM, 0.25, t, tau, Regime.SHORT_RATIO)
    want += 0.7 * cov_asymptotic(ProcessKind.RLFBM, 0.75, t, tau, Regime.SHORT_RATIO)
    assert_allclose(got, want, rtol=1e-13)


def test_mixture_asymptotic_requires_two_point_and_arguments():
    from randhurst.errors import UnsupportedModelError

    with pytest.raises(UnsupportedModelError):
        mixture_asymptotic(
            MixtureStat(StatKind.ETAMSD, Regime.SHORT_RATIO),
            ProcessKind.FBM,
            DeterministicHurst(value=0.3),
            tau=0.1,
        )
    with pytest.raises(DomainError):
        mixture_asymptotic(
            MixtureStat(StatKind.ETAMSD, Regime.SHORT_RATIO), ProcessKind.FBM, TP
        )
    with pytest.raises(DomainError):
        mixture_asymptotic(
            MixtureStat(StatKind.COV, Regime.SHORT_RATIO), ProcessKind.FBM, TP, tau=0.1
        )


def test_eb_plateau_values():
    tau = 0.1
    a, b = tau ** 0.5, tau ** 1.5
    p = 0.3
    want = (p * a * a + (1 - p) * b * b) / (p * a + (1 - p) * b) ** 2 - 1.0
    assert_allclose(eb_plateau(TP, tau), want, rtol=1e-13)
    # a deterministic exponent has no trajectory-to-trajectory spread
    assert eb_plateau(DeterministicHurst(value=0.4), tau) == pytest.approx(0.0, abs=1e-14)
