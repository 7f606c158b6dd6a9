"""Self-verification suite: nine numbered criteria covering the analytic
formulas against independent oracles, the preset figures against their
asymptotes, and simulated ensembles against the exact curves.

Levels: "fast" runs the analytic and figure criteria (1-6, 9) in about a
minute; "full" adds the Monte Carlo criteria (7, 8) and takes several
minutes.  Every check prints one line; checks marked non-gating report a
known quantitative limitation without failing the run (see the notes on
those checks).  run_verify returns a report object and, given an output
directory, writes verify_report.json plus the figure files produced while
checking criterion 6.

Criterion 9 carries one check that is expected to fail: over the fitted
short-time window the mixture covariance of the stationary-increment kind
has log-log slope 2*H1 = 0.5 (the H1 = 0.25 component dominates), so the
nominal slope target of 1 from the small-ratio order comparison is not
attainable.  The check is kept gating so the discrepancy stays visible.
"""

from __future__ import annotations

import json
import math
import tempfile
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from . import oracle, specfun
from .analytic import ProcessKind, Regime, long_ratio_coeff, rlfbm_cov, rlfbm_etamsd, rlfbm_inc_sm
from .estimate import emsd, inc_sm_hat, mean_tamsd, eb_parameter
from .figures import FIGURE_PRESETS, build_figure_curves, run_figure
from .hurst import DeterministicHurst, TwoPointHurst
from .randomized import (
    ProcessSpec,
    eb_plateau,
    fbmre_cov,
    fbmre_etamsd,
    fbmre_inc_sm,
    re_abs_moment,
    rlfbmre_cov,
    rlfbmre_etamsd,
    rlfbmre_inc_sm,
)
from .simulate import TimeGrid, simulate_ensemble

VERIFY_LEVELS = ("fast", "full")

# grids shared by the oracle comparisons
_H_GRID = (0.1, 0.25, 0.5, 0.75, 0.9)
_Z_GRID = (-1.0e4, -10.0, -1.0, 0.0, 0.3, 0.6, 0.9, 0.99)
_TT_GRID = (0.1, 1.0, 10.0)

_TWO_POINT = TwoPointHurst(h1=0.25, h2=0.75, p=0.5)


@dataclass(frozen=True)
class CheckResult:
    """One verification line: a measured number against its bound."""

    criterion: int
    name: str
    measured: float
    bound: float
    passed: bool
    gating: bool = True
    note: str = ""


@dataclass
class VerifyReport:
    level: str
    checks: list[CheckResult] = field(default_factory=list)
    elapsed_s: float = 0.0

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks if c.gating)

    def to_dict(self) -> dict:
        return {
            "level": self.level,
            "elapsed_s": self.elapsed_s,
            "passed": self.passed,
            "checks": [asdict(c) for c in self.checks],
        }


def _rel(got: float, want: float) -> float:
    return abs(got - want) / max(abs(want), 1e-300)


def _check(criterion, name, measured, bound, gating=True, note="") -> CheckResult:
    return CheckResult(
        criterion=criterion,
        name=name,
        measured=float(measured),
        bound=float(bound),
        passed=bool(measured <= bound),
        gating=gating,
        note=note,
    )


def criterion_1() -> list[CheckResult]:
    """Gauss-2F1 evaluator against the compensated reference series on the
    two parameter families used by the covariance and TAMSD formulas."""
    worst = 0.0
    for h in _H_GRID:
        families = (
            (0.5 - h, 1.0, 1.5 + h),
            (0.5 + h, 0.5 - h, 2.5 + h),
        )
        for a, b, c in families:
            for z in _Z_GRID:
                got = specfun.hyp2f1(a, b, c, z)
                want = oracle.series_2f1_ref(a, b, c, z)
                worst = max(worst, _rel(got, want))
    return [_check(1, "hypergeometric vs reference series", worst, 1e-10)]


def criterion_2() -> list[CheckResult]:
    worst = 0.0
    for h in _H_GRID:
        for t in _TT_GRID:
            for tau in _TT_GRID:
                got = rlfbm_cov(h, t, tau)
                want = oracle.quad_ito_cov(h, t, tau)
                worst = max(worst, _rel(got, want))
    return [_check(2, "covariance vs isometry quadrature", worst, 1e-7)]


def criterion_3() -> list[CheckResult]:
    worst = 0.0
    for h in _H_GRID:
        for t in _TT_GRID:
            for tau in _TT_GRID:
                closed = rlfbm_inc_sm(h, t, tau, form="closed")
                kernel = rlfbm_inc_sm(h, t, tau, form="kernel")
                worst = max(worst, _rel(closed, kernel))
    return [_check(3, "increment moment: kernel vs closed form", worst, 1e-8)]


def criterion_4() -> list[CheckResult]:
    worst = 0.0
    for h in (0.25, 0.75):
        for tau in (0.1, 1.0):
            for horizon in (100.0, 20000.0):
                got = rlfbm_etamsd(h, tau, horizon)
                want = oracle.quad_etamsd(h, tau, horizon)
                worst = max(worst, _rel(got, want))
    checks = [_check(4, "expected TAMSD vs nested quadrature", worst, 1e-6)]
    bm = max(
        _rel(rlfbm_etamsd(0.5, tau, horizon), tau)
        for tau in (0.1, 2.0)
        for horizon in (100.0, 20000.0)
    )
    checks.append(_check(4, "Brownian TAMSD identity", bm, 1e-12))
    return checks


def criterion_5() -> list[CheckResult]:
    h = 0.25
    # coefficient evaluated through the oracle's log-gamma, not the library's
    c_ref = (
        2.0
        * h
        * math.exp(2.0 * oracle.ln_gamma_ref(0.5 + h) - oracle.ln_gamma_ref(1.0 + 2.0 * h))
        / math.sin(math.pi * h)
    )
    ratio = rlfbm_etamsd(h, 0.1, 20000.0) / 0.1 ** (2.0 * h)
    checks = [_check(5, "long-lag TAMSD coefficient", _rel(ratio, c_ref), 1e-2)]
    checks.append(
        _check(5, "coefficient closed form vs oracle", _rel(long_ratio_coeff(h), c_ref), 1e-12)
    )
    return checks


def criterion_6(fig_dir: Path) -> list[CheckResult]:
    """Preset figures: every file is produced, the covariance asymptotes
    track the exact curves across the plotted windows, and the TAMSD
    asymptotes match at the extreme plotted lags.  The long-lag TAMSD
    overlay of the Riemann-Liouville kind is reported without gating: at
    horizon T = 20000 the finite-horizon correction keeps the exact curve
    about 5 percent above the single-term asymptote at lag 1e3."""
    start = time.perf_counter()
    missing = 0
    for name in sorted(FIGURE_PRESETS):
        result = run_figure(name, out_dir=str(fig_dir))
        for fname in result.files:
            if not (fig_dir / fname).exists():
                missing += 1
    cov_dev = 0.0
    fig3_dev = 0.0
    fig4_fbm_dev = 0.0
    fig4_rl_dev = 0.0
    for name, preset in FIGURE_PRESETS.items():
        curves = build_figure_curves(preset)
        exact = {
            "fbmre": np.asarray(curves["fbmre"][0].values),
            "rlfbmre": np.asarray(curves["rlfbmre"][0].values),
        }
        asym = {
            c.stat_name.split("_")[0]: np.asarray(c.values)
            for c in curves["asymptotes"]
        }
        if preset.panel == "cov":
            for stem in ("fbmre", "rlfbmre"):
                dev = np.max(np.abs(asym[stem] - exact[stem]) / exact[stem])
                cov_dev = max(cov_dev, float(dev))
        elif preset.regime is Regime.SHORT_RATIO:
            for stem in ("fbmre", "rlfbmre"):
                dev = abs(asym[stem][0] - exact[stem][0]) / exact[stem][0]
                fig3_dev = max(fig3_dev, float(dev))
        else:
            dev_f = abs(asym["fbmre"][-1] - exact["fbmre"][-1]) / exact["fbmre"][-1]
            dev_r = abs(asym["rlfbmre"][-1] - exact["rlfbmre"][-1]) / exact["rlfbmre"][-1]
            fig4_fbm_dev = max(fig4_fbm_dev, float(dev_f))
            fig4_rl_dev = max(fig4_rl_dev, float(dev_r))
    elapsed = time.perf_counter() - start
    return [
        _check(6, "figure files produced (missing count)", missing, 0),
        _check(6, "covariance asymptote deviation, plotted windows", cov_dev, 2e-2),
        _check(6, "short-lag TAMSD asymptote deviation at lag 1e-4", fig3_dev, 2e-2),
        _check(
            6,
            "long-lag TAMSD asymptote deviation at lag 1e3, stationary kind",
            fig4_fbm_dev,
            2e-2,
        ),
        _check(
            6,
            "long-lag TAMSD asymptote deviation at lag 1e3, nonstationary kind",
            fig4_rl_dev,
            2e-2,
            gating=False,
            note=(
                "finite-horizon correction at T = 20000; the exact curve is the "
                "reference, the single-term overlay is a guide"
            ),
        ),
        _check(6, "figure suite wall time (s)", elapsed, 60.0),
    ]


# criterion 7 layout: fixed seeds, 2000 paths of 1024 steps each
_C7_SEEDS = {"fbm": 777, "rlfbm": 778}
_C7_GRID = TimeGrid(n=1024, dt=0.05)
_C7_PATHS = 2000
_C7_EMSD_IDX = (1, 2, 4, 8, 16, 32, 64, 128, 256, 512)
_C7_TAMSD_LAGS = (1, 2, 4, 8, 16, 32, 64, 128)
_C7_INC_PAIRS = (
    (1, 1), (2, 1), (4, 2), (8, 4), (16, 8),
    (32, 16), (64, 32), (128, 64), (256, 128), (512, 256),
)


def criterion_7(threads: int = 1) -> list[CheckResult]:
    """Ensemble consistency: simulated ensemble statistics against the exact
    curves, in standard-error units."""
    checks = []
    dt = _C7_GRID.dt
    horizon = _C7_GRID.horizon
    for kind, label in ((ProcessKind.FBM, "stationary"), (ProcessKind.RLFBM, "nonstationary")):
        spec = ProcessSpec(kind=kind, hurst=_TWO_POINT)
        ens = simulate_ensemble(
            spec, _C7_GRID, _C7_PATHS, _C7_SEEDS[kind.value], threads=threads
        )
        fbm = kind is ProcessKind.FBM

        curve = emsd(ens, list(_C7_EMSD_IDX))
        z = max(
            abs(pt.value - re_abs_moment(spec, 2.0, pt.abscissa)) / pt.stderr
            for pt in curve.points
        )
        checks.append(_check(7, f"ensemble MSD z-score, {label} kind", z, 3.0))

        curve = mean_tamsd(ens, list(_C7_TAMSD_LAGS))
        z = 0.0
        for pt in curve.points:
            want = (
                fbmre_etamsd(_TWO_POINT, pt.abscissa)
                if fbm
                else rlfbmre_etamsd(_TWO_POINT, pt.abscissa, horizon)
            )
            z = max(z, abs(pt.value - want) / pt.stderr)
        checks.append(_check(7, f"ensemble TAMSD z-score, {label} kind", z, 3.0))

        z = 0.0
        for i, k in _C7_INC_PAIRS:
            pt = inc_sm_hat(ens, i, k)
            want = (
                fbmre_inc_sm(_TWO_POINT, i * dt, k * dt)
                if fbm
                else rlfbmre_inc_sm(_TWO_POINT, i * dt, k * dt)
            )
            z = max(z, abs(pt.value - want) / pt.stderr)
        checks.append(_check(7, f"increment moment z-score, {label} kind", z, 4.0))
    return checks


def criterion_8(threads: int = 1) -> list[CheckResult]:
    """Ergodicity breaking: the EB parameter of the fixed-H stationary kind
    decays as the trajectories lengthen, and with a two-point random H it
    approaches the closed-form plateau instead."""
    spec = ProcessSpec(kind=ProcessKind.FBM, hurst=DeterministicHurst(value=0.7))
    ebs = {}
    for n, seed in ((1024, 8801), (16384, 8802)):
        ens = simulate_ensemble(spec, TimeGrid(n=n, dt=1.0), 512, seed, threads=threads)
        ebs[n] = eb_parameter(ens, 1)
    ratio = ebs[1024] / ebs[16384]
    checks = [
        CheckResult(
            criterion=8,
            name="EB decay ratio, trajectory length x16",
            measured=float(ratio),
            bound=4.0,
            passed=bool(ratio >= 4.0),
            note="bound is a minimum",
        )
    ]

    spec = ProcessSpec(kind=ProcessKind.FBM, hurst=_TWO_POINT)
    grid = TimeGrid(n=16384, dt=0.1)
    ens = simulate_ensemble(spec, grid, 2000, 8901, threads=threads)
    eb = eb_parameter(ens, 1)
    plateau = eb_plateau(_TWO_POINT, grid.dt)
    checks.append(
        _check(8, "EB plateau deviation, two-point mixture", _rel(eb, plateau), 0.1)
    )
    return checks


def criterion_9() -> list[CheckResult]:
    """Fitted log-log slopes of the mixture covariance at short times.  The
    nonstationary kind follows H1 + 1/2; the check against slope 1 for the
    stationary kind encodes the small-ratio order comparison and fails,
    because the t^(2*H1) term with H1 = 0.25 dominates the linear term as
    t -> 0 (measured slope about 0.5)."""
    tau = 0.1
    ts = tau * np.logspace(-4.0, -3.0, 9)
    rl = [rlfbmre_cov(_TWO_POINT, float(t), tau) for t in ts]
    fb = [fbmre_cov(_TWO_POINT, float(t), tau) for t in ts]
    slope_rl = float(np.polyfit(np.log(ts), np.log(rl), 1)[0])
    slope_fb = float(np.polyfit(np.log(ts), np.log(fb), 1)[0])
    return [
        _check(
            9,
            "short-time covariance slope, nonstationary kind",
            abs(slope_rl - 0.75),
            0.05,
            note=f"slope {slope_rl:.4f}, target 0.75",
        ),
        _check(
            9,
            "short-time covariance slope, stationary kind",
            abs(slope_fb - 1.0),
            0.05,
            note=(
                f"slope {slope_fb:.4f}, nominal target 1; expected failure, the "
                "t^(2*H1) term dominates (see README)"
            ),
        ),
    ]


def run_verify(
    level: str = "fast", out_dir: str | None = None, threads: int = 1
) -> VerifyReport:
    """Run the verification suite at the given level; write figure output
    and verify_report.json under out_dir when one is given."""
    if level not in VERIFY_LEVELS:
        raise ValueError(f"level must be one of {VERIFY_LEVELS}, got {level!r}")
    start = time.perf_counter()
    report = VerifyReport(level=level)
    with tempfile.TemporaryDirectory() as tmp:
        if out_dir is not None:
            base = Path(out_dir)
            base.mkdir(parents=True, exist_ok=True)
            fig_dir = base / "figures"
        else:
            base = None
            fig_dir = Path(tmp) / "figures"
        fig_dir.mkdir(parents=True, exist_ok=True)
        report.checks.extend(criterion_1())
        report.checks.extend(criterion_2())
        report.checks.extend(criterion_3())
        report.checks.extend(criterion_4())
        report.checks.extend(criterion_5())
        report.checks.extend(criterion_6(fig_dir))
        if level == "full":
            report.checks.extend(criterion_7(threads=threads))
            report.checks.extend(criterion_8(threads=threads))
        report.checks.extend(criterion_9())
    report.elapsed_s = time.perf_counter() - start
    if out_dir is not None:
        path = Path(out_dir) / "verify_report.json"
        path.write_text(json.dumps(report.to_dict(), indent=2) + "\n", encoding="utf-8")
    return report


def format_report(report: VerifyReport) -> str:
    lines = []
    for c in report.checks:
        if c.passed:
            status = "PASS"
        else:
            status = "FAIL" if c.gating else "WARN"
        line = (
            f"[{status}] C{c.criterion} {c.name}: "
            f"measured {c.measured:.6g} vs bound {c.bound:.6g}"
        )
        if c.note:
            line += f"  ({c.note})"
        lines.append(line)
    gating = [c for c in report.checks if c.gating]
    failed = [c for c in gating if not c.passed]
    verdict = "PASSED" if not failed else f"FAILED ({len(failed)} of {len(gating)} gating checks)"
    lines.append(f"verify level={report.level}: {verdict} in {report.elapsed_s:.1f} s")
    return "\n".join(lines)
