"""The verification harness: oracle gating, report plumbing, fault injection."""

import json

import pytest

from randhurst import specfun, verify


def test_criterion_1_and_3_and_5_pass():
    for checks in (verify.criterion_1(), verify.criterion_3(), verify.criterion_5()):
        assert checks and all(c.passed for c in checks), [
            (c.name, c.measured, c.bound) for c in checks
        ]


def test_criterion_2_detects_injected_formula_fault(monkeypatch):
    baseline = verify.criterion_2()
    assert all(c.passed for c in baseline)

    real = specfun.hyp2f1

    def skewed(a, b, c, z):
        return real(a, b, c, z) * (1.0 + 1e-4)

    # the covariance formula resolves hyp2f1 through the module attribute,
    # so the quadrature oracle must flag the perturbation
    monkeypatch.setattr(specfun, "hyp2f1", skewed)
    poisoned = verify.criterion_2()
    assert not all(c.passed for c in poisoned)
    assert max(c.measured for c in poisoned) > 1e-6


def test_run_verify_fast_report(tmp_path):
    report = verify.run_verify("fast", out_dir=str(tmp_path))
    assert report.level == "fast"
    assert report.checks
    # the stationary-kind short-time slope bound is unattainable; the report
    # must carry exactly that one gating failure
    failing = [c for c in report.checks if c.gating and not c.passed]
    assert [c.criterion for c in failing] == [9]
    assert report.passed is False

    path = tmp_path / "verify_report.json"
    data = json.loads(path.read_text(encoding="utf-8"))
    assert data["level"] == "fast"
    assert data["passed"] is False
    assert len(data["checks"]) == len(report.checks)
    assert (tmp_path / "figures").is_dir()

    text = verify.format_report(report)
    assert "[FAIL] C9" in text
    assert "[WARN]" in text  # the long-lag nonstationary overlay deviation
    assert text.strip().endswith("s")


def test_run_verify_rejects_unknown_level():
    with pytest.raises(ValueError):
        verify.run_verify("paranoid")


def test_format_report_lines_cover_all_checks():
    report = verify.VerifyReport(level="fast")
    report.checks.append(
        verify.CheckResult(
            criterion=1, name="a", measured=0.0, bound=1.0, passed=True
        )
    )
    report.checks.append(
        verify.CheckResult(
            criterion=2, name="b", measured=2.0, bound=1.0, passed=False,
            gating=False, note="advisory",
        )
    )
    text = verify.format_report(report)
    assert "[PASS] C1 a" in text
    assert "[WARN] C2 b" in text and "(advisory)" in text
    assert "PASSED" in text.splitlines()[-1]
