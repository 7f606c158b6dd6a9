"""Figure presets: file output, CSV parity with the library, PNG rendering."""

import pytest
from numpy.testing import assert_allclose

from randhurst import TwoPointHurst, fbmre_cov, read_curves
from randhurst.errors import ConfigError
from randhurst.figures import COV_TAU, FIGURE_PRESETS, build_figure_curves, run_figure


def test_preset_catalogue():
    names = sorted(FIGURE_PRESETS)
    assert len(names) == 12
    assert names[0] == "fig1-p01" and names[-1] == "fig4-p09"
    for name, preset in FIGURE_PRESETS.items():
        assert preset.name == name
        assert len(preset.abscissas) == 25
        assert preset.panel in ("cov", "tamsd")


def test_unknown_preset_rejected(tmp_path):
    with pytest.raises(ConfigError):
        run_figure("fig9-p05", out_dir=str(tmp_path))


def test_run_figure_outputs(tmp_path):
    res = run_figure("fig1-p05", out_dir=str(tmp_path))
    want = {
        "fig1-p05_fbmre.csv",
        "fig1-p05_rlfbmre.csv",
        "fig1-p05_asymptotes.csv",
        "fig1-p05.png",
        "fig1-p05_manifest.json",
    }
    assert set(res.files) == want
    for name in want:
        assert (tmp_path / name).is_file()
    assert (tmp_path / "fig1-p05.png").stat().st_size > 1000

    (exact,) = read_curves(tmp_path / "fig1-p05_fbmre.csv")
    assert exact.stat_name == "fbmre_cov"
    assert len(exact.points) == 25
    overlays = read_curves(tmp_path / "fig1-p05_asymptotes.csv")
    assert sorted(c.stat_name for c in overlays) == [
        "fbmre_cov_asymptote_short",
        "rlfbmre_cov_asymptote_short",
    ]


def test_fig1_exact_curve_matches_library_and_asymptote_converges():
    preset = FIGURE_PRESETS["fig1-p09"]
    curves = build_figure_curves(preset)
    model = TwoPointHurst(h1=0.25, h2=0.75, p=0.9)
    (exact,) = curves["fbmre"]
    for pt in exact.points:
        assert_allclose(pt.value, fbmre_cov(model, pt.abscissa, COV_TAU), rtol=1e-15)
    overlay = curves["asymptotes"][0]
    # smallest t/tau ratio: the short-ratio expansion is tightest there
    rel = abs(overlay.values[0] - exact.values[0]) / exact.values[0]
    assert rel < 1e-3
    rel_far = abs(overlay.values[-1] - exact.values[-1]) / exact.values[-1]
    assert rel < rel_far


def test_tamsd_panels_use_horizon():
    short = build_figure_curves(FIGURE_PRESETS["fig3-p05"])
    (rl,) = short["rlfbmre"]
    assert rl.stat_name == "rlfbmre_etamsd"
    assert rl.abscissas[0] == pytest.approx(1e-4)
    long = build_figure_curves(FIGURE_PRESETS["fig4-p05"])
    (rl_long,) = long["rlfbmre"]
    assert rl_long.abscissas[-1] == pytest.approx(1e3)
