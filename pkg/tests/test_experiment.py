"""Experiment configs, CSV round trips, and the run_experiment pipeline."""

import json
import os

import pytest
from numpy.testing import assert_allclose

from randhurst import (
    DeterministicHurst,
    ExperimentConfig,
    ProcessKind,
    ProcessSpec,
    TabulatedHurst,
    TimeGrid,
    TwoPointHurst,
    config_from_dict,
    config_to_dict,
    fbmre_etamsd,
    load_config,
    read_curves,
    resolve_out_dir,
    rlfbmre_cov,
    run_experiment,
)
from randhurst.errors import ConfigError
from randhurst.experiment import ENV_OUT, write_curves

TP = TwoPointHurst(h1=0.25, h2=0.75, p=0.5)
FBM_TP = ProcessSpec(kind=ProcessKind.FBM, hurst=TP)
RL_TP = ProcessSpec(kind=ProcessKind.RLFBM, hurst=TP)


def _config(**overrides) -> ExperimentConfig:
    base = dict(
        process=FBM_TP,
        grid=TimeGrid(n=32, dt=0.25),
        ensemble_size=8,
        master_seed=11,
        lags=(1, 2, 4),
        statistics=("tamsd",),
    )
    base.update(overrides)
    return ExperimentConfig(**base)


def test_config_dict_round_trip_minimal_and_full():
    minimal = _config()
    assert config_from_dict(config_to_dict(minimal)) == minimal
    full = _config(
        statistics=("cov", "analytic-overlay"),
        tau=0.5,
        horizon=8.0,
        output_path="runs/a",
    )
    data = config_to_dict(full)
    assert data["T"] == 8.0 and "horizon" not in data
    assert config_from_dict(data) == full


def test_config_json_file_round_trip(tmp_path):
    cfg = _config(statistics=("emsd", "asymptote-overlay"))
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps(config_to_dict(cfg)), encoding="utf-8")
    assert load_config(path) == cfg


@pytest.mark.parametrize(
    "overrides",
    [
        {"statistics": ()},
        {"statistics": ("msd",)},
        {"statistics": ("tamsd", "tamsd")},
        {"lags": ()},
        {"lags": (2, 2)},
        {"lags": (0, 1)},
        {"lags": (1, 32)},
        {"horizon": 9.0},
        {"statistics": ("cov",)},
        {"statistics": ("cov",), "tau": 0.3},
        {"statistics": ("inc_sm",), "lags": (1, 31), "tau": 0.5},
        {"ensemble_size": 0},
        {"ensemble_size": -1},
        {
            "statistics": ("emsd", "asymptote-overlay"),
            "process": ProcessSpec(
                kind=ProcessKind.FBM,
                hurst=TabulatedHurst(nodes=((0.3, 2.5), (0.7, 2.5))),
            ),
        },
        {"statistics": ("eb", "analytic-overlay"), "process": RL_TP},
    ],
)
def test_config_validation_rejects(overrides):
    with pytest.raises(ConfigError):
        _config(**overrides)


def test_config_accepts_consistent_horizon_and_grid_tau():
    cfg = _config(statistics=("cov", "inc_sm"), tau=0.5, horizon=8.0)
    assert cfg.tau_steps == 2
    with pytest.raises(ConfigError):
        _config().tau_steps


def test_config_from_dict_diagnostics():
    with pytest.raises(ConfigError):
        config_from_dict([1, 2])
    with pytest.raises(ConfigError):
        config_from_dict({"process": {"kind": "levy"}})


def test_write_read_curves_preserves_floats(tmp_path):
    cfg = _config(ensemble_size=0, statistics=("tamsd", "analytic-overlay"))
    result = run_experiment(cfg, out_dir=str(tmp_path))
    assert result.files == ("tamsd_analytic.csv",)
    (curve,) = result.curves
    (back,) = read_curves(tmp_path / "tamsd_analytic.csv")
    # %.17g round-trips every float64 exactly
    assert back.stat_name == curve.stat_name
    assert list(back.values) == list(curve.values)
    assert list(back.abscissas) == list(curve.abscissas)
    assert all(p.stderr is None for p in back.points)


def test_read_curves_rejects_foreign_file(tmp_path):
    path = tmp_path / "junk.csv"
    path.write_text("a,b\n1,2\n", encoding="utf-8")
    with pytest.raises(ConfigError):
        read_curves(path)


def test_write_curves_groups_by_name(tmp_path):
    cfg = _config(ensemble_size=0, statistics=("emsd", "analytic-overlay", "asymptote-overlay"))
    res = run_experiment(cfg, out_dir=str(tmp_path))
    assert sorted(res.files) == [
        "emsd_analytic.csv",
        "emsd_asymptote_long.csv",
        "emsd_asymptote_short.csv",
    ]
    merged = tmp_path / "merged.csv"
    write_curves(merged, res.curves)
    assert len(read_curves(merged)) == 3


def test_run_experiment_files_and_manifest(tmp_path):
    cfg = _config(
        process=RL_TP,
        grid=TimeGrid(n=16, dt=0.5),
        ensemble_size=6,
        lags=(1, 2, 3),
        statistics=("cov", "analytic-overlay"),
        tau=1.0,
    )
    res = run_experiment(cfg, out_dir=str(tmp_path))
    manifest = json.loads(res.manifest_path.read_text(encoding="utf-8"))
    assert manifest["version"]
    assert sorted(manifest["files"]) == sorted(res.files)
    for name in res.files:
        assert (tmp_path / name).is_file()
    assert config_from_dict(manifest["config"]) == cfg
    # overlay values match direct library calls on the lag-time abscissas
    (overlay,) = read_curves(tmp_path / "cov_analytic.csv")
    for pt in overlay.points:
        assert_allclose(pt.value, rlfbmre_cov(TP, pt.abscissa, 1.0), rtol=1e-15)


def test_run_experiment_reproducible_bytes(tmp_path):
    cfg = _config(statistics=("tamsd", "analytic-overlay"))
    a = tmp_path / "a"
    b = tmp_path / "b"
    run_experiment(cfg, out_dir=str(a))
    run_experiment(cfg, out_dir=str(b))
    assert (a / "tamsd.csv").read_bytes() == (b / "tamsd.csv").read_bytes()
    assert (a / "tamsd_analytic.csv").read_bytes() == (b / "tamsd_analytic.csv").read_bytes()


def test_run_experiment_seed_changes_mc_not_overlay(tmp_path):
    cfg = _config(statistics=("tamsd", "analytic-overlay"))
    other = _config(statistics=("tamsd", "analytic-overlay"), master_seed=12)
    a = tmp_path / "a"
    b = tmp_path / "b"
    run_experiment(cfg, out_dir=str(a))
    run_experiment(other, out_dir=str(b))
    assert (a / "tamsd.csv").read_bytes() != (b / "tamsd.csv").read_bytes()
    assert (a / "tamsd_analytic.csv").read_bytes() == (b / "tamsd_analytic.csv").read_bytes()


def test_overlay_only_run_matches_library(tmp_path):
    cfg = _config(ensemble_size=0, statistics=("tamsd", "analytic-overlay"))
    res = run_experiment(cfg, out_dir=str(tmp_path))
    (curve,) = res.curves
    assert curve.stat_name == "tamsd_analytic"
    for pt in curve.points:
        assert_allclose(pt.value, fbmre_etamsd(TP, pt.abscissa), rtol=1e-15)


def test_resolve_out_dir_precedence(tmp_path, monkeypatch):
    env_dir = tmp_path / "env"
    cfg_dir = tmp_path / "cfg"
    flag_dir = tmp_path / "flag"
    monkeypatch.setenv(ENV_OUT, str(env_dir))
    assert resolve_out_dir(str(flag_dir), str(cfg_dir)) == flag_dir
    assert resolve_out_dir(None, str(cfg_dir)) == cfg_dir
    assert resolve_out_dir(None, None) == env_dir
    monkeypatch.delenv(ENV_OUT)
    monkeypatch.chdir(tmp_path)
    assert os.path.samefile(resolve_out_dir(None, None), tmp_path)
