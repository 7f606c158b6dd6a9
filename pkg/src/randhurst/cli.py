"""Command line interface.

Four subcommands:

* ``analytic``  evaluate one closed-form statistic at a point and print it
  with 17 significant digits;
* ``simulate``  run an experiment config (JSON) and write its curve CSVs
  plus manifest;
* ``figure``    build a preset comparison figure (curve CSVs and a PNG);
* ``verify``    run the self-verification suite and exit nonzero if a
  gating check fails.

Output directories resolve in the order: the --out flag, the config's
output_path field (simulate only), the RANDHURST_OUT environment variable,
then the working directory.  Hurst models are given on the command line as
a bare number ("0.3"), a two-point mixture ("two-point:0.25,0.75,0.5" for
H1, H2 and the weight on H1), or a tabulated density
("tabulated:0.1:0.5,0.5:2.0,0.9:0.5" as x:density pairs; the trapezoid rule
over the pairs must give total mass 1).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import replace

from .analytic import (
    ProcessKind,
    Regime,
    cov_asymptotic,
    rlfbm_etamsd_asymptotic,
)
from .errors import ConfigError, ConvergenceError, DomainError, UnsupportedModelError
from .experiment import ENV_OUT, load_config, run_experiment
from .figures import FIGURE_PRESETS, run_figure
from .hurst import (
    DeterministicHurst,
    HurstModel,
    TabulatedHurst,
    TwoPointHurst,
)
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
    re_pdf,
    rlfbmre_cov,
    rlfbmre_etamsd,
    rlfbmre_inc_sm,
)
from .verify import VERIFY_LEVELS, format_report, run_verify

ANALYTIC_STATS = (
    "cov",
    "etamsd",
    "inc-sm",
    "abs-moment",
    "pdf",
    "eb-plateau",
    "cov-asymptote",
    "etamsd-asymptote",
    "inc-sm-asymptote",
)


def parse_hurst(text: str) -> HurstModel:
    """Parse a command line Hurst model description."""
    text = text.strip()
    try:
        if text.startswith("two-point:"):
            parts = text.split(":", 1)[1].split(",")
            if len(parts) != 3:
                raise ValueError("expected three comma-separated numbers")
            h1, h2, p = (float(v) for v in parts)
            return TwoPointHurst(h1=h1, h2=h2, p=p)
        if text.startswith("tabulated:"):
            pairs = []
            for item in text.split(":", 1)[1].split(","):
                x, f = item.split(":")
                pairs.append((float(x), float(f)))
            return TabulatedHurst(nodes=tuple(pairs))
        return DeterministicHurst(value=float(text))
    except (ValueError, DomainError) as exc:
        raise ConfigError(
            f"cannot parse Hurst model {text!r}: {exc}; expected a number, "
            '"two-point:h1,h2,p", or "tabulated:x1:f1,x2:f2,..."'
        ) from exc


def _need(args: argparse.Namespace, names: tuple[str, ...]) -> None:
    flag = {"horizon": "--T"}
    missing = [flag.get(n, f"--{n}") for n in names if getattr(args, n) is None]
    if missing:
        raise ConfigError(f"statistic {args.stat!r} needs {', '.join(missing)}")


def _det_asymptote(args, kind: ProcessKind, h: float, regime: Regime) -> float:
    if args.stat == "cov-asymptote":
        return float(cov_asymptotic(kind, h, args.t, args.tau, regime))
    if args.stat == "etamsd-asymptote":
        if kind is ProcessKind.FBM:
            return args.tau ** (2.0 * h)
        return rlfbm_etamsd_asymptotic(h, args.tau)
    if kind is ProcessKind.FBM:
        raise DomainError(
            "the stationary kind's increment moment is exactly tau^(2H); "
            "there is no separate asymptote"
        )
    from .analytic import rlfbm_inc_sm_asymptotic

    return rlfbm_inc_sm_asymptotic(h, args.tau, regime)


_ASYM_KINDS = {
    "cov-asymptote": StatKind.COV,
    "etamsd-asymptote": StatKind.ETAMSD,
    "inc-sm-asymptote": StatKind.INC_SM,
}


def _analytic_value(args: argparse.Namespace) -> float:
    model = parse_hurst(args.hurst)
    stat = args.stat
    if stat in ("cov", "etamsd", "inc-sm") or stat in _ASYM_KINDS:
        _need(args, ("kind",))
        kind = ProcessKind(args.kind)
    if stat == "cov":
        _need(args, ("t", "tau"))
        fn = fbmre_cov if kind is ProcessKind.FBM else rlfbmre_cov
        return float(fn(model, args.t, args.tau))
    if stat == "etamsd":
        if kind is ProcessKind.FBM:
            _need(args, ("tau",))
            return fbmre_etamsd(model, args.tau)
        _need(args, ("tau", "horizon"))
        return rlfbmre_etamsd(model, args.tau, args.horizon)
    if stat == "inc-sm":
        _need(args, ("t", "tau"))
        fn = fbmre_inc_sm if kind is ProcessKind.FBM else rlfbmre_inc_sm
        return float(fn(model, args.t, args.tau))
    if stat == "abs-moment":
        _need(args, ("q", "t"))
        spec = ProcessSpec(kind=ProcessKind.FBM, hurst=model)
        return re_abs_moment(spec, args.q, args.t)
    if stat == "pdf":
        _need(args, ("x", "t"))
        spec = ProcessSpec(kind=ProcessKind.FBM, hurst=model)
        return float(re_pdf(spec, args.x, args.t))
    if stat == "eb-plateau":
        _need(args, ("tau",))
        return eb_plateau(model, args.tau)
    # asymptotes
    _need(args, ("regime", "tau"))
    if stat == "cov-asymptote":
        _need(args, ("t",))
    regime = Regime(args.regime)
    if isinstance(model, DeterministicHurst):
        return _det_asymptote(args, kind, model.value, regime)
    kwargs = {"tau": args.tau}
    if stat == "cov-asymptote":
        kwargs["t"] = args.t
    return mixture_asymptotic(
        MixtureStat(_ASYM_KINDS[stat], regime), kind, model, **kwargs
    )


def _cmd_analytic(args: argparse.Namespace) -> int:
    print(format(_analytic_value(args), ".17g"))
    return 0


def _cmd_simulate(args: argparse.Namespace) -> int:
    config = load_config(args.config)
    if args.seed is not None:
        config = replace(config, master_seed=args.seed)
    result = run_experiment(config, out_dir=args.out, threads=args.threads)
    for name in result.files:
        print(result.out_dir / name)
    print(result.manifest_path)
    return 0


def _cmd_figure(args: argparse.Namespace) -> int:
    names = sorted(FIGURE_PRESETS) if args.preset == "all" else [args.preset]
    for name in names:
        result = run_figure(name, out_dir=args.out)
        for fname in result.files:
            print(result.out_dir / fname)
    return 0


def _cmd_verify(args: argparse.Namespace) -> int:
    out = args.out or os.environ.get(ENV_OUT)
    report = run_verify(args.level, out_dir=out, threads=args.threads)
    print(format_report(report))
    if out is not None:
        print(f"report written to {out}/verify_report.json")
    return 0 if report.passed else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="randhurst",
        description=(
            "Exact statistics, simulation, and verification for fractional "
            "and Riemann-Liouville Brownian motion with a random Hurst "
            "exponent."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    pa = sub.add_parser(
        "analytic", help="evaluate one closed-form statistic at a point"
    )
    pa.add_argument("stat", choices=ANALYTIC_STATS)
    pa.add_argument(
        "--kind", choices=[k.value for k in ProcessKind], help="process kind"
    )
    pa.add_argument("--hurst", required=True, help="Hurst model (see module help)")
    pa.add_argument("--t", type=float, help="time")
    pa.add_argument("--tau", type=float, help="lag")
    pa.add_argument("--T", dest="horizon", type=float, help="averaging horizon")
    pa.add_argument("--q", type=float, help="moment order")
    pa.add_argument("--x", type=float, help="displacement")
    pa.add_argument(
        "--regime", choices=[r.value for r in Regime], help="asymptote regime"
    )
    pa.set_defaults(fn=_cmd_analytic)

    ps = sub.add_parser(
        "simulate", help="run an experiment config and write curve CSVs"
    )
    ps.add_argument("--config", required=True, help="path to the JSON config")
    ps.add_argument("--seed", type=int, help="override the config's master_seed")
    ps.add_argument("--out", help="output directory")
    ps.add_argument("--threads", type=int, default=1, help="simulation threads")
    ps.set_defaults(fn=_cmd_simulate)

    pf = sub.add_parser(
        "figure", help="build a preset figure: curve CSVs plus a rendered PNG"
    )
    pf.add_argument(
        "preset",
        choices=sorted(FIGURE_PRESETS) + ["all"],
        help="preset name, or 'all'",
    )
    pf.add_argument("--out", help="output directory")
    pf.set_defaults(fn=_cmd_figure)

    pv = sub.add_parser("verify", help="run the self-verification suite")
    pv.add_argument("level", choices=list(VERIFY_LEVELS), nargs="?", default="fast")
    pv.add_argument("--out", help="directory for verify_report.json and figures")
    pv.add_argument("--threads", type=int, default=1, help="simulation threads")
    pv.set_defaults(fn=_cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (
        ConfigError,
        DomainError,
        UnsupportedModelError,
        ConvergenceError,
        FileNotFoundError,
        json.JSONDecodeError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
