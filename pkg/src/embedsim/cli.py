"""Batch CLI: run scenarios to CSV/JSON, list settings, run self-checks.

Exit codes: 0 success, 1 selfcheck failure, 2 usage/config error, 3 IO error.
"""

import argparse
import datetime
import json
import os
import sys
import tempfile

from . import __version__
from .monotones import required_settings
from .scenarios import (
    BUILTIN_SCENARIOS,
    ConfigError,
    ScenarioConfig,
    fit_amplitude,
    run_scenario,
)
from .selfcheck import run_selfcheck

EXIT_OK = 0
EXIT_SELFCHECK = 1
EXIT_USAGE = 2
EXIT_IO = 3

MEASUREMENT_HEADER = "scenario,t_index,t,setting,ideal,noisy,sampled,stderr,shots"
MONOTONE_HEADER = "scenario,t_index,t,monotone_ideal,monotone_noisy,monotone_sampled"


def _fmt(value):
    """Round-trip-exact float/int field; empty for missing values."""
    if value is None:
        return ""
    if isinstance(value, int):
        return str(value)
    return "%.17g" % value


def _atomic_write(path, text):
    directory = os.path.dirname(path) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-")
    try:
        with os.fdopen(fd, "w") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _series_csv(series):
    rows = [MEASUREMENT_HEADER]
    name = series.config.name
    for point in series.points:
        for rec in point.records:
            rows.append(
                ",".join(
                    [
                        name,
                        str(point.t_index),
                        _fmt(point.t),
                        rec.setting,
                        _fmt(rec.ideal),
                        _fmt(rec.noisy),
                        _fmt(rec.sampled),
                        _fmt(rec.stderr),
                        _fmt(rec.shots),
                    ]
                )
            )
    return "\n".join(rows) + "\n"


def _monotone_csv(series):
    rows = [MONOTONE_HEADER]
    name = series.config.name
    for point in series.points:
        rows.append(
            ",".join(
                [
                    name,
                    str(point.t_index),
                    _fmt(point.t),
                    _fmt(point.monotone_ideal),
                    _fmt(point.monotone_noisy),
                    _fmt(point.monotone_sampled),
                ]
            )
        )
    return "\n".join(rows) + "\n"


def _load_config(scenario_arg):
    if scenario_arg.startswith("builtin:"):
        name = scenario_arg.split(":", 1)[1]
        if name not in BUILTIN_SCENARIOS:
            raise ConfigError(
                "scenario", f"unknown builtin {name!r}; have {sorted(BUILTIN_SCENARIOS)}"
            )
        return BUILTIN_SCENARIOS[name]()
    try:
        with open(scenario_arg) as handle:
            doc = json.load(handle)
    except OSError as exc:
        raise ConfigError("scenario", f"cannot read {scenario_arg}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError("scenario", f"invalid JSON in {scenario_arg}: {exc}") from exc
    return ScenarioConfig.from_dict(doc)


def _apply_overrides(config, args):
    overrides = {}
    if args.shots is not None:
        overrides["shots"] = args.shots
    if args.alpha is not None:
        overrides["alpha"] = args.alpha
    if args.seed is not None:
        overrides["seed"] = args.seed
    if args.steps is not None:
        overrides["steps"] = args.steps
    if args.dt is not None:
        overrides["dt"] = args.dt
    if args.mode is not None:
        overrides["evolution_mode"] = args.mode
    if overrides:
        import dataclasses

        config = dataclasses.replace(config, **overrides)
    return config


def cmd_run(args):
    try:
        config = _apply_overrides(_load_config(args.scenario), args)
        config.validate()
    except ConfigError as exc:
        print(f"invalid config: {exc}", file=sys.stderr)
        return EXIT_USAGE
    series = run_scenario(config)
    outputs = {}
    if args.format in ("csv", "both"):
        outputs["series.csv"] = _series_csv(series)
        outputs["monotone.csv"] = _monotone_csv(series)
    if args.format in ("json", "both"):
        outputs["series.json"] = json.dumps(series.to_dict(), sort_keys=True, indent=1) + "\n"
    try:
        alpha_hat, residual = fit_amplitude(series)
        model = "even_linear" if config.n_system % 2 == 0 else "odd_quadratic"
        outputs["fit.json"] = (
            json.dumps(
                {"alpha_hat": alpha_hat, "residual": residual, "model": model},
                sort_keys=True,
                indent=1,
            )
            + "\n"
        )
    except ValueError:
        pass  # all-zero ideal series: nothing to fit
    manifest = {
        "tool_version": __version__,
        "config": config.to_dict(),
        "started_at": datetime.datetime.now(datetime.timezone.utc).isoformat(),
        "output_paths": sorted(outputs),
    }
    outputs["manifest.json"] = json.dumps(manifest, sort_keys=True, indent=1) + "\n"
    try:
        os.makedirs(args.output, exist_ok=True)
        for filename, text in outputs.items():
            _atomic_write(os.path.join(args.output, filename), text)
    except OSError as exc:
        print(f"IO failure: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def cmd_settings(args):
    if args.n_system < 2:
        print(f"invalid config: n_system: must be >= 2, got {args.n_system}", file=sys.stderr)
        return EXIT_USAGE
    for setting in required_settings(args.n_system):
        print(setting.factors)
    return EXIT_OK


def cmd_selfcheck(args):
    return EXIT_OK if run_selfcheck() else EXIT_SELFCHECK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="embedsim",
        description="Embedding-simulator entanglement dynamics: run, settings, selfcheck.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="run a scenario and write CSV/JSON series")
    run_p.add_argument(
        "--scenario",
        required=True,
        help="builtin:concurrence | builtin:tangle | path to a config JSON",
    )
    run_p.add_argument("--output", required=True, help="output directory")
    run_p.add_argument("--format", choices=("csv", "json", "both"), default="both")
    run_p.add_argument("--shots", type=int)
    run_p.add_argument("--alpha", type=float)
    run_p.add_argument("--seed", type=int)
    run_p.add_argument("--steps", type=int)
    run_p.add_argument("--dt", type=float)
    run_p.add_argument("--mode", choices=("embedded", "direct"))
    run_p.set_defaults(func=cmd_run)

    settings_p = sub.add_parser("settings", help="print the measurement settings for N")
    settings_p.add_argument("n_system", type=int)
    settings_p.set_defaults(func=cmd_settings)

    selfcheck_p = sub.add_parser("selfcheck", help="run the randomized oracle suites")
    selfcheck_p.set_defaults(func=cmd_selfcheck)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
