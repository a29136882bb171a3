"""Command line entry point.

Exit codes: 0 on success, 2 for invalid configuration or arguments, 3 when
the exhaustive-search size guard trips. Set RAILWAVE_LOG=DEBUG (or INFO,
WARNING, ...) to control verbosity.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys

from .baselines import SizeGuardError
from .experiments import (
    ExperimentSpec,
    PRESETS,
    preset,
    run_experiment,
    write_csv,
    write_metadata,
)
from .scenario import InvalidConfigError, ScenarioConfig

log = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_BAD_CONFIG = 2
EXIT_SIZE_GUARD = 3


def _setup_logging() -> None:
    level_name = os.environ.get("RAILWAVE_LOG", "WARNING").upper()
    level = getattr(logging, level_name, None)
    if not isinstance(level, int):
        level = logging.WARNING
    logging.basicConfig(
        level=level, format="%(asctime)s %(name)s %(levelname)s %(message)s"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="simulate",
        description=(
            "Run a relay-selection and slot-scheduling sweep and write "
            "results.csv, metadata.json, and figures to the output directory."
        ),
    )
    parser.add_argument(
        "--experiment",
        required=True,
        help=(
            "preset name (%s) or path to an experiment spec JSON"
            % ", ".join(sorted(PRESETS))
        ),
    )
    parser.add_argument(
        "--config",
        help="scenario config JSON; its keys override the experiment's base",
    )
    parser.add_argument("--seed", type=int, help="master seed override")
    parser.add_argument("--trials", type=int, help="trials per sweep point override")
    parser.add_argument("--out", default="out", help="output directory (default: out)")
    parser.add_argument(
        "--no-plots", action="store_true", help="skip rendering PNG figures"
    )
    parser.add_argument(
        "--force-oracle",
        action="store_true",
        help="run the exhaustive search past its flow-count guard",
    )
    return parser


def _resolve_spec(args: argparse.Namespace) -> ExperimentSpec:
    name = args.experiment
    if name in PRESETS:
        spec = preset(name)
    elif os.path.exists(name):
        spec = ExperimentSpec.from_json(name)
    else:
        raise InvalidConfigError(
            f"--experiment must name a preset ({', '.join(sorted(PRESETS))}) "
            f"or an existing JSON file, got {name!r}"
        )
    overrides: dict = {}
    if args.seed is not None:
        overrides["seed"] = args.seed
    if args.trials is not None:
        if args.trials < 1:
            raise InvalidConfigError("--trials must be positive")
        overrides["trials"] = args.trials
    if args.force_oracle:
        overrides["oracle_override"] = True
    if args.config is not None:
        file_config = ScenarioConfig.from_json(args.config)
        merged = dict(spec.base)
        merged.update(file_config.to_flat_dict())
        overrides["base"] = merged
    if overrides:
        from dataclasses import replace

        spec = replace(spec, **overrides)
    return spec


def main(argv: list[str] | None = None) -> int:
    _setup_logging()
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on bad usage already; normalize other codes
        return int(exc.code) if exc.code else EXIT_OK
    try:
        spec = _resolve_spec(args)
        os.makedirs(args.out, exist_ok=True)
        result = run_experiment(spec)
        csv_path = os.path.join(args.out, "results.csv")
        write_csv(result.rows, csv_path)
        write_metadata(spec, os.path.join(args.out, "metadata.json"))
        written = [csv_path, os.path.join(args.out, "metadata.json")]
        if not args.no_plots:
            from .plots import render_figures

            written.extend(render_figures(result, args.out))
        for path in written:
            print(path)
    except InvalidConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_CONFIG
    except SizeGuardError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SIZE_GUARD
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
