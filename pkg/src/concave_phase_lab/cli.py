"""Command-line entry point.

Usage: concave-phase-lab <experiment> [--config FILE] [--key value ...]

The experiment name selects a pipeline from :mod:`experiments`; any config
field can be overridden on the command line (dashes and underscores are
interchangeable).  Exit status is 0 only when the run's assertion passes;
hard errors print a structured JSON error record to stderr and exit 2.
"""
from __future__ import annotations

import argparse
import json
import sys

from .experiments import PIPELINES, SCHEMA_VERSION, RunConfig, run_experiment


def _override_pairs(tokens):
    pairs = {}
    it = iter(tokens)
    for token in it:
        if not token.startswith("--"):
            raise ValueError(f"expected --key, got {token!r}")
        key = token[2:]
        if "=" in key:
            key, value = key.split("=", 1)
        else:
            try:
                value = next(it)
            except StopIteration:
                raise ValueError(f"missing value for --{key}") from None
        pairs[key] = value
    return pairs


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = argparse.ArgumentParser(
        prog="concave-phase-lab",
        description="Scaling experiments for concave-phase propagator bounds.")
    parser.add_argument("experiment", choices=sorted(PIPELINES),
                        help="pipeline to run")
    parser.add_argument("--config", metavar="FILE",
                        help="key=value configuration file")
    args, rest = parser.parse_known_args(argv)
    try:
        overrides = _override_pairs(rest)
        overrides["experiment"] = args.experiment
        if args.config:
            cfg = RunConfig.from_file(args.config, overrides=overrides)
        else:
            cfg = RunConfig.from_mapping(overrides)
        result, report = run_experiment(cfg)
    except Exception as exc:
        record = {"schema_version": SCHEMA_VERSION, "experiment": args.experiment,
                  "error": {"type": type(exc).__name__, "message": str(exc)}}
        print(json.dumps(record, indent=2, sort_keys=True), file=sys.stderr)
        return 2
    slope = report["slope"]
    predicted = report["predicted_slope"]
    bits = [args.experiment]
    if slope is not None:
        bits.append(f"slope={slope:+.4f}")
    if predicted is not None:
        bits.append(f"predicted={predicted:+.4f}")
    bits.append("PASS" if report["pass"] else "FAIL")
    print("  ".join(bits))
    return 0 if report["pass"] else 1


if __name__ == "__main__":
    sys.exit(main())
