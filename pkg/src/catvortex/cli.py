"""Command-line front end: one subcommand per scenario.

Configuration comes from an optional flat ``key = value`` file (#
comments allowed) overridden by command-line flags.  The run summary is
printed to stdout as JSON; with ``--out DIR`` the trajectory/series CSV
files and ``summary.json`` are written there.  On failure a
machine-readable error record goes to stderr and the exit code is
nonzero.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys

from .errors import CatVortexError
from .scenarios import SCENARIOS, RUNNERS, ScenarioConfig

_CONFIG_ALIASES = {"out": "out_dir", "rtol": "rel_tol", "atol": "abs_tol"}

_FIELD_TYPES = {
    f.name: f.type for f in dataclasses.fields(ScenarioConfig) if f.name != "scenario"
}


def _coerce(key: str, raw: str):
    if key in ("seed", "n_vortices"):
        return int(raw)
    if key == "out_dir":
        return raw
    return float(raw)


def parse_config_file(path: str) -> dict:
    """Flat key = value configuration; blank lines and # comments ignored."""
    out: dict = {}
    with open(path) as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected 'key = value', got {line!r}")
            key, raw = (part.strip() for part in line.split("=", 1))
            key = _CONFIG_ALIASES.get(key, key)
            if key not in _FIELD_TYPES:
                raise ValueError(f"{path}:{lineno}: unknown configuration key {key!r}")
            out[key] = _coerce(key, raw)
    return out


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="catvortex",
        description="Point-vortex dynamics on a catenoid: scenario runner",
    )
    sub = parser.add_subparsers(dest="scenario", required=True, metavar="|".join(SCENARIOS))
    for name in SCENARIOS:
        sp = sub.add_parser(name, help=f"run the {name} scenario")
        sp.add_argument("--config", help="flat key = value configuration file")
        sp.add_argument("--a", type=float, help="throat radius")
        sp.add_argument("--gamma", type=float, help="circulation strength")
        sp.add_argument("--v0", type=float, help="latitude of the symmetric state")
        sp.add_argument("--eta0", type=float, help="eigenvector seed amplitude")
        sp.add_argument("--t-final", type=float, dest="t_final", help="integration time")
        sp.add_argument("--rtol", type=float, help="relative tolerance")
        sp.add_argument("--atol", type=float, help="absolute tolerance")
        sp.add_argument("--seed", type=int, help="PRNG seed (cluster)")
        sp.add_argument("--out", help="output directory for CSV and summary JSON")
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    overrides = {
        "a": args.a,
        "gamma": args.gamma,
        "v0": args.v0,
        "eta0": args.eta0,
        "t_final": args.t_final,
        "rel_tol": args.rtol,
        "abs_tol": args.atol,
        "seed": args.seed,
        "out_dir": args.out,
    }
    try:
        kwargs = parse_config_file(args.config) if args.config else {}
        kwargs.update({k: v for k, v in overrides.items() if v is not None})
        cfg = ScenarioConfig(scenario=args.scenario, **kwargs)
        result = RUNNERS[args.scenario](cfg)
        summary = result[-1]
        json.dump(summary, sys.stdout, indent=2, sort_keys=True)
        sys.stdout.write("\n")
        return 0
    except (CatVortexError, ValueError, OSError) as exc:
        json.dump({"error": type(exc).__name__, "message": str(exc)}, sys.stderr)
        sys.stderr.write("\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
