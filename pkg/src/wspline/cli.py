"""Command-line front end: ``wspline {generate,refine,trace,evaluate,plot}``.

Every command writes its outputs plus a ``<output>.manifest.json`` describing
the run. Errors are reported as a single ``wspline: error: <Kind>: <reason>``
line on stderr with a nonzero exit status.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time
from pathlib import Path

from . import __version__
from .datasets import gen_converging_gaussian, gen_diverging_gaussian, load_sequence_csv, save_sequence_csv
from .errors import ConfigError, WsplineError
from .evaluation import evaluate
from .measure import RefinementConfig
from .plot import render_svg
from .subdivision import FOUR_POINT_W, four_point_refine, wlr_refine
from .trace import TrajectoryForest, assign_times, trace_paths

DEFAULTS = {
    "degree": 2,
    "level": 7,
    "p": 2.0,
    "epsilon": 1e-10,
    "merge_tolerance": 1e-9,
    "w": FOUR_POINT_W,
    "mass_threshold": 1e-8,
    "seed": 0,
    "jobs": 1,
}
# config-file aliases for the flag names
_CONFIG_KEYS = {
    "degree": "degree",
    "level": "level",
    "p": "p",
    "cost_exponent": "p",
    "epsilon": "epsilon",
    "prune_threshold": "epsilon",
    "merge_tolerance": "merge_tolerance",
    "w": "w",
    "mass_threshold": "mass_threshold",
    "seed": "seed",
    "jobs": "jobs",
}


def _sha256(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def _resolve(args: argparse.Namespace) -> dict:
    """Merge settings: flags > --config file > built-in defaults.

    WSPLINE_JOBS stands in for a missing --jobs flag.
    """
    settings = dict(DEFAULTS)
    if getattr(args, "config", None):
        try:
            raw = json.loads(Path(args.config).read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{args.config}: {exc}") from None
        if not isinstance(raw, dict):
            raise ConfigError(f"{args.config}: expected a JSON object")
        for key, value in raw.items():
            if key not in _CONFIG_KEYS:
                raise ConfigError(f"{args.config}: unknown key {key!r}")
            settings[_CONFIG_KEYS[key]] = value
    env_jobs = os.environ.get("WSPLINE_JOBS")
    if env_jobs:
        try:
            settings["jobs"] = int(env_jobs)
        except ValueError:
            raise ConfigError(f"WSPLINE_JOBS must be an integer, got {env_jobs!r}") from None
    for key in DEFAULTS:
        value = getattr(args, key, None)
        if value is not None:
            settings[key] = value
    if int(settings["jobs"]) < 1:
        raise ConfigError("jobs must be >= 1")
    settings["jobs"] = int(settings["jobs"])
    return settings


def _refinement_config(settings: dict) -> RefinementConfig:
    return RefinementConfig(
        degree=settings["degree"],
        level=settings["level"],
        cost_exponent=float(settings["p"]),
        prune_threshold=float(settings["epsilon"]),
        merge_tolerance=float(settings["merge_tolerance"]),
        seed=settings["seed"],
    )


def _write_manifest(command, args, settings, inputs, outputs, started) -> Path:
    outputs = [Path(p) for p in outputs]
    manifest = {
        "command": command,
        "version": __version__,
        "config": settings,
        "inputs": [str(p) for p in inputs],
        "outputs": [str(p) for p in outputs],
        "seed": settings.get("seed"),
        "checksums": {str(p): _sha256(p) for p in outputs},
        "wall_time_seconds": time.perf_counter() - started,
    }
    path = outputs[0].with_name(outputs[0].name + ".manifest.json")
    path.write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    return path


def _add_refinement_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--degree", "-M", type=int, help="B-spline degree M (default 2)")
    p.add_argument("--level", "-R", type=int, help="refinement level R (default 7)")
    p.add_argument("--p", type=float, help="cost exponent for OT averaging (default 2)")
    p.add_argument("--epsilon", type=float, help="plan-entry prune threshold (default 1e-10)")
    p.add_argument("--merge-tolerance", type=float, dest="merge_tolerance")
    p.add_argument("--config", help="JSON file with default settings")
    p.add_argument("--jobs", type=int, help="worker threads (env WSPLINE_JOBS)")


def cmd_generate(args) -> int:
    started = time.perf_counter()
    settings = _resolve(args)
    settings["kind"] = args.kind
    if args.kind == "diverging-gaussian":
        params = {"n": args.n or 200, "steps": args.steps or 4, "d": args.d or 2}
        seq = gen_diverging_gaussian(settings["seed"], **params)
    else:
        counts = args.counts or [32, 96, 64, 32]
        params = {"counts": counts, "d": args.d or 2}
        seq = gen_converging_gaussian(settings["seed"], **params)
    settings["params"] = params
    out = save_sequence_csv(seq, args.out)
    _write_manifest("generate", args, settings, [], [out], started)
    return 0


def cmd_refine(args) -> int:
    started = time.perf_counter()
    settings = _resolve(args)
    settings["scheme"] = args.scheme
    cfg = _refinement_config(settings)
    seq = load_sequence_csv(args.input)
    if args.scheme == "wlr":
        refined = wlr_refine(seq, cfg, jobs=settings["jobs"])
    else:
        refined = four_point_refine(seq, cfg.level, float(settings["w"]), cfg, jobs=settings["jobs"])
    timed = assign_times(refined, seq.times[0], seq.times[-1])
    out = save_sequence_csv(timed, args.out)
    _write_manifest("refine", args, settings, [args.input], [out], started)
    return 0


def cmd_trace(args) -> int:
    started = time.perf_counter()
    settings = _resolve(args)
    cfg = _refinement_config(settings)
    seq = load_sequence_csv(args.input)
    forest = trace_paths(seq, float(settings["mass_threshold"]), cfg, jobs=settings["jobs"])
    out = Path(args.out)
    out.write_text(json.dumps(forest.to_json()) + "\n", encoding="utf-8")
    _write_manifest("trace", args, settings, [args.input], [out], started)
    return 0


def cmd_evaluate(args) -> int:
    started = time.perf_counter()
    settings = _resolve(args)
    cfg = _refinement_config(settings)
    seq = load_sequence_csv(args.input)
    report = evaluate(seq, args.held_out, cfg, jobs=settings["jobs"])
    text = json.dumps(report.to_json(cfg), indent=2, sort_keys=True) + "\n"
    out = Path(args.out)
    out.write_text(text, encoding="utf-8")
    sys.stdout.write(text)
    _write_manifest("evaluate", args, settings, [args.input], [out], started)
    return 0


def cmd_plot(args) -> int:
    started = time.perf_counter()
    settings = {"dims": list(args.dims)}
    seq = load_sequence_csv(args.input)
    forest = None
    inputs = [args.input]
    if args.trace:
        forest = TrajectoryForest.from_json(json.loads(Path(args.trace).read_text(encoding="utf-8")))
        inputs.append(args.trace)
    svg = render_svg(seq, dims=tuple(args.dims), forest=forest)
    out = Path(args.out)
    out.write_text(svg, encoding="utf-8")
    _write_manifest("plot", args, settings, inputs, [out], started)
    return 0


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.exit(2, f"wspline: error: UsageError: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="wspline", description="Wasserstein subdivision for point-cloud sequences.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("generate", help="write a synthetic sequence CSV")
    g.add_argument("kind", choices=["diverging-gaussian", "converging-gaussian"])
    g.add_argument("--out", "-o", required=True)
    g.add_argument("--seed", type=int)
    g.add_argument("--n", type=int, help="points per step (diverging)")
    g.add_argument("--steps", type=int, help="number of steps (diverging)")
    g.add_argument("--d", type=int, help="ambient dimension")
    g.add_argument("--counts", type=int, nargs="+", help="points per step (converging)")
    g.add_argument("--config")
    g.set_defaults(func=cmd_generate)

    r = sub.add_parser(
        "refine",
        help="refine a sequence with WLR or the 4-point scheme",
        description="The 4-point scheme needs at least 4 input clouds; its boundary clouds "
        "are extended by repetition each round, so inputs stay at positions k * 2^R.",
    )
    r.add_argument("input")
    r.add_argument("--out", "-o", required=True)
    r.add_argument("--scheme", choices=["wlr", "four-point"], default="wlr")
    r.add_argument("--w", type=float, help="4-point tension (default 1/16)")
    _add_refinement_flags(r)
    r.set_defaults(func=cmd_refine)

    t = sub.add_parser("trace", help="trace mass through consecutive clouds")
    t.add_argument("input")
    t.add_argument("--out", "-o", required=True)
    t.add_argument("--mass-threshold", type=float, dest="mass_threshold")
    _add_refinement_flags(t)
    t.set_defaults(func=cmd_trace)

    e = sub.add_parser("evaluate", help="leave-one-out W1/MSE report")
    e.add_argument("input")
    e.add_argument("--held-out", "-j", type=int, required=True, dest="held_out")
    e.add_argument("--out", "-o", required=True)
    _add_refinement_flags(e)
    e.set_defaults(func=cmd_evaluate)

    pl = sub.add_parser("plot", help="render a sequence (and optional trace) as SVG")
    pl.add_argument("input")
    pl.add_argument("--out", "-o", required=True)
    pl.add_argument("--dims", type=int, nargs=2, default=[0, 1], metavar=("I", "J"))
    pl.add_argument("--trace", help="forest JSON from `wspline trace`")
    pl.set_defaults(func=cmd_plot)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except WsplineError as exc:
        msg = str(exc).replace("\n", " ")
        print(f"wspline: error: {type(exc).__name__}: {msg}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"wspline: error: IoError: {exc}".replace("\n", " "), file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
