"""Command-line entry point: ``orblab <subcommand> ...``.

Exit status is 0 on success, 1 when a solver finds no crossing-free
labeling and 2 on bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import harness
from .geometry import LeaderStyle
from .instance import Distribution, InstanceError, generate_corpus, read_json, write_json
from .labeling import dumps_labeling, labeling_from_dict
from .model_export import FAMILIES, build_model, write_model
from .render import RenderStyle, write_svg
from .solver_nonuniform import HeuristicConfig, HeuristicFailure, Infeasible, TimedOut, solve_exact, solve_heuristic
from .solver_uniform import solve_uniform

_DIST_ALIASES = {d.value: d for d in Distribution} | {d.slug: d for d in Distribution}


def _dist(text: str) -> Distribution:
    try:
        return _DIST_ALIASES[text]
    except KeyError:
        raise argparse.ArgumentTypeError(f"unknown distribution {text!r}") from None


def _write_text(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def cmd_generate(args) -> int:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    insts = generate_corpus(
        args.n, args.dist, per_combo=args.count, seed=args.seed, uniform_widths=args.uniform_widths
    )
    for inst in insts:
        write_json(inst, out / f"{inst.id}.json")
    print(f"wrote {len(insts)} instances to {out}")
    return 0


def cmd_solve(args) -> int:
    inst = read_json(args.input)
    style = LeaderStyle(args.style)
    if args.solver == "uniform_exact":
        if not inst.has_uniform_widths():
            print("error: uniform_exact needs an instance with equal label widths", file=sys.stderr)
            return 2
        res = solve_uniform(inst, style)
    elif args.solver == "heuristic":
        res = solve_heuristic(inst, HeuristicConfig(style=style, seed=args.seed))
    else:
        res = solve_exact(inst, style, time_limit=args.time_limit, max_n=args.max_n)

    if isinstance(res, HeuristicFailure):
        print(f"failure: swap budget exhausted with {res.report.crossings} crossings left", file=sys.stderr)
        return 1
    if isinstance(res, Infeasible):
        print("infeasible: no crossing-free labeling exists", file=sys.stderr)
        return 1
    if isinstance(res, TimedOut):
        print("timeout: exact search hit the time limit", file=sys.stderr)
        return 1
    lab, report = res
    text = dumps_labeling(lab, report.tll)
    if args.out_labeling:
        _write_text(args.out_labeling, text)
    else:
        sys.stdout.write(text)
    if args.out_svg:
        write_svg(inst, lab, args.out_svg)
    return 0


def cmd_bench(args) -> int:
    cfg = harness.BenchConfig(time_limit=args.time_limit, exact_max_n=args.max_n, workers=args.workers)
    records = harness.run_corpus(args.corpus, args.styles, args.solvers, args.repeats, cfg)
    if args.csv:
        harness.write_csv(records, args.csv, mask_timing=args.mask_timing)
    if records:
        print(harness.format_summary(harness.summarize(records)))
    return 0


def cmd_export_model(args) -> int:
    inst = read_json(args.input)
    write_model(build_model(inst, args.family), args.out)
    return 0


def cmd_render(args) -> int:
    inst = read_json(args.input)
    with open(args.labeling, encoding="utf-8") as fh:
        lab = labeling_from_dict(inst, json.load(fh))
    style = RenderStyle(
        highlight_target=args.highlight,
        highlight_part=args.highlight_part,
        flip_lower_labels=args.flip_lower_labels,
    )
    write_svg(inst, lab, args.out, style)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="orblab", description="Orbital boundary labeling toolkit.")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="generate random instances")
    g.add_argument("--n", type=int, nargs="+", required=True, help="feature counts")
    g.add_argument("--dist", type=_dist, nargs="+", default=list(Distribution),
                   help="D_u, D_uo, D_o (or uniform, uniform_offcenter, offcenter)")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--count", type=int, default=1, help="instances per (dist, n)")
    g.add_argument("--uniform-widths", action="store_true")
    g.add_argument("--out", required=True, help="output directory")
    g.set_defaults(func=cmd_generate)

    s = sub.add_parser("solve", help="label one instance")
    s.add_argument("--style", choices=[x.value for x in LeaderStyle], default="SL")
    s.add_argument("--solver", choices=harness.SOLVERS, default="heuristic")
    s.add_argument("--in", dest="input", required=True)
    s.add_argument("--out-labeling")
    s.add_argument("--out-svg")
    s.add_argument("--time-limit", type=float, default=60.0)
    s.add_argument("--max-n", type=int, default=harness.DEFAULT_EXACT_CAP)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_solve)

    b = sub.add_parser("bench", help="benchmark solvers on a corpus directory")
    b.add_argument("--corpus", required=True)
    b.add_argument("--styles", nargs="+", choices=[x.value for x in LeaderStyle], default=["SL", "OR"])
    b.add_argument("--solvers", nargs="+", choices=harness.SOLVERS, default=["heuristic", "exact_bb"])
    b.add_argument("--repeats", type=int, default=5)
    b.add_argument("--csv")
    b.add_argument("--time-limit", type=float, default=60.0)
    b.add_argument("--max-n", type=int, default=harness.DEFAULT_EXACT_CAP)
    b.add_argument("--workers", type=int, default=1)
    b.add_argument("--mask-timing", action="store_true", help="leave wall_time_ms empty in the CSV")
    b.set_defaults(func=cmd_bench)

    e = sub.add_parser("export-model", help="write the MIP/QIP formulation as text")
    e.add_argument("--family", choices=FAMILIES, required=True)
    e.add_argument("--in", dest="input", required=True)
    e.add_argument("--out", required=True)
    e.set_defaults(func=cmd_export_model)

    r = sub.add_parser("render", help="render a stored labeling as SVG")
    r.add_argument("--in", dest="input", required=True)
    r.add_argument("--labeling", required=True)
    r.add_argument("--out", required=True)
    r.add_argument("--highlight", type=int)
    r.add_argument("--highlight-part", choices=["feature", "label"], default="feature")
    r.add_argument("--flip-lower-labels", action="store_true")
    r.set_defaults(func=cmd_render)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InstanceError, ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
