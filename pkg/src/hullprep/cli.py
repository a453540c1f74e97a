"""Command line entry point: ``hullprep {reduce,hull,bench,extract-bench}``."""
from __future__ import annotations

import argparse
import logging
import sys

from .baselines import at_reduce, tztm_reduce
from .errors import HullprepError
from .harness.bench import HULL_ALGOS, METHODS, emit_csv, run_matrix
from .harness.datasets import GENERATORS, PROJECTIONS, DatasetSpec, load_points
from .harness.stats import emit_extract_csv, extract_bench, stats_report
from .reducer import dumps, precondition

log = logging.getLogger("hullprep")


def _add_data_args(parser, many_n=False):
    src = parser.add_mutually_exclusive_group(required=True)
    src.add_argument("--input", help="point file: 2 or 3 numbers per line")
    src.add_argument("--generator", choices=GENERATORS, help="synthetic point set")
    if many_n:
        parser.add_argument("--n", type=int, nargs="+", default=[100_000],
                            help="point counts (several values make a sweep)")
    else:
        parser.add_argument("--n", type=int, default=100_000, help="point count")
    parser.add_argument("--p", type=int, help="grid width for generators")
    parser.add_argument("--density", type=float, help="target n/(p*q) for uniform-density")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--projection", choices=sorted(PROJECTIONS), default="xy",
                        help="plane for 3D input")
    parser.add_argument("--scale", default="1", help="multiplier applied before rounding")


def _add_reduce_args(parser, many=False):
    nargs = "+" if many else None
    parser.add_argument("--method", choices=METHODS, nargs=nargs,
                        default=list(METHODS) if many else "proposed")
    parser.add_argument("--tztm-iters", type=int, nargs=nargs,
                        default=[2, 3, 4] if many else 4)
    parser.add_argument("--second-scan", action="store_true",
                        help="re-bucket the reduced points along y")
    parser.add_argument("--occupancy", choices=("array", "tree"), default="array")


def _specs(args):
    ns = args.n if isinstance(args.n, list) else [args.n]
    if args.input:
        return [DatasetSpec(args.input, projection=args.projection, scale=args.scale)]
    return [DatasetSpec(args.generator, n=n, p=args.p, density=args.density,
                        seed=args.seed, scale=args.scale) for n in ns]


def _reduce_points(points, args):
    if args.method == "none":
        return points, None
    if args.method == "at":
        return at_reduce(points), None
    if args.method == "tztm":
        return tztm_reduce(points, args.tztm_iters), None
    pre = precondition(points, second_pass=args.second_scan, occupancy=args.occupancy)
    return pre.chain.coords, pre


def cmd_reduce(args, out):
    points = load_points(_specs(args)[0])
    reduced, pre = _reduce_points(points, args)
    n, s = len(points), len(reduced)
    out.write(f"n {n}\ns {s}\nreduction_pct {1 - s / n:.6f}\n")
    if pre is not None and args.dump_array:
        out.write(dumps(pre.array))


def cmd_hull(args, out):
    points = load_points(_specs(args)[0])
    reduced, pre = _reduce_points(points, args)
    if args.algo == "melkman":
        if pre is None:
            raise HullprepError("melkman needs --method proposed")
        hull = HULL_ALGOS["melkman"](pre.chain)
    else:
        hull = HULL_ALGOS[args.algo](reduced)
    for x, y in hull:
        out.write(f"{x} {y}\n")


def cmd_bench(args, out):
    datasets = {}
    for spec in _specs(args):
        datasets[spec.id] = load_points(spec)
    records = run_matrix(datasets, methods=args.method, algos=args.algo,
                         tztm_iters=args.tztm_iters, repetitions=args.reps,
                         second_pass=args.second_scan, occupancy=args.occupancy)
    _write(args.output, emit_csv(records), out)
    if args.report:
        sys.stderr.write(stats_report(records))


def cmd_extract_bench(args, out):
    records = extract_bench(args.p, [d / 100 for d in args.densities], w=args.w,
                            seed=args.seed, repetitions=args.reps)
    _write(args.output, emit_extract_csv(records), out)


def _write(path, text, out):
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        out.write(text)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hullprep", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("reduce", help="run a preconditioner, print s and reduction_pct")
    _add_data_args(p)
    _add_reduce_args(p)
    p.add_argument("--dump-array", action="store_true",
                   help="also print the extremal array, one 'i ly hy' line per slot")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("hull", help="reduce then build the hull, print its vertices")
    _add_data_args(p)
    _add_reduce_args(p)
    p.add_argument("--algo", choices=list(HULL_ALGOS), default="quickhull")
    p.set_defaults(func=cmd_hull)

    p = sub.add_parser("bench", help="time every method x algorithm cell, write CSV")
    _add_data_args(p, many_n=True)
    _add_reduce_args(p, many=True)
    p.add_argument("--algo", choices=list(HULL_ALGOS), nargs="+", default=list(HULL_ALGOS))
    p.add_argument("--reps", type=int, default=100)
    p.add_argument("--output", help="CSV path (default stdout)")
    p.add_argument("--report", action="store_true", help="print trend fits to stderr")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("extract-bench", help="array vs tree occupancy extraction timings")
    p.add_argument("--p", type=int, default=2**20)
    p.add_argument("--densities", type=float, nargs="+", default=[5, 25, 45, 65, 85],
                   help="set-bit densities s/p in percent")
    p.add_argument("--w", type=int, choices=(32, 64), default=64)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--reps", type=int, default=1)
    p.add_argument("--output")
    p.set_defaults(func=cmd_extract_bench)
    return parser


def main(argv=None, out=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    out = out or sys.stdout
    try:
        args.func(args, out)
    except (HullprepError, ValueError) as exc:
        log.error("%s", exc)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
