"""Command-line entry point: ``mvindep {test,simulate,power,bench,list}``.

Exit codes: 0 success, 2 invalid input (bad names, files, sizes), 1 runtime
failure inside a computation.
"""
from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import io as mio
from .errors import VALIDATION_ERRORS, InvalidData, MvindepError
from .inference import permutation_test
from .power import Axis, estimate_power, wall_time_bench
from .simulations import Kind, SimulationSpec, list_simulations, simulate
from .stats import STATISTICS, get_statistic


def _int_list(text: str) -> list[int]:
    try:
        values = [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None
    if not values:
        raise argparse.ArgumentTypeError("empty grid")
    return values


def _name_list(text: str) -> list[str]:
    return [v.strip() for v in text.split(",") if v.strip()]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mvindep", description=__doc__.splitlines()[0])
    parser.add_argument(
        "--jobs", type=int, default=os.cpu_count() or 1,
        help="worker processes for permutation / power replicates (default: all cores)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("test", help="permutation test of independence between two CSV files")
    p.add_argument("--x", required=True, type=Path)
    p.add_argument("--y", required=True, type=Path)
    p.add_argument("--stat", required=True)
    p.add_argument("--perms", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=mio.FORMATS, default="json")
    p.add_argument("--header", action="store_true", help="skip a header row in both files")
    p.add_argument("--exact", action="store_true", help="enumerate all n! relabelings (n <= 7)")

    p = sub.add_parser("simulate", help="write a simulated (x, y) pair as two CSV files")
    p.add_argument("--kind", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=int, default=1)
    p.add_argument("--kappa", type=float, default=1.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None, help="output prefix (default: the kind name)")

    p = sub.add_parser("power", help="estimate a power curve")
    p.add_argument("--stat", required=True)
    p.add_argument("--kind", required=True)
    p.add_argument("--axis", choices=[a.value for a in Axis], default=Axis.SAMPLE_SIZE.value)
    p.add_argument("--grid", type=_int_list, default=[10, 50, 100])
    p.add_argument("--alpha", type=float, default=0.05)
    p.add_argument("--reps", type=int, default=500)
    p.add_argument("--perms", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--kappa", type=float, default=1.0)
    p.add_argument("--format", choices=mio.FORMATS, default="csv")
    p.add_argument("--out", type=Path, default=None)

    p = sub.add_parser("bench", help="wall-time scaling of statistics over n")
    p.add_argument("--stats", type=_name_list, default=["dcorr"])
    p.add_argument("--grid", type=_int_list, default=[250, 500, 1000])
    p.add_argument("--reps", type=int, default=3)
    p.add_argument("--pvalue", action="store_true", help="time full permutation tests")
    p.add_argument("--perms", type=int, default=1000)
    p.add_argument("--out", type=Path, default=None)

    sub.add_parser("list", help="list statistics and simulations")
    return parser


def _emit(text: str, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text, encoding="utf-8")


def _kind(name: str) -> Kind:
    return SimulationSpec(name, 3, 1).kind


def cmd_test(args) -> int:
    statistic = get_statistic(args.stat)
    mio.RunConfig(args.stat, args.perms, args.seed, 0.05, args.format)
    data = mio.load_dataset(args.x, args.y, has_header=args.header)
    result = permutation_test(
        statistic, data.x, data.y, args.perms, args.seed, workers=args.jobs, exact=args.exact
    )
    sys.stdout.write(mio.write_result(result, args.format))
    return 0


def cmd_simulate(args) -> int:
    pair = simulate(SimulationSpec(args.kind, args.n, args.p, args.kappa, args.seed))
    prefix = args.out or pair.spec.kind.value
    x_path, y_path = f"{prefix}_x.csv", f"{prefix}_y.csv"
    mio.write_csv(x_path, pair.x)
    mio.write_csv(y_path, pair.y)
    sys.stdout.write(f"{x_path}\n{y_path}\n")
    return 0


def cmd_power(args) -> int:
    get_statistic(args.stat)
    _kind(args.kind)
    curve = estimate_power(
        args.stat, args.kind, args.axis, args.grid, args.alpha, args.reps,
        args.perms, args.seed, args.kappa, workers=args.jobs,
    )
    _emit(mio.write_power(curve, args.format), args.out)
    return 0


def cmd_bench(args) -> int:
    for name in args.stats:
        get_statistic(name)
    rows = []
    for name in args.stats:
        for n, seconds in wall_time_bench(name, args.grid, args.reps, args.pvalue, args.perms):
            rows.append((name, n, seconds))
    _emit(mio.write_bench(rows), args.out)
    return 0


def cmd_list(args) -> int:
    lines = ["statistics:"]
    lines += [f"  {name}" for name in STATISTICS]
    lines.append("simulations:")
    lines += [f"  {name}  {xs} x {ys}" for name, xs, ys in list_simulations()]
    sys.stdout.write("\n".join(lines) + "\n")
    return 0


COMMANDS = {
    "test": cmd_test,
    "simulate": cmd_simulate,
    "power": cmd_power,
    "bench": cmd_bench,
    "list": cmd_list,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.jobs == 0:
            raise InvalidData("--jobs must be non-zero")
        return COMMANDS[args.command](args)
    except VALIDATION_ERRORS as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except MvindepError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
