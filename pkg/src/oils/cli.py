"""Command line interface: ``oils gen | solve | member | bench | report``.

Exit codes of ``solve``: 0 enclosure, 2 unsolvable, 3 unbounded, 4 method
failure. Usage and file errors exit with 1.
"""

import argparse
import json
import sys

from .bench import BenchSuite, rows_to_csv, rows_to_markdown, run_bench
from .generate import GeneratorConfig, gen_seeded_solvable, gen_system
from .hull import op_membership
from .jsonio import (box_from_json, outcome_to_json, point_from_json, read_json,
                     system_from_json, system_to_json, write_json)
from .methods import METHODS, run_method

EXIT_CODES = {"enclosure": 0, "unsolvable": 2, "unbounded": 3, "failure": 4}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _emit(text, out):
    if out:
        with open(out, "w") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        print(text)


def cmd_gen(args):
    cfg = GeneratorConfig(args.m, args.n, args.exponent, args.range, args.seed)
    sys_ = gen_seeded_solvable(cfg) if args.seeded else gen_system(cfg)
    _emit(write_json(system_to_json(sys_)), args.out)
    return 0


def cmd_solve(args):
    system = system_from_json(read_json(args.input))
    x0 = box_from_json(read_json(args.x0)) if args.x0 else None
    kwargs = {"iterations": args.iterations, "seed": args.seed}
    if args.method == "hull":
        kwargs["presolve"] = x0
    else:
        kwargs["x0"] = x0
    out = run_method(args.method, system, **kwargs)
    _emit(write_json(outcome_to_json(out)), args.out)
    return EXIT_CODES[out.kind]


def cmd_member(args):
    system = system_from_json(read_json(args.input))
    x = point_from_json(read_json(args.x))
    member = op_membership(system, None, x, strict=args.strict)
    print(json.dumps({"member": member, "strict": args.strict}))
    return 0


def cmd_bench(args):
    suite = BenchSuite.from_dict(read_json(args.suite))
    report = run_bench(suite)
    _emit(write_json(report.to_json()), args.out)
    return 0


def cmd_report(args):
    rows = read_json(args.input)["cells"]
    text = rows_to_markdown(rows) if args.format == "md" else rows_to_csv(rows)
    _emit(text.rstrip("\n"), args.out)
    return 0


def build_parser():
    p = _Parser(prog="oils", description="Enclosures of overdetermined interval linear systems.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("gen", help="generate a random system")
    g.add_argument("--m", type=int, required=True)
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--exponent", type=int, default=-3, help="radii are at most 10**exponent")
    g.add_argument("--range", type=float, default=25.0, help="midpoints in [-range, range]")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--seeded", action="store_true",
                   help="build the system around a random known solution")
    g.add_argument("--out")
    g.set_defaults(func=cmd_gen)

    s = sub.add_parser("solve", help="enclose the solution set of a system")
    s.add_argument("--method", choices=METHODS, required=True)
    s.add_argument("--in", dest="input", required=True)
    s.add_argument("--x0", help="starting box (jacobi, gs) or presolve box (hull)")
    s.add_argument("--iterations", type=int, default=10, help="rohn-iter iterations")
    s.add_argument("--seed", type=int, default=0, help="rohn-iter sampling seed")
    s.add_argument("--out")
    s.set_defaults(func=cmd_solve)

    mb = sub.add_parser("member", help="Oettli-Prager membership of a point")
    mb.add_argument("--in", dest="input", required=True)
    mb.add_argument("--x", required=True)
    mb.add_argument("--strict", action="store_true", help="only certified members count")
    mb.set_defaults(func=cmd_member)

    b = sub.add_parser("bench", help="run a benchmark suite")
    b.add_argument("--suite", required=True)
    b.add_argument("--out")
    b.set_defaults(func=cmd_bench)

    r = sub.add_parser("report", help="format a benchmark report")
    r.add_argument("--in", dest="input", required=True)
    r.add_argument("--format", choices=("md", "csv"), default="md")
    r.add_argument("--out")
    r.set_defaults(func=cmd_report)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (OSError, ValueError, KeyError, TypeError) as exc:
        print(f"oils {args.command}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
