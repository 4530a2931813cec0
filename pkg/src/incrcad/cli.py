"""``incrcad`` command line.

Exit codes: 0 success, 1 check or equivalence failure, 2 input error,
64 usage error.  Errors go to stderr prefixed with their ``E_*`` code.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import engine
from .bench import run_bench
from .errors import CadError, DuplicateInput
from .lifting import SECTION, Cell
from .poly import format_rational
from .realroot import format_root

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_INPUT = 2
EXIT_USAGE = 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _split_polys(text: str) -> list[str]:
    out = []
    for line in text.splitlines():
        line = line.split("#", 1)[0]
        out.extend(part.strip() for part in line.split(";"))
    return [p for p in out if p]


def _read_polys(arg: str) -> list[str]:
    """A file (one polynomial per line, ``#`` comments), ``-`` for stdin, or inline ``p; q``."""
    if arg == "-":
        return _split_polys(sys.stdin.read())
    if os.path.isfile(arg):
        with open(arg, encoding="utf-8") as fh:
            return _split_polys(fh.read())
    return _split_polys(arg)


def _level_summary(state) -> list[str]:
    lines = []
    for k, lev in enumerate(state.tree.levels, start=1):
        n_open = sum(1 for c in lev if c.is_open)
        lines.append(f"level {k} ({state.order[k - 1]}): {len(lev)} cells, {n_open} open")
    top = state.tree.levels[-1]
    lines.append(f"full-dimensional open cells: {sum(1 for c in top if c.is_open)}")
    return lines


def cmd_build(args) -> int:
    names = [v.strip() for v in args.vars.split(",") if v.strip()]
    state = engine.build(_read_polys(args.polys), names)
    engine.save(state, args.out)
    print(f"inputs: {len(state.inputs)}")
    for line in _level_summary(state):
        print(line)
    print(f"projection operations: {state.meta['projection_ops']}")
    return EXIT_OK


def cmd_add(args) -> int:
    state = engine.load(args.state)
    out = args.out or args.state
    try:
        new = engine.add(state, args.poly, strict=True)
    except DuplicateInput:
        print(f"{DuplicateInput.code}: duplicate input, state unchanged", file=sys.stderr)
        print("duplicate input, state unchanged")
        if out != args.state:
            engine.save(state, out)
        return EXIT_OK
    engine.save(new, out)
    m = new.meta
    print(f"added {new.inputs[-1][0]}: {new.inputs[-1][1]}")
    print(f"new base points: {m['new_base_points']}")
    for k, lev in enumerate(m["levels"], start=1):
        print(f"level {k}: {lev['cells']} cells, {lev['new']} new, {lev['cells'] - lev['new']} unchanged")
    print(f"re-lifted stacks: {m['relifted_stacks']}")
    print(f"projection operations: {m['incremental_projection_ops']} incremental, "
          f"{m['full_projection_ops']} from scratch")
    t = new.timings
    print(f"time: projection {t['projection']:.6f}s, lifting {t['lifting']:.6f}s, total {t['total']:.6f}s")
    return EXIT_OK


def _bound_text(c: Cell, var: str) -> str:
    if c.kind == SECTION:
        return f"{var} = {format_root(c.lower, var)}"
    lo = "-oo" if c.lower is None else format_root(c.lower, var)
    hi = "+oo" if c.upper is None else format_root(c.upper, var)
    return f"{lo} < {var} < {hi}"


def _cell_json(c: Cell, var: str) -> dict:
    def root(r):
        return None if r is None else format_root(r, var)

    return {
        "index": list(c.index),
        "kind": c.kind,
        "flag": c.flag,
        "lower": root(c.lower),
        "upper": root(c.upper),
        "sample": [format_rational(x) for x in c.sample],
    }


def cmd_cells(args) -> int:
    state = engine.load(args.state)
    n = len(state.order)
    levels = range(1, n + 1)
    if args.level is not None:
        if not 1 <= args.level <= n:
            raise UsageError(f"level must be between 1 and {n}")
        levels = [args.level]
    if args.format == "json":
        doc = {str(k): [_cell_json(c, state.order[k - 1]) for c in state.tree.cells(k)] for k in levels}
        print(json.dumps(doc, indent=1))
        return EXIT_OK
    for k in levels:
        var = state.order[k - 1]
        print(f"# level {k} ({var})")
        for c in state.tree.cells(k):
            idx = ",".join(map(str, c.index))
            sample = "(" + ", ".join(format_rational(x) for x in c.sample) + ")" if c.sample else "none"
            print(f"[{idx}] {c.kind:<7} {_bound_text(c, var)}  sample {sample}")
    return EXIT_OK


def cmd_check(args) -> int:
    state = engine.load(args.state)
    diff = engine.recompute_oracle(state)
    cyl = engine.check_cylindricity(state.tree)
    sig = engine.check_sign_invariance(state, probes=args.probes)
    n_cells = sum(1 for c in state.tree.levels[-1] if c.is_open)
    print(f"recompute oracle: {'pass' if diff.empty else 'FAIL'}")
    print(f"cylindricity: {'pass' if not cyl else 'FAIL'}")
    print(f"sign invariance ({n_cells} cells, {args.probes} probes each): {'pass' if not sig else 'FAIL'}")
    problems = list(diff.entries) + cyl + sig
    for p in problems:
        print(f"  {p}")
    return EXIT_OK if not problems else EXIT_FAIL


def cmd_bench(args) -> int:
    if args.count < 1:
        raise UsageError("--count must be at least 1")

    def progress(i, n):
        print(f"\r{i}/{n}", end="", file=sys.stderr, flush=True)

    rep = run_bench(args.dims, args.count, args.terms, args.degree, args.seed,
                    progress if args.progress else None)
    if args.progress:
        print(file=sys.stderr)
    if args.format == "json":
        print(json.dumps(rep.to_json(), indent=1))
    else:
        print(rep.to_table())
        for f in rep.equivalence_failures:
            print(f"  {f}")
    return EXIT_OK if not rep.equivalence_failures else EXIT_FAIL


def _window(text: str):
    try:
        parts = [float(x) for x in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError("expected xmin,xmax,ymin,ymax") from None
    if len(parts) != 4 or not (parts[0] < parts[1] and parts[2] < parts[3]):
        raise argparse.ArgumentTypeError("expected xmin,xmax,ymin,ymax with min < max")
    return tuple(parts)


def cmd_plot(args) -> int:
    from . import plot

    state = engine.load(args.state)
    if len(state.order) != 2:
        raise UsageError(f"plot needs a 2-variable state, this one has {len(state.order)}")
    if args.out.lower().endswith(".csv"):
        text = plot.render_csv(state)
    elif args.out.lower().endswith(".svg"):
        text = plot.render_svg(state, args.window)
    else:
        raise UsageError("--out must end in .svg or .csv")
    with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
    print(f"wrote {args.out}")
    return EXIT_OK


def make_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="incrcad", description="Incremental Open CAD with Lazard projection.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    b = sub.add_parser("build", help="project and lift a polynomial set")
    b.add_argument("--vars", required=True, help="variable order, lowest first, e.g. x1,x2")
    b.add_argument("--polys", required=True, help="file, '-' for stdin, or inline 'p; q'")
    b.add_argument("--out", required=True, help="state file to write")
    b.set_defaults(func=cmd_build)

    a = sub.add_parser("add", help="incrementally add one polynomial")
    a.add_argument("--state", required=True)
    a.add_argument("--poly", required=True)
    a.add_argument("--out", help="defaults to overwriting --state")
    a.set_defaults(func=cmd_add)

    c = sub.add_parser("cells", help="list cells")
    c.add_argument("--state", required=True)
    c.add_argument("--level", type=int)
    c.add_argument("--format", choices=("text", "json"), default="text")
    c.set_defaults(func=cmd_cells)

    k = sub.add_parser("check", help="recompute oracle and invariance probes")
    k.add_argument("--state", required=True)
    k.add_argument("--probes", type=int, default=10)
    k.set_defaults(func=cmd_check)

    r = sub.add_parser("bench", help="classical vs incremental timings on random pairs")
    r.add_argument("--dims", type=int, choices=(2, 3), required=True)
    r.add_argument("--count", type=int, default=60)
    r.add_argument("--terms", type=int)
    r.add_argument("--degree", type=int)
    r.add_argument("--seed", type=int, default=0)
    r.add_argument("--format", choices=("table", "json"), default="table")
    r.add_argument("--progress", action="store_true", help="report progress on stderr")
    r.set_defaults(func=cmd_bench)

    pl = sub.add_parser("plot", help="SVG or CSV rendering of a 2-variable state")
    pl.add_argument("--state", required=True)
    pl.add_argument("--out", required=True, help="file.svg or file.csv")
    pl.add_argument("--window", type=_window, default=(-2.0, 2.0, -2.0, 2.0), help="xmin,xmax,ymin,ymax")
    pl.set_defaults(func=cmd_plot)
    return p


def main(argv=None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as e:
        print(f"incrcad: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except CadError as e:
        print(f"{e.code}: {e}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as e:
        print(f"E_IO: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
