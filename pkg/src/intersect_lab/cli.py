"""Command-line front end.

Exit codes: 0 when every assertion passes, 1 when at least one fails,
2 for usage, parse, input or model-construction errors.
"""

from __future__ import annotations

import argparse
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Sequence

from . import cones as cl
from .dsl.evaluator import CORE_ERRORS, Evaluator, describe_class, fmt_vec, run_file
from .dsl.syntax import ScenarioError, parse_expr
from .exact import format_rational, parse_rational
from .models import spaces as sp
from .report import FORMATS, merge_reports, emit_report, render_matrix

SCENARIO_ENV = "INTERSECT_LAB_SCENARIOS"
EXIT_OK, EXIT_FAIL, EXIT_ERROR = 0, 1, 2


class UsageError(Exception):
    pass


def scenario_dir() -> Path:
    override = os.environ.get(SCENARIO_ENV)
    if override:
        return Path(override)
    return Path(str(resources.files("intersect_lab") / "scenarios"))


def _write(data: bytes, out: str | None) -> None:
    if out:
        Path(out).write_bytes(data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()


# expressions typed on the command line -------------------------------------------

def _space(name: str) -> sp.SpaceModel:
    try:
        return sp.build_space(name)
    except sp.UnknownSpace as exc:
        raise UsageError(str(exc)) from None


def _class(space: sp.SpaceModel, text: str):
    return Evaluator("<arg>").expr(parse_expr(text, "<arg>"), space)


def _vector(space: sp.SpaceModel | None, text: str) -> tuple[Fraction, ...]:
    s = text.strip()
    if s.startswith("["):
        if not s.endswith("]"):
            raise UsageError(f"unterminated vector {text!r}")
        try:
            return tuple(parse_rational(p) for p in s[1:-1].split(","))
        except ValueError as exc:
            raise UsageError(f"bad vector {text!r}: {exc}") from None
    if space is None:
        raise UsageError(f"{text!r} is not a vector literal; pass --space to use class names")
    return tuple(space.vector(_class(space, s)))


def _split(text: str) -> list[str]:
    return [p.strip() for p in text.split(",") if p.strip()]


# subcommands ---------------------------------------------------------------------

def cmd_check(args) -> int:
    reports = [run_file(f) for f in args.files]
    merged = merge_reports(", ".join(args.files), reports)
    _write(emit_report(merged, args.format), args.out)
    return EXIT_OK if merged.ok else EXIT_FAIL


def cmd_repro(args) -> int:
    root = scenario_dir()
    if not root.is_dir():
        raise FileNotFoundError(f"scenario directory {root} not found")
    files = sorted(root.glob("*.isl"), key=lambda p: p.name)
    if not files:
        raise FileNotFoundError(f"no .isl scenarios in {root}")
    with ThreadPoolExecutor(max_workers=args.jobs) as pool:
        reports = list(pool.map(lambda p: run_file(p, label=p.name), files))
    merged = merge_reports("repro", reports)
    _write(emit_report(merged, args.format), args.out)
    return EXIT_OK if merged.ok else EXIT_FAIL


def cmd_table(args) -> int:
    space = _space(args.space)
    rows = _split(args.rows)
    if args.cols:
        cols = _split(args.cols)
    elif isinstance(space, sp.PairingSpace):
        cols = ["L^2", "L*M", "M^2", "B2"]
    else:
        raise UsageError("--cols is required for this space")
    rc = [_class(space, r) for r in rows]
    cc = [_class(space, c) for c in cols]
    cells = [[format_rational(space.pair(r, c)) for c in cc] for r in rc]
    _write(render_matrix(args.space, rows, cols, cells, args.format), args.out)
    return EXIT_OK


def cmd_eval(args) -> int:
    space = _space(args.space)
    x = _class(space, args.expr)
    if space.degree(x) == space.top_degree or isinstance(space, sp.LevelSpace):
        text = format_rational(space.integrate(x))
    else:
        text = describe_class(space, x)
    _write((text + "\n").encode("utf-8"), args.out)
    return EXIT_OK


def cmd_cone(args) -> int:
    space = _space(args.space) if args.space else None
    gens = [_vector(space, g) for g in args.generators]
    if not gens:
        raise UsageError("at least one generator is required")
    dim = len(gens[0])
    if args.op == "dual":
        dual = cl.dual_cone(cl.Cone.from_vectors(gens, dim))
        cells = [[format_rational(x) for x in r] for r in dual.rays]
        names = [f"r{i}" for i in range(len(cells))]
        cols = list(sp.H4_COLUMNS) if isinstance(space, sp.PairingSpace) else \
            [f"x{j}" for j in range(dim)]
        _write(render_matrix("dual ray", names, cols, cells, args.format), args.out)
        return EXIT_OK
    if args.op == "member":
        if args.query is None:
            raise UsageError("cone member needs --query")
        cert = cl.nonnegative_combination(gens, _vector(space, args.query), dim)
        if cert.inside:
            row = ["true", "coefficients", fmt_vec(cert.coefficients)]
        else:
            row = ["false", "separator", fmt_vec(cert.separator)]
        _write(render_matrix("query", [args.query], ["member", "certificate", "value"], [row],
                             args.format), args.out)
        return EXIT_OK
    rows, cells = [], []
    for i, g in enumerate(gens):
        others = [h for j, h in enumerate(gens) if j != i]
        cert = cl.nonnegative_combination(others, g, dim)
        rows.append(args.generators[i])
        if cert.inside:
            cells.append(["false", "coefficients on the others " + fmt_vec(cert.coefficients)])
        else:
            cells.append(["true", "separator " + fmt_vec(cert.separator)])
    _write(render_matrix("generator", rows, ["extremal", "certificate"], cells, args.format),
           args.out)
    return EXIT_OK


def cmd_catalog(args) -> int:
    names = [args.space] if args.space else list(sp.SPACE_NAMES)
    for n in names:
        _space(n)
    _write((sp.catalog_dump(names) + "\n").encode("utf-8"), args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default="md", help="output format")
    common.add_argument("--out", help="write output to this path instead of stdout")

    p = argparse.ArgumentParser(prog="intersect-lab",
                                description="Exact intersection numbers and cone checks.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", parents=[common], help="evaluate scenario files")
    c.add_argument("files", nargs="+")
    c.set_defaults(func=cmd_check)

    r = sub.add_parser("repro", parents=[common], help="evaluate the bundled scenario suite")
    r.add_argument("--jobs", type=int, default=4, help="parallel workers")
    r.set_defaults(func=cmd_repro)

    t = sub.add_parser("table", parents=[common], help="print a pairing matrix")
    t.add_argument("space")
    t.add_argument("--rows", required=True, help="comma-separated classes")
    t.add_argument("--cols", help="comma-separated classes")
    t.set_defaults(func=cmd_table)

    e = sub.add_parser("eval", parents=[common], help="evaluate one class or number")
    e.add_argument("space")
    e.add_argument("expr")
    e.set_defaults(func=cmd_eval)

    k = sub.add_parser("cone", parents=[common], help="dual cone, membership, extremality")
    k.add_argument("op", choices=("dual", "member", "extremal"))
    k.add_argument("generators", nargs="+",
                   help="vectors like '[1,0,-1]' or class names with --space")
    k.add_argument("--space", help="space whose coordinate vectors the classes use")
    k.add_argument("--query", help="vector or class to test (member)")
    k.set_defaults(func=cmd_cone)

    g = sub.add_parser("catalog", parents=[common], help="dump generators and named classes (JSON)")
    g.add_argument("space", nargs="?")
    g.set_defaults(func=cmd_catalog)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_ERROR
    try:
        return args.func(args)
    except ScenarioError as exc:
        print(f"{exc.position}: error: {exc.message}", file=sys.stderr)
    except FileNotFoundError as exc:
        name = exc.filename if exc.filename else str(exc)
        print(f"error: {name}: file not found" if exc.filename else f"error: {name}",
              file=sys.stderr)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
    except CORE_ERRORS as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
    return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
