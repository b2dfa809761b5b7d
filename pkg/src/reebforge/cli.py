"""Command-line interface.

Exit codes: 0 all computations and checks succeeded, 1 input or verification
failure, 2 usage error, 3 cell-cap budget exceeded.  Identical inputs and
flags produce byte-identical output.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import fixtures as fixtures_mod
from .bounds import (
    bound_closed,
    bound_general,
    bound_reeb,
    bound_report,
    bound_sign_components,
)
from .errors import BudgetExceededError, ReebForgeError
from .fiberprod import descent_check, fiber_power_betti
from .homology import betti_report, euler_characteristic
from .io import (
    complex_to_doc,
    dumps_report,
    function_from_doc,
    function_to_doc,
    load_complex,
    map_from_doc,
    map_to_doc,
    parse_document,
    reeb_complex_to_doc,
    reeb_graph_to_doc,
    reeb_graph_to_dot,
)
from .reeb import b1_inequality_check, pl_as_simplicial_map, reeb_graph, reeb_space, verify_quotient

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_BUDGET = 3


def _write_output(text, out_path):
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load_map_or_function(path, close_faces):
    """A map file carries 'vertex_images'; a function file carries 'values'."""
    with open(path, encoding="utf-8") as fh:
        doc = parse_document(fh.read())
    base = os.path.dirname(path)
    if isinstance(doc, dict) and "vertex_images" in doc:
        return map_from_doc(doc, base_dir=base, close_faces=close_faces), None
    if isinstance(doc, dict) and "values" in doc:
        g = function_from_doc(doc, base_dir=base, close_faces=close_faces)
        return None, g
    raise ReebForgeError(f"{path} is neither a map file nor a function file")


def cmd_betti(args):
    complex_ = load_complex(args.file, close_faces=args.close_faces)
    _write_output(dumps_report(betti_report(complex_)), args.output)
    return EXIT_OK


def cmd_reeb(args):
    f, g = _load_map_or_function(args.file, args.close_faces)
    if args.dot and not args.graph:
        raise ReebForgeError("--dot renders Reeb graphs; combine it with --graph")
    if args.graph:
        if g is None:
            raise ReebForgeError("--graph needs a PL function file")
        graph = reeb_graph(g)
        if args.dot:
            _write_output(reeb_graph_to_dot(graph), args.output)
        else:
            _write_output(dumps_report(reeb_graph_to_doc(graph)), args.output)
        return EXIT_OK
    if f is None:
        f = pl_as_simplicial_map(g).map
    space = reeb_space(f)
    bv = space.betti()
    report = {
        "betti": bv.as_list(),
        "total": bv.total,
        "euler": euler_characteristic(space.realization),
        "num_strata": len(space.strata),
        "strata": reeb_complex_to_doc(space)["strata"],
    }
    if args.emit_realization:
        report["realization"] = complex_to_doc(space.realization)
    _write_output(dumps_report(report), args.output)
    return EXIT_OK


def cmd_fiber_power(args):
    f, g = _load_map_or_function(args.file, args.close_faces)
    if f is None:
        f = pl_as_simplicial_map(g).map
    bv = fiber_power_betti(f, args.p, engine=args.engine, cell_cap=args.cell_cap)
    report = {
        "p": args.p,
        "engine": args.engine,
        "betti": bv.as_list(),
        "total": bv.total,
    }
    _write_output(dumps_report(report), args.output)
    return EXIT_OK


def cmd_verify(args):
    f, g = _load_map_or_function(args.file, args.close_faces)
    if f is None:
        f = pl_as_simplicial_map(g).map
    checks = {}
    if args.descent is not None:
        checks["descent"] = descent_check(
            f,
            target=args.target,
            p_max=args.descent,
            cell_cap=args.cell_cap,
            engine=args.engine,
            threads=args.threads,
        )
    if args.b1:
        checks["b1"] = b1_inequality_check(f)
    if args.quotient:
        checks["quotient"] = verify_quotient(f)
    if not checks:
        raise ReebForgeError("choose at least one of --descent, --b1, --quotient")
    ok = all(section["ok"] for section in checks.values())
    report = {"checks": checks, "ok": ok}
    _write_output(dumps_report(report), args.output)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_bounds(args):
    name = args.name
    if name == "closed":
        value = bound_closed(args.s, args.d, args.k)
        report = bound_report(name, value, s=args.s, d=args.d, k=args.k)
    elif name == "general":
        value = bound_general(args.s, args.d, args.k)
        report = bound_report(name, value, s=args.s, d=args.d, k=args.k)
    elif name == "sign-components":
        value = bound_sign_components(args.s, args.d, args.k)
        report = bound_report(name, value, s=args.s, d=args.d, k=args.k)
    elif name == "reeb":
        value = bound_reeb(args.s, args.d, args.n, args.m, args.c)
        report = bound_report(name, value, s=args.s, d=args.d, n=args.n, m=args.m, c=args.c)
    else:
        raise ReebForgeError(f"unknown bound {name!r}")
    _write_output(dumps_report(report), args.output)
    return EXIT_OK


def cmd_fixtures(args):
    if args.action == "list":
        listing = {
            name: {k: list(v) for k, v in params.items()}
            for name, params in fixtures_mod.FIXTURE_PARAMS.items()
        }
        _write_output(dumps_report({"fixtures": listing}), None)
        return EXIT_OK
    params = {}
    for item in args.param or ():
        if "=" not in item:
            raise ReebForgeError(f"--param expects key=value, got {item!r}")
        key, _, value = item.partition("=")
        try:
            params[key] = int(value)
        except ValueError:
            raise ReebForgeError(f"parameter {key!r} needs an integer, got {value!r}") from None
    spec = fixtures_mod.FixtureSpec(args.name, params)
    artifacts = fixtures_mod.build_fixture(spec)
    os.makedirs(args.output, exist_ok=True)
    written = []
    if "map" in artifacts:
        path = os.path.join(args.output, f"{args.name}.map.json")
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(dumps_report(map_to_doc(artifacts["map"])))
        written.append(path)
    if "function" in artifacts:
        path = os.path.join(args.output, f"{args.name}.function.json")
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(dumps_report(function_to_doc(artifacts["function"])))
        written.append(path)
    _write_output(dumps_report({"written": written}), None)
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="reebforge",
        description="Exact Reeb graphs/spaces of simplicial maps, Betti numbers, "
        "descent checks, and quantitative bound evaluators.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("-o", "--output", help="write the report to this path instead of stdout")
        p.add_argument(
            "--close-faces",
            action="store_true",
            help="complete missing faces of input simplices instead of rejecting them",
        )

    p = sub.add_parser("betti", help="Betti numbers of a complex file")
    p.add_argument("file")
    add_common(p)
    p.set_defaults(func=cmd_betti)

    p = sub.add_parser("reeb", help="Reeb graph or Reeb space of a map/function file")
    p.add_argument("file")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--graph", action="store_true", help="Reeb graph of a PL function")
    group.add_argument("--space", action="store_true", help="Reeb space of a simplicial map")
    p.add_argument("--dot", action="store_true", help="emit DOT instead of a report (--graph only)")
    p.add_argument("--emit-realization", action="store_true", help="inline the realization complex")
    add_common(p)
    p.set_defaults(func=cmd_reeb)

    p = sub.add_parser("fiber-power", help="Betti numbers of an iterated fiber power")
    p.add_argument("file")
    p.add_argument("-p", type=int, required=True, help="fold count minus one (p >= 0)")
    p.add_argument("--engine", choices=("auto", "nerve", "cells"), default="auto")
    p.add_argument("--cell-cap", type=int, default=None)
    add_common(p)
    p.set_defaults(func=cmd_fiber_power)

    p = sub.add_parser("verify", help="run verification checks on a map file")
    p.add_argument("file")
    p.add_argument("--descent", type=int, default=None, metavar="P_MAX")
    p.add_argument("--b1", action="store_true")
    p.add_argument("--quotient", action="store_true")
    p.add_argument("--target", choices=("image", "reeb"), default="image")
    p.add_argument("--engine", choices=("auto", "nerve", "cells"), default="auto")
    p.add_argument("--cell-cap", type=int, default=None)
    p.add_argument("--threads", type=int, default=1)
    add_common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bounds", help="evaluate a quantitative bound exactly")
    p.add_argument("name", choices=("closed", "general", "sign-components", "reeb"))
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--m", type=int, default=1)
    p.add_argument("-c", type=int, default=1, help="exponent constant for the reeb bound")
    p.add_argument("-o", "--output", help="write the report to this path instead of stdout")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("fixtures", help="list fixtures or emit one as files")
    fsub = p.add_subparsers(dest="action", required=True)
    pl = fsub.add_parser("list")
    pl.set_defaults(func=cmd_fixtures, action="list")
    pe = fsub.add_parser("emit")
    pe.add_argument("name")
    pe.add_argument("--param", action="append", metavar="KEY=VALUE")
    pe.add_argument("-o", "--output", required=True, help="directory for the emitted files")
    pe.set_defaults(func=cmd_fixtures, action="emit")

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BudgetExceededError as exc:
        print(f"reebforge: budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except ReebForgeError as exc:
        print(f"reebforge: error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except OSError as exc:
        print(f"reebforge: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
