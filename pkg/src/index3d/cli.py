"""Command-line interface: ``index3d <subcommand> ...``.

All orders are half-exponents: ``--order 10`` means the result is exact below
q^5. Exit status is 0 on success, 1 when a computation fails and 2 on usage
errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from importlib import resources
from pathlib import Path

from .errors import Index3DError, ParseError
from .expr import parse_element
from .indexer import SummationOptions, check_quotient_relations, dgg_index, evaluate_element
from .pachner import build_move_map, load_descriptor, verify_index_compatibility
from .qseries import QSeries
from .qtorus import TorusElement
from .tetindex import j_index, tet_index
from .triangulation import load, validation_report

KB_EXPR = "-q^(-1/2)*(Z1^-1*Zpp2 + Zpp1*Z2^-1 + Zpp1*Zpp2)"


class UsageError(Exception):
    pass


def fixture_path(name: str) -> Path:
    """The given path if it exists, else the bundled fixture of the same file name."""
    p = Path(name)
    if p.exists():
        return p
    bundled = resources.files("index3d") / "fixtures" / p.name
    if bundled.is_file():
        return Path(str(bundled))
    return p


def series_json(s: QSeries) -> dict:
    return {"min_exp": s.min_exp, "coefficients": list(s.coeffs), "order": s.order, "text": s.to_text()}


def series_from_json(doc: dict) -> QSeries:
    return QSeries(doc["min_exp"], doc["coefficients"], doc["order"])


def _opts(args) -> SummationOptions:
    try:
        return SummationOptions(args.order, args.shell_window, args.max_radius)
    except ValueError as err:
        raise UsageError(str(err)) from None


def _emit(args, doc: dict, text: str) -> None:
    print(json.dumps(doc, sort_keys=True) if args.json else text)


def _single_monomial(u: TorusElement) -> tuple[int, ...]:
    if len(u) != 1:
        raise ParseError("--monomial must be a single Weyl monomial")
    (k, _), = u
    return k


# -- subcommands --------------------------------------------------------------

def cmd_tet_index(args) -> None:
    s = tet_index(args.m, args.e, args.order)
    _emit(args, series_json(s), s.pretty())


def cmd_j_index(args) -> None:
    s = j_index(args.a, args.b, args.c, args.order)
    _emit(args, series_json(s), s.pretty())


def _result_text(res) -> str:
    return f"{res.series.pretty()}\nradius {res.radius}, {res.n_terms} terms, termination {res.termination}"


def cmd_index(args) -> None:
    tri = load(fixture_path(args.triangulation))
    u = parse_element(args.element, tri.num_tetrahedra)
    res = evaluate_element(tri, u, _opts(args))
    _emit(args, res.to_dict(), _result_text(res))


def cmd_dgg(args) -> None:
    tri = load(fixture_path(args.triangulation))
    try:
        m = Fraction(args.m)
    except ValueError:
        raise UsageError(f"-m expects an integer or half-integer, got {args.m!r}") from None
    s = dgg_index(tri, args.cusp, m, args.e, _opts(args))
    _emit(args, series_json(s), s.pretty())


def cmd_check_relations(args) -> None:
    tri = load(fixture_path(args.triangulation), validate=not args.no_validate)
    S0 = _single_monomial(parse_element(args.monomial, tri.num_tetrahedra))
    report = check_quotient_relations(tri, S0, _opts(args))
    doc = {"passed": report.passed, "checks": [vars(c) for c in report.checks]}
    _emit(args, doc, "\n".join(report.lines()))
    if not report.passed:
        raise SystemExit(1)


def cmd_pachner_check(args) -> None:
    desc = load_descriptor(fixture_path(args.move))
    build_move_map(desc)
    samples = [("1", TorusElement.unit(desc.source.num_tetrahedra))]
    if args.element:
        samples.append((args.element, parse_element(args.element, desc.source.num_tetrahedra)))
    checks = verify_index_compatibility(desc, samples, _opts(args))
    lines = ["omega preserved on all generator pairs"]
    for c in checks:
        tail = "" if c.passed else f" (first difference at q^({c.first_difference}/2))"
        lines.append(f"{'PASS' if c.passed else 'FAIL'} {c.label}: {c.source_series.pretty()}{tail}")
    doc = {
        "passed": all(c.passed for c in checks),
        "checks": [
            {"element": c.label, "passed": c.passed, "first_difference": c.first_difference,
             "source": series_json(c.source_series), "target": series_json(c.target_series)}
            for c in checks
        ],
    }
    _emit(args, doc, "\n".join(lines))
    if not doc["passed"]:
        raise SystemExit(1)


def cmd_validate(args) -> None:
    tri = load(fixture_path(args.triangulation), validate=False)
    lines = validation_report(tri)
    _emit(args, {"name": tri.name, "valid": True, "checks": lines}, "\n".join([f"{tri.name}: valid"] + lines))


def cmd_example(args) -> None:
    tri = load(fixture_path("fig8.json"))
    u = parse_element(KB_EXPR, 2)
    if args.iota:
        u = u.iota()
    res = evaluate_element(tri, u, _opts(args))
    # undo the -q^{-1/2} (resp. -q^{1/2} after iota) normalization of qtr(K_b)
    s = -res.series.shift(-1 if args.iota else 1)
    label = "-q^(-1/2) I(iota K_b)" if args.iota else "-q^(1/2) I(K_b)"
    doc = dict(series_json(s), radius=res.radius, termination=res.termination)
    _emit(args, doc, f"{label} = {s.pretty()}")


# -- parser ---------------------------------------------------------------------

def _add_sum_flags(p, default_order=None) -> None:
    p.add_argument("--order", type=int, required=default_order is None, default=default_order,
                   help="target half-exponent (exact below q^(order/2))")
    p.add_argument("--shell-window", type=int, default=3)
    p.add_argument("--max-radius", type=int, default=200)
    p.add_argument("--json", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="index3d", description="Exact 3D-index computations.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("tet-index", help="tetrahedron index I(m, e)")
    p.add_argument("m", type=int)
    p.add_argument("e", type=int)
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_tet_index)

    p = sub.add_parser("j-index", help="symmetric tetrahedron index J(a, b, c)")
    for name in ("a", "b", "c"):
        p.add_argument(name, type=int)
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_j_index)

    p = sub.add_parser("index", help="index of a quantum torus element")
    p.add_argument("triangulation")
    p.add_argument("--element", required=True)
    _add_sum_flags(p)
    p.set_defaults(func=cmd_index)

    p = sub.add_parser("dgg", help="index with peripheral charges (m, e)")
    p.add_argument("triangulation")
    p.add_argument("--cusp", type=int, default=0)
    p.add_argument("-m", required=True, help="integer or half-integer, e.g. 1/2")
    p.add_argument("-e", type=int, required=True)
    _add_sum_flags(p)
    p.set_defaults(func=cmd_dgg)

    p = sub.add_parser("check-relations", help="edge, central and Lagrangian relations at a monomial")
    p.add_argument("triangulation")
    p.add_argument("--monomial", default="1")
    p.add_argument("--no-validate", action="store_true", help="skip gluing-data validation")
    _add_sum_flags(p)
    p.set_defaults(func=cmd_check_relations)

    p = sub.add_parser("pachner-check", help="index compatibility across a move")
    p.add_argument("move")
    p.add_argument("--element")
    _add_sum_flags(p)
    p.set_defaults(func=cmd_pachner_check)

    p = sub.add_parser("validate", help="validate gluing data")
    p.add_argument("triangulation")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("example", help="worked examples")
    p.add_argument("name", choices=["fig8-kb"])
    p.add_argument("--iota", action="store_true", help="evaluate the mirror image instead")
    _add_sum_flags(p, default_order=18)
    p.set_defaults(func=cmd_example)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "order", 1) < 1:
        parser.error("--order must be at least 1")
    try:
        args.func(args)
    except UsageError as err:
        parser.error(str(err))
    except Index3DError as err:
        print(f"{type(err).__name__}: {err}", file=sys.stderr)
        return 1
    except SystemExit as err:
        return int(err.code or 0)
    return 0


if __name__ == "__main__":
    sys.exit(main())
