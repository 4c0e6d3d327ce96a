"""Command line front end.

    ttg check     SPACE [--subset LIT] [--point P]
    ttg dim       SPACE [--kind krull|cbrank] [--point P] [--values a=0,b=1]
    ttg compat    SPACE [--kind krull|cbrank]
    ttg thomason  SPACE [--subset LIT]
    ttg visible   SPACE [--point P]
    ttg ltg       SPACE --supp LIT [--kind krull|cbrank] [--compact]
    ttg stone     spec|semiartinian|roundtrip|sigma PRESENTATION [--objects FILE]

Exit status: 0 on success, 1 when a mathematical check fails, 2 on bad input.
Expected errors are printed as ``error: <ErrorName>: <message>``.
"""

from __future__ import annotations

import argparse
import sys
from typing import Callable, Optional, Sequence

from . import dimfn, ltg, stone
from .errors import SpaceFormatError, TTGError
from .literal import format_point, format_subset, load_space, parse_point, parse_subset
from .ordinal import format_ordinal, parse as parse_ordinal
from .space import FiniteSpace, OrdinalSpace, visibility_witness

KINDS = ("krull", "cbrank")


def _default_kind(space) -> str:
    return "krull" if isinstance(space, FiniteSpace) else "cbrank"


def _yes(flag: bool) -> str:
    return "yes" if flag else "no"


def _points(space) -> list:
    # deterministic order: by name on finite spaces
    return sorted(space.points, key=space.name)


# --- subcommands ---------------------------------------------------------------------


def cmd_check(args, out: Callable[[str], None]) -> int:
    sp = load_space(args.space)
    out(f"space {sp.kind}")
    out(f"constructible {_yes(sp.is_constructible())}")
    try:
        out(f"cb rank {format_ordinal(dimfn.space_cb_rank(sp))}")
    except TTGError as exc:
        out(f"cb rank undefined ({exc.name})")
    if isinstance(sp, FiniteSpace):
        out(f"points {len(sp)}")
        out(f"krull dim {format_ordinal(dimfn.krull(sp).space_dim)}")
        out(f"closed points {format_subset(sp, sp.closed_points())}")
    if args.subset is not None:
        s = parse_subset(sp, args.subset)
        out(f"subset {format_subset(sp, s)}")
        out(f"closure {format_subset(sp, sp.closure(s))}")
        out(f"quasi-compact open {_yes(sp.is_quasi_compact_open(s))}")
        out(f"thomason {_yes(sp.is_thomason(s))}")
        out(f"proconstructible {_yes(sp.is_proconstructible(s))}")
    if args.point is not None:
        x = parse_point(sp, args.point)
        out(f"point {format_point(sp, x)}")
        out(f"z-set {format_subset(sp, sp.z_set(x))}")
    return 0


def cmd_dim(args, out) -> int:
    sp = load_space(args.space)
    if args.values is not None:
        if not isinstance(sp, FiniteSpace):
            raise SpaceFormatError("--values is available for finite spaces only")
        values = {}
        for item in args.values.split(","):
            name, _, value = item.partition("=")
            values[sp.point(name.strip())] = parse_ordinal(value)
        if set(values) != set(sp.points):
            missing = sorted(sp.name(x) for x in set(sp.points) - set(values))
            raise SpaceFormatError(f"--values misses points {missing}")
        assignment = dimfn.DimensionAssignment.from_values(sp, values)
    else:
        assignment = dimfn.dimension_function(args.kind or _default_kind(sp))(sp)
    if args.point is not None:
        x = parse_point(sp, args.point)
        out(f"dim {format_point(sp, x)} = {format_ordinal(assignment(x))}")
    elif isinstance(sp, FiniteSpace):
        for x in _points(sp):
            out(f"dim {sp.name(x)} = {format_ordinal(assignment(x))}")
    else:
        # infinitely many points: one line per level set
        for value, level in assignment.levels:
            out(f"dim {format_subset(sp, level)} = {format_ordinal(value)}")
    out(f"space_dim = {format_ordinal(assignment.space_dim)}")
    report = dimfn.validate(assignment)
    for line in report.lines():
        out(line)
    return 0 if report.passes else 1


def cmd_compat(args, out) -> int:
    sp = load_space(args.space)
    report = dimfn.check_compatibility(sp, args.kind or _default_kind(sp))
    for line in report.lines():
        out(line)
    return 0 if report.passes else 1


def cmd_thomason(args, out) -> int:
    sp = load_space(args.space)
    if args.subset is not None:
        s = parse_subset(sp, args.subset)
        out(f"thomason {_yes(sp.is_thomason(s))}")
        return 0
    ideals = ltg.thomason_ideals(sp)
    for s in ideals:
        out(format_subset(sp, s))
    out(f"count {len(ideals)}")
    return 0


def cmd_visible(args, out) -> int:
    sp = load_space(args.space)
    if args.point is not None:
        pts = [parse_point(sp, args.point)]
    elif isinstance(sp, FiniteSpace):
        pts = _points(sp)
    else:
        raise SpaceFormatError("--point is required for infinite spaces")
    for x in pts:
        v, w = visibility_witness(sp, x)
        out(f"visible {format_point(sp, x)} V={format_subset(sp, v)} W={format_subset(sp, w)}")
    return 0


def cmd_ltg(args, out) -> int:
    sp = load_space(args.space)
    supp = parse_subset(sp, args.supp)
    trace = ltg.filtration(ltg.SupportDatum(sp, supp), args.kind or _default_kind(sp), compact=args.compact)
    for line in trace.lines():
        out(line)
    return 0


def cmd_stone(args, out) -> int:
    p = stone.parse_presentation(args.presentation)
    if args.action == "spec":
        sp = stone.spec_of(p)
        if isinstance(sp, FiniteSpace):
            out(f"discrete {len(sp)} points")
        elif isinstance(sp, OrdinalSpace):
            out(f"ordinal [0,{format_ordinal(sp.top)}]")
        else:
            out("cantor")
        out(f"constructible {_yes(sp.is_constructible())}")
        return 0
    if args.action == "semiartinian":
        out(_yes(stone.is_semi_artinian(p)))
        return 0
    if args.action == "roundtrip":
        report = stone.roundtrip_check(p)
        for line in report.lines():
            out(line)
        return 0 if report.passes else 1
    # sigma
    if args.objects is None:
        raise SpaceFormatError("stone sigma needs --objects FILE")
    if not isinstance(p, stone.ProductOfFields):
        raise stone.PresentationError("objects are modelled for products of fields only")
    objects = stone.load_objects(args.objects, p.k)
    for name in sorted(objects):
        out(f"supp {name} = {_fmt_indices(stone.object_support(p, objects[name]))}")
    out(f"sigma = {_fmt_indices(stone.sigma(p, list(objects.values())))}")
    return 0


def _fmt_indices(s) -> str:
    return "{" + ",".join(str(i) for i in sorted(s)) + "}"


# --- parser ----------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ttg", description="Spectral spaces, dimension functions and supports.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name: str, func, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(func=func)
        return p

    p = add("check", cmd_check, "run the predicate suite on a space")
    p.add_argument("space")
    p.add_argument("--subset")
    p.add_argument("--point")

    p = add("dim", cmd_dim, "compute and validate a dimension function")
    p.add_argument("space")
    p.add_argument("--kind", choices=KINDS)
    p.add_argument("--point")
    p.add_argument("--values", help="explicit assignment on a finite space, e.g. a=0,b=w+1")

    p = add("compat", cmd_compat, "check compatibility across slices")
    p.add_argument("space")
    p.add_argument("--kind", choices=KINDS)

    p = add("thomason", cmd_thomason, "test a subset or enumerate Thomason subsets")
    p.add_argument("space")
    p.add_argument("--subset")

    p = add("visible", cmd_visible, "print visibility witnesses")
    p.add_argument("space")
    p.add_argument("--point")

    p = add("ltg", cmd_ltg, "print the filtration trace of a support")
    p.add_argument("space")
    p.add_argument("--supp", required=True, help="subset literal, or 'all'")
    p.add_argument("--kind", choices=KINDS)
    p.add_argument("--compact", action="store_true", help="omit limit stages")

    p = add("stone", cmd_stone, "Boolean presentations and the support bijection")
    p.add_argument("action", choices=("spec", "semiartinian", "roundtrip", "sigma"))
    p.add_argument("presentation", help="fields:<k>, interval:<ordinal> or atomless")
    p.add_argument("--objects")
    return parser


def main(argv: Optional[Sequence[str]] = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    def out(line: str) -> None:
        print(line, file=stdout)

    try:
        return args.func(args, out)
    except TTGError as exc:
        print(f"error: {exc.name}: {exc}", file=stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
