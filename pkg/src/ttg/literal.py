"""Text forms for points, subsets and space files.

Subset literals::

    finite spaces   {a,b,c}   {}   all   empty
    ordinal spaces  [b,g]  [b,g)  co(...)  r<k>[lo,end)  {d1,d2}  all  empty
                    pieces joined with "u", e.g. [0,5]u[w,w]

``co(U)`` is the complement of ``U`` in the space and ``r<k>[lo,end)`` is
the set of rank-k points in the ordinal interval [lo, end).  Rendering is
deterministic: a closed set with finitely many convex pieces is printed as
a union of closed intervals, an open set whose complement is such a union as
``co(...)``, other finite interval unions with half-open pieces, and the
remaining sets by their rank runs.

Space files are line oriented::

    finite <n> | ordinal <ordinal-text> | cantor
    point <name>          (finite only, one per point)
    spec <name> <name>    (finite only, x specialises to y)

Blank lines and ``#`` comments are ignored.
"""

from __future__ import annotations

import re
from pathlib import Path
from typing import Union

from .errors import InvalidSubset, OrdinalSyntaxError, SpaceFormatError, SubsetSyntaxError
from .ordinal import Kind, Ordinal, classify, format_ordinal, parse as parse_ordinal, predecessor
from .ordset import OrdinalSet, first_in_rank
from .space import CantorSpace, FiniteSpace, OrdinalSpace, Space, SpaceView, as_space

_NAME = re.compile(r"[A-Za-z0-9_.'\-]+$")


# --- points ----------------------------------------------------------------------


def parse_point(space, text: str):
    sp = as_space(space)
    text = text.strip()
    if isinstance(sp, FiniteSpace):
        return sp.point(text)
    if isinstance(sp, OrdinalSpace):
        return sp.check_point(parse_ordinal(text))
    raise InvalidSubset("the Cantor marker has no addressable points")


def format_point(space, x) -> str:
    sp = as_space(space)
    if isinstance(sp, FiniteSpace):
        return sp.name(x)
    return format_ordinal(x)


# --- subsets ---------------------------------------------------------------------


def parse_subset(space, text: str):
    sp = as_space(space)
    src = text.strip()
    if isinstance(sp, CantorSpace):
        raise InvalidSubset("the Cantor marker has no subset literals")
    if src == "all":
        return sp.full()
    if src in ("empty", "{}"):
        return sp.empty()
    if isinstance(sp, FiniteSpace):
        return _parse_finite(sp, src)
    try:
        result = _parse_union(sp, src, 0)
    except OrdinalSyntaxError as exc:
        raise SubsetSyntaxError(f"bad ordinal in subset literal {text!r}: {exc}") from None
    return sp.check_subset(result)


def _parse_finite(sp: FiniteSpace, src: str) -> frozenset:
    if not (src.startswith("{") and src.endswith("}")):
        raise SubsetSyntaxError(f"finite subsets are written {{a,b,...}}, got {src!r} at position 0")
    body = src[1:-1]
    names = [n.strip() for n in body.split(",")] if body.strip() else []
    pos = 1
    for name in names:
        if not _NAME.match(name):
            raise SubsetSyntaxError(f"bad point name {name!r} at position {src.find(name, pos)}")
        pos = src.find(name, pos) + len(name)
    return sp.subset(names)


def _split_top(src: str, sep: str) -> list[tuple[str, int]]:
    parts, depth, start = [], 0, 0
    for i, ch in enumerate(src):
        if ch == "(":
            depth += 1
        elif ch == ")" and depth:
            depth -= 1
        elif ch == sep and depth == 0:
            parts.append((src[start:i], start))
            start = i + 1
    parts.append((src[start:], start))
    return parts


def _parse_union(sp: OrdinalSpace, src: str, offset: int) -> OrdinalSet:
    out = OrdinalSet.empty(sp.top)
    for piece, at in _split_top(src, "u"):
        out = out | _parse_piece(sp, piece.strip(), offset + at)
    return out


def _parse_piece(sp: OrdinalSpace, piece: str, at: int) -> OrdinalSet:
    top = sp.top
    if not piece:
        raise SubsetSyntaxError(f"empty piece at position {at}")
    if piece.startswith("co(") and piece.endswith(")"):
        inner = _parse_union(sp, piece[3:-1], at + 3)
        return sp.carrier - inner
    if piece.startswith("{") and piece.endswith("}"):
        body = piece[1:-1]
        pts = [parse_ordinal(t) for t in body.split(",")] if body.strip() else []
        return OrdinalSet.points(top, pts)
    m = re.fullmatch(r"r(\d+)\[([^,\])]+),([^,\])]+)\)", piece)
    if m:
        return OrdinalSet.rank_run(top, int(m.group(1)), parse_ordinal(m.group(2)), parse_ordinal(m.group(3)))
    m = re.fullmatch(r"\[([^,\])]+),([^,\])]+)([\])])", piece)
    if m:
        lo, hi = parse_ordinal(m.group(1)), parse_ordinal(m.group(2))
        if hi < lo:
            raise SubsetSyntaxError(f"interval end below its start at position {at}")
        if m.group(3) == "]":
            return OrdinalSet.interval(top, lo, hi)
        return OrdinalSet.half_open(top, lo, hi)
    raise SubsetSyntaxError(f"cannot read subset piece {piece!r} at position {at}")


def _format_components(comps) -> str:
    parts = []
    for m, t in comps:
        if classify(t).kind is Kind.SUCCESSOR:
            parts.append(f"[{format_ordinal(m)},{format_ordinal(predecessor(t))}]")
        else:
            parts.append(f"[{format_ordinal(m)},{format_ordinal(t)})")
    return "u".join(parts)


def format_subset(space, s) -> str:
    sp = as_space(space)
    if isinstance(sp, FiniteSpace):
        s = sp.check_subset(s)
        return "{" + ",".join(sorted(sp.name(x) for x in s)) + "}"
    s = sp.check_subset(s)
    if s.is_empty():
        return "{}"
    closed = sp.is_closed(s)
    comps = s.components()
    if closed and comps is not None:
        return _format_components(comps)
    if sp.is_open(s):
        rest = sp.carrier - s
        rest_comps = rest.components()
        if rest_comps is not None and sp.is_full:
            return f"co({_format_components(rest_comps)})"
    if comps is not None:
        return _format_components(comps)
    return "u".join(
        f"r{k}[{format_ordinal(lo)},{format_ordinal(_short_end(end, k))})" for k, lo, end in s.iter_runs()
    )


def _short_end(end: Ordinal, k: int) -> Ordinal:
    # r<k>[lo,end) snaps end up into rank k, so w^2 reads back as w^2+w for k = 1
    head = Ordinal(end.terms[:-1])
    if end.terms[-1][1] == 1 and not head.is_zero() and first_in_rank(head, k) == end:
        return head
    return end


# --- space files -------------------------------------------------------------------


def loads_space(text: str) -> Space:
    lines = []
    for number, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append((number, line.split()))
    if not lines:
        raise SpaceFormatError("empty space file")
    number, head = lines[0]
    if head[0] == "cantor" and len(head) == 1:
        if len(lines) > 1:
            raise SpaceFormatError(f"line {lines[1][0]}: cantor takes no further lines")
        return CantorSpace()
    if head[0] == "ordinal" and len(head) >= 2:
        if len(lines) > 1:
            raise SpaceFormatError(f"line {lines[1][0]}: ordinal takes no further lines")
        try:
            return OrdinalSpace(parse_ordinal(" ".join(head[1:])))
        except OrdinalSyntaxError as exc:
            raise SpaceFormatError(f"line {number}: {exc}") from None
    if head[0] != "finite" or len(head) != 2 or not head[1].isdigit():
        raise SpaceFormatError(f"line {number}: expected 'finite <n>', 'ordinal <ordinal>' or 'cantor'")
    n = int(head[1])
    names: list[str] = []
    rels: list[tuple[str, str, int]] = []
    for number, words in lines[1:]:
        if words[0] == "point" and len(words) == 2:
            if rels:
                raise SpaceFormatError(f"line {number}: points must precede spec lines")
            if not _NAME.match(words[1]) or words[1] in names:
                raise SpaceFormatError(f"line {number}: bad or repeated point name {words[1]!r}")
            names.append(words[1])
        elif words[0] == "spec" and len(words) == 3:
            rels.append((words[1], words[2], number))
        else:
            raise SpaceFormatError(f"line {number}: cannot read {' '.join(words)!r}")
    if len(names) != n:
        raise SpaceFormatError(f"header announces {n} points but {len(names)} are listed")
    index = {name: i for i, name in enumerate(names)}
    pairs = []
    for a, b, number in rels:
        if a not in index or b not in index:
            raise SpaceFormatError(f"line {number}: unknown point in 'spec {a} {b}'")
        pairs.append((index[a], index[b]))
    return FiniteSpace(names, pairs)


def load_space(path: Union[str, Path]) -> Space:
    return loads_space(Path(path).read_text())


def dumps_space(space: Space) -> str:
    sp = as_space(space)
    if isinstance(sp, CantorSpace):
        return "cantor\n"
    if isinstance(sp, OrdinalSpace):
        if not sp.is_full:
            raise SpaceFormatError("only full ordinal spaces have a file form")
        return f"ordinal {format_ordinal(sp.top)}\n"
    lines = [f"finite {len(sp)}"]
    lines += [f"point {sp.name(x)}" for x in sp.points]
    for x in sp.points:
        for y in sorted(sp.down[x]):
            if y != x:
                lines.append(f"spec {sp.name(x)} {sp.name(y)}")
    return "\n".join(lines) + "\n"
