"""Dimension functions on spectral spaces.

A dimension function is stored by its level sets: for every attained
ordinal value, the exact subset of points taking that value.  This works the
same way for finite spaces (frozensets) and for ordinal spaces (``OrdinalSet``
values), where the function has infinitely many points but finitely many
values.

Built-in constructors:

* ``krull``  : transfinite Krull dimension of a finite (noetherian) space,
  computed by repeatedly stripping closed points.
* ``cbrank`` : Cantor-Bendixson rank of a constructible space, computed by
  repeatedly stripping isolated points.  On a full ordinal space the result
  is cross-checked against the least-exponent formula, and the pointwise
  recursion through divide_by_omega is exposed as ``cb_rank_by_slicing``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Mapping, Optional, Union

from .errors import DualRouteMismatch, NotConstructible, NotSupported, RankUndefined, Unrepresentable
from .ordinal import OMEGA, ONE, ZERO, Kind, Ordinal, OrdinalLike, Ordering, add, classify, compare, divide_by_omega
from .ordset import OrdinalSet, rank
from .space import CantorSpace, FiniteSpace, OrdinalSpace, as_space, subspace


@dataclass(frozen=True)
class DimensionAssignment:
    space: object
    levels: tuple[tuple[Ordinal, object], ...]
    kind: str = "custom"

    @classmethod
    def from_levels(cls, space, levels: Mapping[OrdinalLike, object], kind: str = "custom") -> DimensionAssignment:
        sp = as_space(space)
        items = sorted(((Ordinal.of(a), sp.check_subset(s)) for a, s in levels.items()), key=lambda t: t[0])
        items = [(a, s) for a, s in items if s]
        union = sp.empty()
        for _, s in items:
            if s & union:
                raise ValueError("level sets overlap")
            union = union | s
        if union != sp.full():
            raise ValueError("level sets do not cover the space")
        return cls(sp, tuple(items), kind)

    @classmethod
    def from_values(cls, space: FiniteSpace, values: Mapping, kind: str = "custom") -> DimensionAssignment:
        """Build from an explicit point -> ordinal map on a finite space."""
        sp = as_space(space)
        buckets: dict[Ordinal, set] = {}
        for x, v in values.items():
            x = sp.point(x) if isinstance(x, str) else x
            buckets.setdefault(Ordinal.of(v), set()).add(x)
        return cls.from_levels(sp, {a: frozenset(s) for a, s in buckets.items()}, kind)

    @property
    def attained(self) -> tuple[Ordinal, ...]:
        return tuple(a for a, _ in self.levels)

    @property
    def space_dim(self) -> Ordinal:
        """Least alpha with X_{<=alpha} = X (0 for the empty space)."""
        return self.levels[-1][0] if self.levels else ZERO

    def level(self, alpha: OrdinalLike):
        alpha = Ordinal.of(alpha)
        for a, s in self.levels:
            if a == alpha:
                return s
        return self.space.empty()

    def __call__(self, x) -> Ordinal:
        for a, s in self.levels:
            if x in s:
                return a
        raise KeyError(f"{x} is not a point of the space")

    def values(self) -> dict:
        """Point -> value map; finite spaces only."""
        return {x: a for a, s in self.levels for x in s}

    def sublevel(self, alpha: OrdinalLike):
        return sublevel(self, alpha)

    def above(self, alpha: OrdinalLike):
        """X_{>alpha}."""
        sp = self.space
        return sp.full() - sublevel(self, alpha)


def sublevel(assignment: DimensionAssignment, alpha: OrdinalLike):
    """X_{<=alpha} as a subset of the assignment's space."""
    alpha = Ordinal.of(alpha)
    out = assignment.space.empty()
    for a, s in assignment.levels:
        if a <= alpha:
            out = out | s
    return out


# --- axioms -------------------------------------------------------------------------


@dataclass
class AxiomReport:
    violations: list[tuple[str, str]] = field(default_factory=list)

    @property
    def passes(self) -> bool:
        return not self.violations

    def lines(self) -> list[str]:
        if self.passes:
            return ["PASS"]
        return [f"FAIL {axiom} at {witness}" for axiom, witness in self.violations]


def _fmt_point(sp, x) -> str:
    return sp.name(x) if isinstance(sp, FiniteSpace) else str(x)


def validate(assignment: DimensionAssignment) -> AxiomReport:
    """Check axioms (i)-(iii) and the spectral condition.

    The spectral condition is checked at attained values only: X_{<=alpha}
    is constant between consecutive attained values.
    """
    sp = assignment.space
    report = AxiomReport()
    for a in assignment.attained:
        if classify(a).kind is Kind.LIMIT:
            report.violations.append(("i", f"value {a}"))
    if isinstance(sp, FiniteSpace):
        dim = assignment.values()
        for x in sp.points:
            for y in sorted(sp.down[x]):
                if y == x:
                    continue
                if dim[y] > dim[x]:
                    report.violations.append(("ii", f"{_fmt_point(sp, x)}~>{_fmt_point(sp, y)}"))
                elif dim[y] == dim[x]:
                    report.violations.append(("iii", f"{_fmt_point(sp, x)}~>{_fmt_point(sp, y)}"))
    # ordinal spaces are Hausdorff: no proper specialisations, (ii) and (iii) hold vacuously
    for a in assignment.attained:
        if not sp.is_thomason(sublevel(assignment, a)):
            report.violations.append(("spectral", f"X<={a}"))
    return report


# --- Krull dimension ------------------------------------------------------------------


def krull(space) -> DimensionAssignment:
    """Transfinite Krull dimension of a finite space.

    Level 0 is the set of closed points; level alpha+1 is the set of closed
    points of X_{>alpha} in its subspace topology.
    """
    sp = as_space(space)
    if not isinstance(sp, FiniteSpace):
        raise NotSupported("Krull dimension is computed for finite (noetherian) spaces only")
    levels = []
    rest = sp.full()
    value = ZERO
    while rest:
        closed = frozenset(x for x in rest if sp.down[x] & rest == {x})
        levels.append((value, closed))
        rest = rest - closed
        value = add(value, ONE)
    return DimensionAssignment(sp, tuple(levels), "krull")


# --- Cantor-Bendixson rank --------------------------------------------------------------


def _cb_levels(sp) -> list:
    levels = []
    rest = sp.full()
    # every point of an ordinal space below w^(n+1) has rank <= n
    bound = rest.top.leading_exponent() + 2 if isinstance(rest, OrdinalSet) else len(rest) + 1
    value = ZERO
    while rest:
        if len(levels) > bound:
            raise RankUndefined("isolated-point stripping did not exhaust the space")
        iso = rest.isolated() if isinstance(rest, OrdinalSet) else frozenset(x for x in rest if sp.up[x] & rest == {x})
        if not iso:
            raise RankUndefined("a nonempty stage has no isolated points")
        levels.append((value, iso))
        rest = rest - iso
        value = add(value, ONE)
    return levels


def _shift_set(s: OrdinalSet, top: Ordinal) -> OrdinalSet:
    """{1 + z : z in s} inside [0, top]."""
    per_rank = [list(runs) for runs in s.runs]
    per_rank[0] = [(add(ONE, lo), add(ONE, end)) for lo, end in s.runs[0]]
    return OrdinalSet._build(top, per_rank + [[] for _ in range(OrdinalSet.n_ranks(top) - len(per_rank))])


def cb_levels_by_slicing(top: OrdinalLike) -> list[OrdinalSet]:
    """CB levels of [0, top] by recursion through re-coordinatised slices.

    Level 0 is the set of isolated points.  The rest of the space is
    re-indexed as a fresh interval [0, beta], its levels are computed
    recursively and carried back.
    """
    top = Ordinal.of(top)
    base = OrdinalSpace(top)
    level0 = base.isolated_points()
    rest = base.full() - level0
    if not rest:
        return [level0]
    rec = subspace(base, rest).recoordinate()
    out = [level0]
    for sub in cb_levels_by_slicing(rec.target.top):
        factors = _shift_set(sub, add(ONE, rec.target.top)) if rec.offset else sub
        out.append(OrdinalSet.multiples(top, rec.scale, factors))
    return out


def cbrank(space) -> DimensionAssignment:
    """Cantor-Bendixson rank by stripping isolated points.

    On a full ordinal space the levels are computed two more ways (slice
    recursion and the least-exponent formula); any disagreement raises
    DualRouteMismatch.
    """
    sp = as_space(space)
    if isinstance(sp, CantorSpace):
        raise RankUndefined("the Cantor space is perfect: no ordinal stage exhausts it")
    if not sp.is_constructible():
        raise NotConstructible("the space does not carry the constructible topology")
    levels = _cb_levels(sp)
    if isinstance(sp, OrdinalSpace) and sp.is_full:
        formula = [OrdinalSet.rank_level(sp.top, k) for k in range(OrdinalSet.n_ranks(sp.top))]
        try:
            sliced = cb_levels_by_slicing(sp.top)
        except Unrepresentable as exc:
            raise DualRouteMismatch(f"slice recursion left the interval form: {exc}") from None
        stripped = [level for _, level in levels]
        if stripped != formula:
            raise DualRouteMismatch("stripping and the least-exponent formula disagree")
        if sliced != formula:
            raise DualRouteMismatch("slice recursion and the least-exponent formula disagree")
    return DimensionAssignment(sp, tuple(levels), "cbrank")


def cb_rank_formula(delta: OrdinalLike) -> Ordinal:
    """Least CNF exponent of delta, with rank(0) = 0."""
    return Ordinal.of(rank(delta))


def _unshift(e: Ordinal) -> Ordinal:
    # -1 + e for e >= 1
    return Ordinal.of(int(e) - 1) if e.is_finite() else e


def cb_rank_by_slicing(delta: OrdinalLike, top: OrdinalLike) -> Ordinal:
    """CB rank of delta in [0, top] by recursion through re-coordinatised slices.

    The isolated points of [0, top] are zero and the successors.  What is left
    is {w*e : 1 <= e <= top // w}, which is order isomorphic to
    [0, -1 + top // w] by d -> -1 + d/w; recurse there and add one.
    """
    delta, top = Ordinal.of(delta), Ordinal.of(top)
    if delta > top:
        raise ValueError(f"{delta} is not in [0, {top}]")
    depth = 0
    while classify(delta).kind is Kind.LIMIT:
        delta = _unshift(divide_by_omega(delta))
        top = _unshift(divide_by_omega(top.truncate(1)))
        depth += 1
    return Ordinal.of(depth)


def space_cb_rank(space) -> Ordinal:
    return cbrank(space).space_dim


def is_cb_defined(space) -> bool:
    try:
        cbrank(space)
    except RankUndefined:
        return False
    return True


# --- families and compatibility -------------------------------------------------------

DIMENSION_KINDS: dict[str, Callable] = {"krull": krull, "cbrank": cbrank}


def dimension_function(kind: str) -> Callable:
    try:
        return DIMENSION_KINDS[kind]
    except KeyError:
        raise NotSupported(f"unknown dimension kind {kind!r}") from None


@dataclass
class CompatibilityReport:
    kind: str
    checked: list[Ordinal] = field(default_factory=list)
    failures: list[str] = field(default_factory=list)

    @property
    def passes(self) -> bool:
        return not self.failures

    def lines(self) -> list[str]:
        out = [f"slice X>{a}: ok" for a in self.checked if not any(f.startswith(f"X>{a}:") for f in self.failures)]
        out += [f"FAIL {f}" for f in self.failures]
        out.append("PASS" if self.passes else "FAIL")
        return out


@lru_cache(maxsize=4096)
def slice_dimension(assignment: DimensionAssignment, alpha: OrdinalLike, kind: str) -> Optional[DimensionAssignment]:
    """Recompute the dimension function on the subspace X_{>alpha}; None if empty."""
    rest = assignment.above(alpha)
    if not rest:
        return None
    view = subspace(assignment.space, rest)
    return dimension_function(kind)(view)


def check_compatibility(space, kind: str) -> CompatibilityReport:
    """dim_X(x) = alpha+1 iff dim_{X>alpha}(x) = 0, for every relevant alpha.

    alpha ranges over the attained values and the predecessors of attained
    successor values, which covers every alpha with X_{>alpha} nonempty
    when the attained values are contiguous.
    """
    fn = dimension_function(kind)
    assignment = fn(space)
    report = CompatibilityReport(kind)
    alphas = set(assignment.attained)
    for a in assignment.attained:
        c = classify(a)
        if c.kind is Kind.SUCCESSOR:
            alphas.add(c.predecessor)
    for alpha in sorted(alphas):
        report.checked.append(alpha)
        sliced = slice_dimension(assignment, alpha, kind)
        expected = assignment.level(add(alpha, ONE))
        got = sliced.level(ZERO) if sliced is not None else assignment.space.empty()
        if expected != got:
            report.failures.append(f"X>{alpha}: level {add(alpha, ONE)} differs from the slice's level 0")
    return report


def bound_check(assignment_or_dim: Union[DimensionAssignment, OrdinalLike]) -> bool:
    """True iff the space dimension is below w + w."""
    d = assignment_or_dim.space_dim if isinstance(assignment_or_dim, DimensionAssignment) else Ordinal.of(assignment_or_dim)
    return compare(d, add(OMEGA, OMEGA)) is Ordering.LESS
