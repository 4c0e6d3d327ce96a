"""Local-to-global bookkeeping on supports.

An object is modelled only by its support.  The idempotent operators act on
supports as

    gamma(S, V)       = S & V          (the piece supported on V)
    ell(S, V)         = S - V          (the piece supported off V)
    gamma_point(S, x) = S & {x}

for Thomason V.  These identities are the combinatorial shadow of the
triangulated statements and are the only semantics this module adopts.

``filtration`` replays the transfinite induction that builds an object from
its pieces: one stage per attained dimension value, whose delta is the part
of the support at that level.  Successor deltas are certified against the
dimension function recomputed on the slice X_{>alpha}.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

from .dimfn import DimensionAssignment, dimension_function, slice_dimension, sublevel
from .errors import CompatibilityViolation, NotThomason, NotVisible, SizeGuard
from .literal import format_subset
from .ordinal import ONE, ZERO, Kind, Ordinal, add, classify, format_ordinal
from .space import FiniteSpace, as_space, is_witness, visibility_witness

MAX_IDEAL_POINTS = 20


@dataclass(frozen=True)
class SupportDatum:
    space: object
    supp: object

    def __post_init__(self):
        object.__setattr__(self, "supp", as_space(self.space).check_subset(self.supp))

    @classmethod
    def full(cls, space) -> SupportDatum:
        return cls(space, as_space(space).full())

    def _thomason(self, v):
        sp = as_space(self.space)
        v = sp.check_subset(v)
        if not sp.is_thomason(v):
            raise NotThomason("the operator needs a Thomason subset")
        return v

    def gamma(self, v) -> SupportDatum:
        return SupportDatum(self.space, self.supp & self._thomason(v))

    def ell(self, v) -> SupportDatum:
        return SupportDatum(self.space, self.supp - self._thomason(v))

    def gamma_point(self, x, alternative: Optional[tuple] = None) -> SupportDatum:
        """supp & {x}, computed through a visibility witness.

        The result via the standard witness is checked against the direct
        intersection and against a second witness (the given one, or the
        space's alternative witness).
        """
        sp = as_space(self.space)
        v, w = visibility_witness(sp, x)
        result = self.ell(w).gamma(v)
        direct = self.supp & sp.singleton(x)
        if result.supp != direct:
            raise NotVisible(f"witness route disagrees with the direct intersection at {x}")
        v2, w2 = alternative if alternative is not None else sp.alternative_witness(x)
        if is_witness(sp, x, v2, w2) and self.ell(w2).gamma(v2).supp != direct:
            raise NotVisible(f"two witnesses for {x} give different results")
        return result


def gamma(datum: SupportDatum, v) -> SupportDatum:
    return datum.gamma(v)


def ell(datum: SupportDatum, v) -> SupportDatum:
    return datum.ell(v)


def gamma_point(datum: SupportDatum, x) -> SupportDatum:
    return datum.gamma_point(x)


# --- base stage ---------------------------------------------------------------------


@dataclass
class ZeroStageReport:
    offenders: list = field(default_factory=list)

    @property
    def passes(self) -> bool:
        return not self.offenders


def zero_stage_check(space, assignment: DimensionAssignment) -> ZeroStageReport:
    """Every point of dimension 0 must have a Thomason singleton."""
    sp = as_space(space)
    report = ZeroStageReport()
    level0 = assignment.level(ZERO)
    if isinstance(sp, FiniteSpace):
        report.offenders = sorted(x for x in level0 if not sp.is_thomason(sp.singleton(x)))
    else:
        # every point of an ordinal space is closed, hence {x} is Thomason iff x is isolated
        bad = level0 - sp.isolated_points()
        if bad:
            report.offenders = [bad.min()]
    return report


# --- filtration ---------------------------------------------------------------------


@dataclass(frozen=True)
class Stage:
    alpha: Ordinal
    kind: str
    delta: object
    cumulative: object


@dataclass(frozen=True)
class FiltrationTrace:
    space: object
    supp: object
    dim_kind: str
    stages: tuple[Stage, ...]
    terminal: bool = True

    def lines(self) -> list[str]:
        sp = as_space(self.space)
        out = [
            f"stage {format_ordinal(s.alpha)} {s.kind} delta={format_subset(sp, s.delta)} "
            f"cum={format_subset(sp, s.cumulative)}"
            for s in self.stages
        ]
        out.append(f"total={format_subset(sp, self.stages[-1].cumulative if self.stages else sp.empty())}")
        return out

    def deltas(self) -> list:
        return [s.delta for s in self.stages]


def filtration(
    datum: SupportDatum,
    kind: Union[str, DimensionAssignment],
    certify: bool = True,
    compact: bool = False,
) -> FiltrationTrace:
    """Stage-by-stage decomposition of ``datum.supp`` along a dimension function.

    ``kind`` is "krull", "cbrank" or a ready-made assignment; certification of
    successor deltas needs a named kind, since it recomputes the function on
    slices.  Stages run over the attained values up to the least one whose
    sublevel covers the support; a limit ordinal skipped between attained
    values gets a stage with empty delta unless ``compact`` is set.
    """
    sp = as_space(datum.space)
    if isinstance(kind, DimensionAssignment):
        assignment, kind_name = kind, kind.kind
        certify = certify and kind_name in ("krull", "cbrank")
    else:
        assignment, kind_name = dimension_function(kind)(datum.space), kind
    zero = zero_stage_check(sp, assignment)
    if not zero.passes:
        raise CompatibilityViolation(f"dimension-0 point {zero.offenders[0]} has a non-Thomason singleton")
    supp = datum.supp
    stages: list[Stage] = []
    cumulative = sp.empty()
    if not supp:
        return FiltrationTrace(sp, supp, kind_name, (Stage(ZERO, "base", supp, supp),))
    previous: Optional[Ordinal] = None
    for alpha in assignment.attained:
        c = classify(alpha)
        if c.kind is Kind.SUCCESSOR and c.predecessor != previous and classify(c.predecessor).kind is Kind.LIMIT:
            if not compact:
                stages.append(Stage(c.predecessor, "limit", sp.empty(), cumulative))
        delta = supp & assignment.level(alpha)
        if c.kind is Kind.ZERO:
            stage_kind = "base"
        else:
            stage_kind = "successor"
            if certify:
                _certify(assignment, c.predecessor, supp, delta, kind_name)
        cumulative = cumulative | delta
        stages.append(Stage(alpha, stage_kind, delta, cumulative))
        previous = alpha
        if supp <= sublevel(assignment, alpha):
            break
    if not stages or stages[0].kind != "base":
        # no point of dimension 0: the base stage is present but empty
        stages.insert(0, Stage(ZERO, "base", sp.empty(), sp.empty()))
    return FiltrationTrace(sp, supp, kind_name, tuple(stages))


def _certify(assignment: DimensionAssignment, alpha: Ordinal, supp, delta, kind: str) -> None:
    # delta must be exactly the part of supp that is of dimension 0 on X_{>alpha}
    sliced = slice_dimension(assignment, alpha, kind)
    level0 = sliced.level(ZERO) if sliced is not None else as_space(assignment.space).empty()
    if delta != supp & level0:
        raise CompatibilityViolation(
            f"points of dimension {add(alpha, ONE)} are not of dimension 0 on the slice X>{alpha}"
        )


# --- Thomason ideals ------------------------------------------------------------------


def thomason_ideals(space: FiniteSpace) -> list[frozenset]:
    """All Thomason (specialisation closed) subsets of a finite space.

    Sorted by size, then by the sorted point names.  Down-sets are grown from
    the empty set by adding one point whose closure is already inside, so
    every down-set is produced exactly once per insertion order and then
    deduplicated.
    """
    sp = as_space(space)
    if not isinstance(sp, FiniteSpace):
        raise SizeGuard("Thomason subsets are enumerated for finite spaces only")
    if len(sp) > MAX_IDEAL_POINTS:
        raise SizeGuard(f"refusing to enumerate down-sets of a {len(sp)}-point space (limit {MAX_IDEAL_POINTS})")
    seen = {frozenset()}
    frontier = [frozenset()]
    while frontier:
        nxt = []
        for s in frontier:
            for x in sp.points:
                if x not in s and sp.down[x] - {x} <= s:
                    t = s | {x}
                    if t not in seen:
                        seen.add(t)
                        nxt.append(t)
        frontier = nxt
    return sorted(seen, key=lambda s: (len(s), sorted(sp.name(x) for x in s)))


def is_thomason_brute(space: FiniteSpace, s) -> bool:
    """Specialisation-closure test straight from the definition, for cross-checks."""
    sp = as_space(space)
    return all(y in s for x in s for y in sp.points if sp.specialises(x, y))


def exhaustive_witnesses(space: FiniteSpace, x, limit: int = 12):
    """All Thomason pairs (V, W) with V - (V & W) = {x}; small spaces only."""
    sp = as_space(space)
    if len(sp) > limit:
        raise SizeGuard(f"witness enumeration limited to {limit} points")
    ideals = thomason_ideals(sp)
    single = sp.singleton(x)
    return [(v, w) for v in ideals if x in v for w in ideals if v - w == single]

