"""Subsets of an ordinal space [0, top] in rank form.

Every ordinal has a rank: 0 for zero and for successors, otherwise the
least exponent of its Cantor normal form.  ``R_k`` is the class of ordinals
of rank k; consecutive members of ``R_k`` differ by omega^k, and a point of
rank k is a limit of points of every smaller rank and of no other.

A subset is stored as, for each rank k, a finite union of half-open runs
``[lo, end)`` read inside ``R_k``, with both endpoints snapped into ``R_k``.
After snapping and merging the description is canonical, so structural
equality is set equality.  The algebra is closed under the Boolean
operations, closure and the Cantor-Bendixson derivative, and contains every
finite union of ordinal intervals as well as the rank level sets.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence

from .ordinal import ONE, ZERO, Kind, Ordinal, OrdinalLike, add, classify, times_omega

Run = tuple[Ordinal, Ordinal]
Runs = tuple[Run, ...]


def rank(delta: OrdinalLike) -> int:
    delta = Ordinal.of(delta)
    return 0 if delta.is_zero() else delta.least_exponent()


def first_in_rank(a: OrdinalLike, k: int) -> Ordinal:
    """Least ordinal of rank k that is >= a."""
    a = Ordinal.of(a)
    if k == 0:
        return a if classify(a).kind is not Kind.LIMIT else add(a, ONE)
    if not a.is_zero() and a.least_exponent() == k:
        return a
    return add(a.truncate(k), Ordinal.omega_power(k))


def last_in_rank_below(end: Ordinal, k: int) -> Optional[Ordinal]:
    """Greatest ordinal of rank k strictly below ``end`` (itself of rank k).

    Returns None when the rank-k ordinals below ``end`` have no maximum
    within the block ``end`` closes, i.e. they accumulate at a limit.
    """
    exp, coeff = end.terms[-1]
    head = end.terms[:-1]
    if exp != k:
        raise ValueError(f"{end} is not of rank {k}")
    if coeff > 1:
        return Ordinal(head + ((k, coeff - 1),))
    below = Ordinal(head)
    if k == 0 and below.is_zero():
        return ZERO
    if k == 0 and classify(below).kind is Kind.SUCCESSOR:
        return below
    return None


# --- run lists ----------------------------------------------------------------


def _normalise(runs: Iterable[Run]) -> Runs:
    out: list[list[Ordinal]] = []
    for lo, end in sorted(r for r in runs if r[0] < r[1]):
        if out and lo <= out[-1][1]:
            if end > out[-1][1]:
                out[-1][1] = end
        else:
            out.append([lo, end])
    return tuple((lo, end) for lo, end in out)


def _intersect(a: Runs, b: Runs) -> Runs:
    out = []
    i = j = 0
    while i < len(a) and j < len(b):
        lo = max(a[i][0], b[j][0])
        end = min(a[i][1], b[j][1])
        if lo < end:
            out.append((lo, end))
        if a[i][1] < b[j][1]:
            i += 1
        else:
            j += 1
    return tuple(out)


def _subtract(a: Runs, b: Runs) -> Runs:
    out = []
    for lo, end in a:
        cur = lo
        for blo, bend in b:
            if bend <= cur or blo >= end:
                continue
            if blo > cur:
                out.append((cur, blo))
            cur = max(cur, bend)
            if cur >= end:
                break
        if cur < end:
            out.append((cur, end))
    return tuple(out)


def _runs_for_interval(a: Ordinal, b: Ordinal, k: int) -> Runs:
    """R_k intersected with the plain half-open ordinal interval [a, b)."""
    lo, end = first_in_rank(a, k), first_in_rank(b, k)
    return ((lo, end),) if lo < end else ()


def _contains(runs: Runs, delta: Ordinal) -> bool:
    # run lists are short; a linear scan beats bisect on tuples of Ordinals
    for lo, end in runs:
        if delta < lo:
            return False
        if delta < end:
            return True
    return False


@dataclass(frozen=True)
class OrdinalSet:
    top: Ordinal
    runs: tuple[Runs, ...]

    # --- constructors ------------------------------------------------------

    @staticmethod
    def n_ranks(top: Ordinal) -> int:
        return top.leading_exponent() + 1

    @classmethod
    def _build(cls, top: Ordinal, per_rank: Sequence[Iterable[Run]]) -> OrdinalSet:
        full = cls._universe_runs(top)
        runs = tuple(_intersect(_normalise(r), u) for r, u in zip(per_rank, full))
        return cls(top, runs)

    @staticmethod
    def _universe_runs(top: Ordinal) -> tuple[Runs, ...]:
        stop = add(top, ONE)
        return tuple(_runs_for_interval(ZERO, stop, k) for k in range(OrdinalSet.n_ranks(top)))

    @classmethod
    def empty(cls, top: OrdinalLike) -> OrdinalSet:
        top = Ordinal.of(top)
        return cls(top, tuple(() for _ in range(cls.n_ranks(top))))

    @classmethod
    def full(cls, top: OrdinalLike) -> OrdinalSet:
        top = Ordinal.of(top)
        return cls(top, cls._universe_runs(top))

    @classmethod
    def half_open(cls, top: OrdinalLike, lo: OrdinalLike, end: OrdinalLike) -> OrdinalSet:
        """The plain ordinal interval [lo, end) clipped to [0, top]."""
        top, lo, end = Ordinal.of(top), Ordinal.of(lo), Ordinal.of(end)
        return cls._build(top, [_runs_for_interval(lo, end, k) for k in range(cls.n_ranks(top))])

    @classmethod
    def interval(cls, top: OrdinalLike, lo: OrdinalLike, hi: OrdinalLike) -> OrdinalSet:
        """The closed interval [lo, hi]."""
        return cls.half_open(top, lo, add(hi, ONE))

    @classmethod
    def points(cls, top: OrdinalLike, deltas: Iterable[OrdinalLike]) -> OrdinalSet:
        top = Ordinal.of(top)
        out = cls.empty(top)
        for d in deltas:
            out = out | cls.interval(top, d, d)
        return out

    @classmethod
    def rank_run(cls, top: OrdinalLike, k: int, lo: OrdinalLike, end: OrdinalLike) -> OrdinalSet:
        """Points of rank k in the plain interval [lo, end)."""
        top = Ordinal.of(top)
        per_rank: list[Runs] = [() for _ in range(cls.n_ranks(top))]
        if k < len(per_rank):
            per_rank[k] = _runs_for_interval(Ordinal.of(lo), Ordinal.of(end), k)
        return cls._build(top, per_rank)

    @classmethod
    def rank_level(cls, top: OrdinalLike, k: int) -> OrdinalSet:
        """All points of [0, top] of rank exactly k."""
        top = Ordinal.of(top)
        return cls.rank_run(top, k, ZERO, add(top, ONE))

    @classmethod
    def multiples(cls, top: OrdinalLike, m: int, factors: OrdinalSet) -> OrdinalSet:
        """{omega^m * e : e in factors}, clipped to [0, top]."""
        top = Ordinal.of(top)
        per_rank: list[list[Run]] = [[] for _ in range(cls.n_ranks(top))]

        def scale(x: Ordinal) -> Ordinal:
            for _ in range(m):
                x = times_omega(x)
            return x

        for j, runs in enumerate(factors.runs):
            for lo, end in runs:
                if j == 0 and lo.is_zero():
                    per_rank[0].append((ZERO, ONE))
                    lo = ONE
                    if lo >= end:
                        continue
                if m + j < len(per_rank):
                    per_rank[m + j].append((scale(lo), scale(end)))
        return cls._build(top, per_rank)

    # --- set algebra ---------------------------------------------------------

    def _check(self, other: OrdinalSet) -> None:
        if not isinstance(other, OrdinalSet):
            raise TypeError(f"expected an OrdinalSet, got {type(other).__name__}")
        if other.top != self.top:
            raise ValueError(f"subsets of different spaces [0,{self.top}] and [0,{other.top}]")

    def __or__(self, other: OrdinalSet) -> OrdinalSet:
        self._check(other)
        return OrdinalSet(self.top, tuple(_normalise(a + b) for a, b in zip(self.runs, other.runs)))

    def __and__(self, other: OrdinalSet) -> OrdinalSet:
        self._check(other)
        return OrdinalSet(self.top, tuple(_intersect(a, b) for a, b in zip(self.runs, other.runs)))

    def __sub__(self, other: OrdinalSet) -> OrdinalSet:
        self._check(other)
        return OrdinalSet(self.top, tuple(_subtract(a, b) for a, b in zip(self.runs, other.runs)))

    def complement(self) -> OrdinalSet:
        return OrdinalSet.full(self.top) - self

    def __le__(self, other: OrdinalSet) -> bool:
        return (self - other).is_empty()

    def issubset(self, other: OrdinalSet) -> bool:
        return self <= other

    def isdisjoint(self, other: OrdinalSet) -> bool:
        return (self & other).is_empty()

    def is_empty(self) -> bool:
        return not any(self.runs)

    def __bool__(self) -> bool:
        return not self.is_empty()

    def __contains__(self, delta) -> bool:
        delta = Ordinal.of(delta)
        if delta > self.top:
            return False
        k = rank(delta)
        return k < len(self.runs) and _contains(self.runs[k], delta)

    # --- topology of [0, top] ------------------------------------------------

    def limit_points(self) -> OrdinalSet:
        """Points of [0, top] that are limits of points of this set from below."""
        per_rank: list[list[Run]] = [[] for _ in self.runs]
        for j, runs in enumerate(self.runs):
            for lo, end in runs:
                for k in range(j + 1, len(self.runs)):
                    per_rank[k].extend(_runs_for_interval(add(lo, ONE), end, k))
        return OrdinalSet._build(self.top, per_rank)

    def closure(self) -> OrdinalSet:
        return self | self.limit_points()

    def is_closed_in(self, carrier: OrdinalSet) -> bool:
        return (self.limit_points() & carrier) <= self

    def derived(self) -> OrdinalSet:
        """Non-isolated points of this set in its subspace topology."""
        return self & self.limit_points()

    def isolated(self) -> OrdinalSet:
        return self - self.limit_points()

    # --- extremes and enumeration -------------------------------------------

    def min(self) -> Optional[Ordinal]:
        firsts = [runs[0][0] for runs in self.runs if runs]
        return min(firsts) if firsts else None

    def max(self) -> Optional[Ordinal]:
        """Largest element, or None if empty or the supremum is not attained."""
        best: Optional[Ordinal] = None
        sup: Optional[Ordinal] = None
        for k, runs in enumerate(self.runs):
            if not runs:
                continue
            last = last_in_rank_below(runs[-1][1], k)
            if last is not None and last >= runs[-1][0]:
                best = last if best is None or last > best else best
            else:
                # rank-k points accumulate at the start of the block ``end`` closes
                s = Ordinal(runs[-1][1].terms[:-1])
                sup = s if sup is None or s > sup else sup
        if best is None or (sup is not None and sup > best):
            return None
        return best

    def at_least(self, m: Ordinal) -> OrdinalSet:
        return self & OrdinalSet.half_open(self.top, m, add(self.top, ONE))

    def components(self, cap: int = 64) -> Optional[list[Run]]:
        """Maximal convex pieces as plain half-open intervals [m, t).

        Returns None if there are more than ``cap`` of them (for example when
        the set has infinitely many convex pieces).
        """
        out: list[Run] = []
        rest = self
        gaps = self.complement()
        stop = add(self.top, ONE)
        while rest:
            if len(out) == cap:
                return None
            m = rest.min()
            t = gaps.at_least(m).min()
            t = stop if t is None else t
            out.append((m, t))
            rest = rest.at_least(t) if t <= self.top else OrdinalSet.empty(self.top)
        return out

    def iter_runs(self) -> Iterator[tuple[int, Ordinal, Ordinal]]:
        for k, runs in enumerate(self.runs):
            for lo, end in runs:
                yield k, lo, end

    def is_finite_set(self) -> bool:
        # a run is finite iff both ends sit in the same omega^(k+1) block
        return all(lo.truncate(k + 1) == end.truncate(k + 1) for k, lo, end in self.iter_runs())

    def elements(self, limit: int = 10_000) -> list[Ordinal]:
        """Enumerate a finite set in increasing order."""
        if not self.is_finite_set():
            raise ValueError("set is infinite")
        out = []
        for k, lo, end in self.iter_runs():
            step = Ordinal.omega_power(k)
            x = lo
            while x < end:
                out.append(x)
                if len(out) > limit:
                    raise ValueError("set is too large to enumerate")
                x = add(x, step)
        return sorted(out)

    def sample(self, rng: random.Random, count: int) -> list[Ordinal]:
        """Random members, biased towards small offsets inside each run."""
        pieces = list(self.iter_runs())
        if not pieces:
            return []
        out = []
        for _ in range(count):
            k, lo, end = rng.choice(pieces)
            out.append(_random_member(rng, k, lo, end))
        return out


def random_ordinal_below(rng: random.Random, bound: Ordinal, max_coeff: int = 4) -> Ordinal:
    """A random ordinal < bound (bound > 0), spread over the CNF shape."""
    lead = bound.leading_exponent()
    for _ in range(32):
        terms = []
        for e in range(lead, -1, -1):
            if rng.random() < 0.55:
                terms.append((e, rng.randint(1, max_coeff)))
        x = Ordinal(tuple(terms))
        if x < bound:
            return x
    return ZERO


def _random_member(rng: random.Random, k: int, lo: Ordinal, end: Ordinal) -> Ordinal:
    step = Ordinal.omega_power(k)
    for _ in range(8):
        choice = rng.random()
        if choice < 0.4:
            x = lo
            for _ in range(rng.randint(0, 3)):
                x = add(x, step)
        else:
            x = first_in_rank(add(lo, random_ordinal_below(rng, end)), k)
        if lo <= x < end and rank(x) == k:
            return x
    return lo
