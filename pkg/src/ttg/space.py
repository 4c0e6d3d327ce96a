"""Spectral spaces in three concrete representations.

Conventions: ``x ~> y`` (x specialises to y) means y lies in the closure
V(x) of x.  Closed sets are closed under specialisation and open sets under
generisation.

``FiniteSpace``
    A finite T0 space given by its specialisation order.  Every such space is
    spectral and noetherian, so Thomason subsets are the specialisation
    closed ones and every open set is quasi-compact.  Subsets are frozensets
    of point ids.

``OrdinalSpace``
    A closed subset (the carrier, by default everything) of the ordinal
    interval [0, top] with the order topology.  These are compact Hausdorff,
    carry the constructible topology, and their Thomason subsets are exactly
    the open ones.  Subsets are ``OrdinalSet`` values.

``CantorSpace``
    A symbolic marker for the atomless Stone space; only the constructible
    flag is available.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, Optional, Sequence, Union

from .errors import (
    CyclicSpecialisation,
    InvalidSubset,
    NotProconstructible,
    NotVisible,
    Unrepresentable,
    Unsupported,
)
from .ordinal import ONE, Kind, Ordinal, OrdinalLike, add, classify, divide_by_omega, predecessor, times_omega
from .ordset import OrdinalSet, rank

PointSet = frozenset


class FiniteSpace:
    """Finite T0 space on integer point ids with display names."""

    kind = "finite"

    def __init__(self, names: Union[Sequence[str], Mapping[int, str]], relations: Iterable[tuple[int, int]] = ()):
        if isinstance(names, Mapping):
            self.names = dict(sorted(names.items()))
        else:
            self.names = dict(enumerate(names))
        if len(set(self.names.values())) != len(self.names):
            raise ValueError("point names must be distinct")
        self.points = tuple(self.names)
        pts = set(self.points)
        succ: dict[int, set[int]] = {x: {x} for x in self.points}
        for x, y in relations:
            if x not in pts or y not in pts:
                raise InvalidSubset(f"relation ({x}, {y}) mentions an unknown point")
            succ[x].add(y)
        # reflexive-transitive closure by depth-first search from every point
        down = {}
        for x in self.points:
            seen = {x}
            stack = [x]
            while stack:
                for y in succ[stack.pop()]:
                    if y not in seen:
                        seen.add(y)
                        stack.append(y)
            down[x] = frozenset(seen)
        for x in self.points:
            for y in down[x]:
                if y != x and x in down[y]:
                    raise CyclicSpecialisation(
                        f"{self.names[x]} and {self.names[y]} specialise to each other (not T0)"
                    )
        self._set_order(down)

    def _set_order(self, down: Mapping[int, frozenset]) -> None:
        self.down = dict(down)
        up: dict[int, set[int]] = {x: set() for x in self.points}
        for x, below in self.down.items():
            for y in below:
                up[y].add(x)
        self.up = {x: frozenset(v) for x, v in up.items()}
        self._ids = {name: x for x, name in self.names.items()}

    @classmethod
    def _from_order(cls, names: Mapping[int, str], down: Mapping[int, frozenset]) -> FiniteSpace:
        space = cls.__new__(cls)
        space.names = dict(sorted(names.items()))
        space.points = tuple(space.names)
        space._set_order(down)
        return space

    @classmethod
    def discrete(cls, n: int, prefix: str = "p") -> FiniteSpace:
        return cls([f"{prefix}{i}" for i in range(n)])

    @classmethod
    def chain(cls, n: int) -> FiniteSpace:
        """x0 ~> x1 ~> ... ~> x(n-1); the last point is closed."""
        return cls([f"x{i}" for i in range(n)], [(i, i + 1) for i in range(n - 1)])

    def __eq__(self, other):
        if not isinstance(other, FiniteSpace):
            return NotImplemented
        return self.names == other.names and self.down == other.down

    def __hash__(self):
        return hash((tuple(self.names.items()), tuple(sorted((x, tuple(sorted(v))) for x, v in self.down.items()))))

    def __repr__(self):
        rel = [(self.names[x], self.names[y]) for x in self.points for y in sorted(self.down[x]) if y != x]
        return f"FiniteSpace({list(self.names.values())!r}, spec={rel!r})"

    def __len__(self):
        return len(self.points)

    # --- points and subsets -----------------------------------------------

    def point(self, name: str) -> int:
        try:
            return self._ids[name]
        except KeyError:
            raise InvalidSubset(f"no point named {name!r}") from None

    def name(self, x: int) -> str:
        return self.names[x]

    def full(self) -> frozenset:
        return frozenset(self.points)

    def empty(self) -> frozenset:
        return frozenset()

    def subset(self, items: Iterable) -> frozenset:
        out = set()
        for item in items:
            x = self.point(item) if isinstance(item, str) else item
            if x not in self.names:
                raise InvalidSubset(f"point {x!r} is not in the space")
            out.add(x)
        return frozenset(out)

    def check_subset(self, s) -> frozenset:
        if not isinstance(s, (set, frozenset)):
            raise InvalidSubset(f"finite spaces take point sets, not {type(s).__name__}")
        if not s <= self.full():
            raise InvalidSubset(f"points {sorted(s - self.full())} are not in the space")
        return frozenset(s)

    def check_point(self, x) -> int:
        if x not in self.names:
            raise InvalidSubset(f"point {x!r} is not in the space")
        return x

    def complement(self, s) -> frozenset:
        return self.full() - self.check_subset(s)

    def specialises(self, x: int, y: int) -> bool:
        return y in self.down[x]

    # --- topology -----------------------------------------------------------

    def closure(self, s) -> frozenset:
        s = self.check_subset(s)
        return frozenset().union(*(self.down[x] for x in s)) if s else frozenset()

    def is_closed(self, s) -> bool:
        s = self.check_subset(s)
        return all(self.down[x] <= s for x in s)

    def is_open(self, s) -> bool:
        s = self.check_subset(s)
        return all(self.up[x] <= s for x in s)

    def is_quasi_compact_open(self, s) -> bool:
        # every subset of a finite space is quasi-compact
        return self.is_open(s)

    def is_thomason(self, s) -> bool:
        # noetherian: Thomason means specialisation closed
        return self.is_closed(s)

    def is_proconstructible(self, s) -> bool:
        self.check_subset(s)
        return True

    def is_constructible(self) -> bool:
        return all(len(self.down[x]) == 1 for x in self.points)

    def z_set(self, x: int) -> frozenset:
        x = self.check_point(x)
        return frozenset(y for y in self.points if x not in self.down[y])

    def closed_points(self) -> frozenset:
        return frozenset(x for x in self.points if len(self.down[x]) == 1)

    def isolated_points(self) -> frozenset:
        """Points x with {x} open, i.e. without a proper generisation."""
        return frozenset(x for x in self.points if len(self.up[x]) == 1)

    def visibility_witness(self, x: int) -> tuple[frozenset, frozenset]:
        x = self.check_point(x)
        return self.down[x], self.z_set(x)

    def alternative_witness(self, x: int) -> tuple[frozenset, frozenset]:
        x = self.check_point(x)
        return self.down[x], self.down[x] - {x}

    def restrict(self, s) -> FiniteSpace:
        s = self.check_subset(s)
        return FiniteSpace._from_order({x: self.names[x] for x in s}, {x: self.down[x] & s for x in s})

    def singleton(self, x) -> frozenset:
        return frozenset({self.check_point(x)})


class OrdinalSpace:
    """The ordinal interval [0, top], or a closed subset of it, with the order topology."""

    kind = "ordinal"

    def __init__(self, top: OrdinalLike, carrier: Optional[OrdinalSet] = None):
        self.top = Ordinal.of(top)
        if carrier is None:
            carrier = OrdinalSet.full(self.top)
        elif carrier.top != self.top:
            raise InvalidSubset("carrier lives in a different ordinal space")
        self.carrier = carrier

    @property
    def is_full(self) -> bool:
        return self.carrier == OrdinalSet.full(self.top)

    def __eq__(self, other):
        if not isinstance(other, OrdinalSpace):
            return NotImplemented
        return self.top == other.top and self.carrier == other.carrier

    def __hash__(self):
        return hash((self.top, self.carrier))

    def __repr__(self):
        if self.is_full:
            return f"OrdinalSpace({str(self.top)!r})"
        return f"OrdinalSpace({str(self.top)!r}, carrier={self.carrier!r})"

    def full(self) -> OrdinalSet:
        return self.carrier

    def empty(self) -> OrdinalSet:
        return OrdinalSet.empty(self.top)

    def check_subset(self, s) -> OrdinalSet:
        if not isinstance(s, OrdinalSet):
            raise InvalidSubset(f"ordinal spaces take OrdinalSet subsets, not {type(s).__name__}")
        if s.top != self.top or not s <= self.carrier:
            raise InvalidSubset("subset is not contained in the space")
        return s

    def check_point(self, x) -> Ordinal:
        x = Ordinal.of(x)
        if x not in self.carrier:
            raise InvalidSubset(f"{x} is not a point of the space")
        return x

    def singleton(self, x) -> OrdinalSet:
        x = self.check_point(x)
        return OrdinalSet.interval(self.top, x, x)

    def subset(self, items: Iterable[OrdinalLike]) -> OrdinalSet:
        return self.check_subset(OrdinalSet.points(self.top, items))

    def complement(self, s) -> OrdinalSet:
        return self.carrier - self.check_subset(s)

    def specialises(self, x, y) -> bool:
        # Hausdorff: specialisation is equality
        return Ordinal.of(x) == Ordinal.of(y)

    def closure(self, s) -> OrdinalSet:
        return self.check_subset(s).closure() & self.carrier

    def is_closed(self, s) -> bool:
        return self.check_subset(s).is_closed_in(self.carrier)

    def is_open(self, s) -> bool:
        return (self.carrier - self.check_subset(s)).is_closed_in(self.carrier)

    def is_quasi_compact_open(self, s) -> bool:
        # compact Hausdorff: quasi-compact opens are the clopens
        return self.is_closed(s) and self.is_open(s)

    def is_thomason(self, s) -> bool:
        # constructible topology: Thomason means open
        return self.is_open(s)

    def is_proconstructible(self, s) -> bool:
        return self.is_closed(s)

    def is_constructible(self) -> bool:
        return True

    def z_set(self, x) -> OrdinalSet:
        return self.carrier - self.singleton(x)

    def closed_points(self) -> OrdinalSet:
        return self.carrier

    def isolated_points(self) -> OrdinalSet:
        return self.carrier.isolated()

    def visibility_witness(self, x) -> tuple[OrdinalSet, OrdinalSet]:
        return self.carrier, self.z_set(x)

    def alternative_witness(self, x) -> tuple[OrdinalSet, OrdinalSet]:
        """A clopen neighbourhood U of x with U minus {x}."""
        x = self.check_point(x)
        if x.is_zero():
            lo = x
        else:
            # x = head + w^k; the interval (head, x] is clopen in [0, top]
            lo = add(Ordinal(x.terms[:-1] + (((x.terms[-1][0], x.terms[-1][1] - 1),) if x.terms[-1][1] > 1 else ())), ONE)
        nbhd = OrdinalSet.interval(self.top, lo, x) & self.carrier
        return nbhd, nbhd - self.singleton(x)

    def restrict(self, s) -> OrdinalSpace:
        return OrdinalSpace(self.top, self.check_subset(s))


class CantorSpace:
    """Symbolic Cantor space: constructible, without Cantor-Bendixson rank."""

    kind = "cantor"
    is_cb_defined = False

    def __eq__(self, other):
        return isinstance(other, CantorSpace)

    def __hash__(self):
        return hash("cantor")

    def __repr__(self):
        return "CantorSpace()"

    def is_constructible(self) -> bool:
        return True

    def __getattr__(self, name):
        if name.startswith("_"):
            raise AttributeError(name)

        def unsupported(*args, **kwargs):
            raise Unsupported(f"{name} is not available on the symbolic Cantor space")

        return unsupported


Space = Union[FiniteSpace, OrdinalSpace, CantorSpace]


# --- subspaces ------------------------------------------------------------------


def _unshift(e: Ordinal) -> Ordinal:
    """-1 + e for e >= 1."""
    return predecessor(e) if e.is_finite() else e


def _shift(z: Ordinal) -> Ordinal:
    """1 + z."""
    return add(ONE, z)


def _divide_power(x: Ordinal, m: int) -> Ordinal:
    for _ in range(m):
        x = divide_by_omega(x)
    return x


def _times_power(x: Ordinal, m: int) -> Ordinal:
    for _ in range(m):
        x = times_omega(x)
    return x


@dataclass(frozen=True)
class Recoordination:
    """Order isomorphism of a view's carrier onto a fresh ordinal space."""

    target: OrdinalSpace
    scale: int
    offset: int
    forward: Callable[[Ordinal], Ordinal] = field(compare=False)
    backward: Callable[[Ordinal], Ordinal] = field(compare=False)


@dataclass(frozen=True)
class SpaceView:
    """A proconstructible subset of a space, seen as a spectral space itself.

    ``space`` is the subspace in the base space's own coordinates, so the
    whole predicate suite applies to it and point ids are shared with the
    base.
    """

    base: Space
    subset: object
    space: Space

    def recoordinate(self) -> Recoordination:
        """Re-index an ordinal view as [0, beta] when its carrier is
        ``{w^m * e : e0 <= e <= e1}`` with e0 in {0, 1}; CB slices of an
        ordinal space have this shape.
        """
        space = self.space
        if not isinstance(space, OrdinalSpace):
            raise Unsupported("only ordinal views are re-coordinatised")
        carrier = space.carrier
        hi = carrier.max()
        lo = carrier.min()
        if hi is None or lo is None:
            raise Unrepresentable("empty view has no ordinal coordinates")
        for m in range(hi.leading_exponent() + 1):
            if hi.least_exponent() < m and not hi.is_zero():
                break
            e1 = _divide_power(hi, m)
            for e0 in (0, 1):
                if e0 > e1:
                    continue
                factors = OrdinalSet.interval(e1, e0, e1)
                if OrdinalSet.multiples(space.top, m, factors) != carrier:
                    continue
                if e0 == 0:
                    target = OrdinalSpace(e1)
                    fwd = lambda d, m=m: _divide_power(d, m)
                    back = lambda z, m=m: _times_power(z, m)
                else:
                    target = OrdinalSpace(_unshift(e1))
                    fwd = lambda d, m=m: _unshift(_divide_power(d, m))
                    back = lambda z, m=m: _times_power(_shift(z), m)
                return Recoordination(target, m, e0, fwd, back)
        raise Unrepresentable("view carrier is not a scaled interval of multiples")


def as_space(space) -> Space:
    return space.space if isinstance(space, SpaceView) else space


def subspace(space, s) -> SpaceView:
    base = as_space(space)
    if isinstance(base, CantorSpace):
        raise Unsupported("subspaces of the symbolic Cantor space are not modelled")
    if not base.is_proconstructible(s):
        raise NotProconstructible("subset is not closed in the constructible topology")
    return SpaceView(base, s, base.restrict(s))


# --- predicate suite -------------------------------------------------------------


def closure(space, s):
    return as_space(space).closure(s)


def z_set(space, x):
    return as_space(space).z_set(x)


def is_quasi_compact_open(space, s) -> bool:
    return as_space(space).is_quasi_compact_open(s)


def is_thomason(space, s) -> bool:
    return as_space(space).is_thomason(s)


def is_proconstructible(space, s) -> bool:
    return as_space(space).is_proconstructible(s)


def constructible_check(space) -> bool:
    return as_space(space).is_constructible()


def singleton(space, x):
    return as_space(space).singleton(x)


def visibility_witness(space, x):
    """Thomason V, W with V minus (V & W) = {x}.

    Finite spaces use (V(x), Z(x)); constructible ones use (X, X minus {x}).
    The postcondition is re-checked here; failure would be a bug, reported
    as NotVisible.
    """
    sp = as_space(space)
    v, w = sp.visibility_witness(x)
    if not is_witness(sp, x, v, w):
        raise NotVisible(f"no visibility witness for {x}")
    return v, w


def is_witness(space, x, v, w) -> bool:
    sp = as_space(space)
    return sp.is_thomason(v) and sp.is_thomason(w) and (v - (v & w)) == sp.singleton(x)


def pullback_witness(view: SpaceView, x, v, w):
    """Restrict a witness pair for x in the base space to a subspace containing x.

    Preimages of Thomason subsets under a spectral inclusion are Thomason, so
    the restricted pair witnesses x in the subspace.
    """
    sp = view.space
    v2, w2 = v & view.subset, w & view.subset
    if not is_witness(sp, x, v2, w2):
        raise NotVisible(f"restricted witness fails for {x}")
    return v2, w2
