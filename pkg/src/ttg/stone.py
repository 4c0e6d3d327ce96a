"""Boolean rings through their spectra, and a semisimple derived-category model.

Three presentations stand in for an absolutely flat ring:

* ``ProductOfFields(k)``: a product of k fields, spectrum a discrete k-point space;
* ``IntervalAlgebra(top)``: the interval algebra of [0, top], spectrum [0, top];
* ``AtomlessMarker()``: the atomless Boolean algebra, spectrum the Cantor space.

For a product of fields every complex splits, so an object is recorded by its
graded dimensions at each component.  The indecomposables are the shifted
residue fields k(P)[n], and a localising subcategory is determined by which
of them it contains.  ``loc_contains`` computes membership in the localising
subcategory generated by a family from this description alone, without
looking at supports, so the support bijection can be checked against it.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path
from typing import Iterable, Mapping, Optional, Sequence, Union

from .dimfn import is_cb_defined
from .errors import DualRouteMismatch, PresentationError, SizeGuard
from .ordinal import ONE, Ordinal, add, format_ordinal, parse as parse_ordinal
from .ordset import OrdinalSet, random_ordinal_below
from .space import CantorSpace, FiniteSpace, OrdinalSpace

MAX_ROUNDTRIP_FACTORS = 12


@dataclass(frozen=True)
class ProductOfFields:
    k: int

    def __post_init__(self):
        if self.k < 1:
            raise PresentationError("a product of fields needs at least one factor")

    def __str__(self):
        return f"fields:{self.k}"


@dataclass(frozen=True)
class IntervalAlgebra:
    top: Ordinal

    def __post_init__(self):
        object.__setattr__(self, "top", Ordinal.of(self.top))

    def __str__(self):
        return f"interval:{format_ordinal(self.top)}"


@dataclass(frozen=True)
class AtomlessMarker:
    def __str__(self):
        return "atomless"


Presentation = Union[ProductOfFields, IntervalAlgebra, AtomlessMarker]


def parse_presentation(text: str) -> Presentation:
    text = text.strip()
    if text == "atomless":
        return AtomlessMarker()
    m = re.fullmatch(r"fields:(\d+)", text)
    if m:
        return ProductOfFields(int(m.group(1)))
    if text.startswith("interval:"):
        return IntervalAlgebra(parse_ordinal(text[len("interval:"):]))
    raise PresentationError(f"expected fields:<k>, interval:<ordinal> or atomless, got {text!r}")


def spec_of(p: Presentation):
    if isinstance(p, ProductOfFields):
        return FiniteSpace.discrete(p.k)
    if isinstance(p, IntervalAlgebra):
        return OrdinalSpace(p.top)
    if isinstance(p, AtomlessMarker):
        return CantorSpace()
    raise PresentationError(f"unknown presentation {p!r}")


def is_semi_artinian(p: Presentation) -> bool:
    """Decided by the presentation tag, and cross-checked by asking for a CB rank."""
    by_tag = isinstance(p, (ProductOfFields, IntervalAlgebra))
    by_rank = is_cb_defined(spec_of(p))
    if by_tag != by_rank:
        raise DualRouteMismatch(f"{p}: presentation tag and CB rank disagree on semi-artinian")
    return by_tag


def stone_dual_check(p: IntervalAlgebra, samples: int = 40, seed: int = 0) -> bool:
    """The generators [0, b] of the interval algebra go to clopens that separate points.

    A Boolean algebra of clopens separating the points of a compact Hausdorff
    space is the whole clopen algebra, so this identifies [0, top] as the dual.
    """
    sp = spec_of(p)
    rng = random.Random(seed)
    bound = add(p.top, ONE)
    pts = sorted({random_ordinal_below(rng, bound) for _ in range(samples)} | {Ordinal.of(0), p.top})
    for b in pts:
        gen = OrdinalSet.interval(p.top, 0, b)
        if not sp.is_quasi_compact_open(gen):
            return False
    # for d < e the generator [0, d] contains d but not e
    return all(d in OrdinalSet.interval(p.top, 0, d) and e not in OrdinalSet.interval(p.top, 0, d)
               for d, e in zip(pts, pts[1:]))


# --- graded objects -----------------------------------------------------------------


@dataclass(frozen=True)
class GradedObject:
    """Graded dimensions of a complex over a product of k fields.

    ``dims[i]`` is a sorted tuple of (degree, dimension) pairs with positive
    dimension for component i.
    """

    k: int
    dims: tuple[tuple[tuple[int, int], ...], ...]

    @classmethod
    def from_mapping(cls, k: int, data: Mapping[int, Mapping[int, int]]) -> GradedObject:
        comps: list[dict[int, int]] = [{} for _ in range(k)]
        for i, degrees in data.items():
            if not 0 <= i < k:
                raise PresentationError(f"component {i} out of range for {k} factors")
            for n, d in degrees.items():
                if d < 0:
                    raise PresentationError(f"negative dimension {d} at component {i}, degree {n}")
                if d:
                    comps[i][n] = comps[i].get(n, 0) + d
        return cls(k, tuple(tuple(sorted(c.items())) for c in comps))

    @classmethod
    def zero(cls, k: int) -> GradedObject:
        return cls(k, tuple(() for _ in range(k)))

    @classmethod
    def residue_field(cls, k: int, p: int) -> GradedObject:
        """k(P): dimension 1 in degree 0 at component P."""
        return cls.from_mapping(k, {p: {0: 1}})

    def is_zero(self) -> bool:
        return not any(self.dims)

    def summands(self) -> frozenset[tuple[int, int]]:
        """Indecomposable summands k(i)[n], as (component, degree) pairs."""
        return frozenset((i, n) for i, c in enumerate(self.dims) for n, _ in c)

    def __add__(self, other: GradedObject) -> GradedObject:
        if self.k != other.k:
            raise PresentationError("objects over different rings")
        data: dict[int, dict[int, int]] = {}
        for obj in (self, other):
            for i, c in enumerate(obj.dims):
                for n, d in c:
                    data.setdefault(i, {})
                    data[i][n] = data[i].get(n, 0) + d
        return GradedObject.from_mapping(self.k, data)

    def shift(self, by: int) -> GradedObject:
        return GradedObject(self.k, tuple(tuple((n + by, d) for n, d in c) for c in self.dims))


def random_object(rng: random.Random, k: int, density: float = 0.3, degrees: int = 3) -> GradedObject:
    data = {}
    for i in range(k):
        if rng.random() < density:
            data[i] = {rng.randint(-degrees, degrees): rng.randint(1, 3) for _ in range(rng.randint(1, 2))}
    return GradedObject.from_mapping(k, data)


def loads_objects(text: str, k: int) -> dict[str, GradedObject]:
    """Parse ``obj <name>`` / ``dim <component> <degree> <dimension>`` lines."""
    objects: dict[str, dict[int, dict[int, int]]] = {}
    current: Optional[str] = None
    for number, raw in enumerate(text.splitlines(), 1):
        words = raw.split("#", 1)[0].split()
        if not words:
            continue
        if words[0] == "obj" and len(words) == 2:
            current = words[1]
            if current in objects:
                raise PresentationError(f"line {number}: object {current!r} defined twice")
            objects[current] = {}
        elif words[0] == "dim" and len(words) == 4:
            if current is None:
                raise PresentationError(f"line {number}: dim before any obj line")
            try:
                i, n, d = (int(w) for w in words[1:])
            except ValueError:
                raise PresentationError(f"line {number}: dim takes three integers") from None
            comp = objects[current].setdefault(i, {})
            comp[n] = comp.get(n, 0) + d
        else:
            raise PresentationError(f"line {number}: cannot read {raw.strip()!r}")
    out = {}
    for name, data in objects.items():
        try:
            out[name] = GradedObject.from_mapping(k, data)
        except PresentationError as exc:
            raise PresentationError(f"object {name!r}: {exc}") from None
    return out


def load_objects(path: Union[str, Path], k: int) -> dict[str, GradedObject]:
    return loads_objects(Path(path).read_text(), k)


# --- support bijection ----------------------------------------------------------------


def _require_fields(p: Presentation) -> ProductOfFields:
    if not isinstance(p, ProductOfFields):
        raise PresentationError("objects are modelled for products of fields only")
    return p


def _check_object(p: ProductOfFields, a: GradedObject) -> None:
    if a.k != p.k:
        raise PresentationError(f"object over {a.k} factors used with {p}")


def object_support(p: Presentation, a: GradedObject) -> frozenset[int]:
    p = _require_fields(p)
    _check_object(p, a)
    return frozenset(i for i, c in enumerate(a.dims) if sum(d for _, d in c) > 0)


def tau_membership(p: Presentation, w: Iterable[int], a: GradedObject) -> bool:
    """Is ``a`` in the localising subcategory generated by k(P), P in w?"""
    return object_support(p, a) <= frozenset(w)


def sigma(p: Presentation, generators: Sequence[GradedObject]) -> frozenset[int]:
    """Points P with k(P) tensor L nonzero; tensoring with k(P) keeps the P-component."""
    out: frozenset[int] = frozenset()
    for g in generators:
        out |= object_support(p, g)
    return out


def loc_closure(p: Presentation, generators: Sequence[GradedObject], window: int = 8) -> frozenset[tuple[int, int]]:
    """Indecomposables k(i)[n], |n| <= window, in the localising subcategory of the generators.

    Breadth-first closure: every summand of a generator is in, and the set is
    closed under shifts.  Cones of maps between such sums split into summands
    of the same components, so nothing else is produced.
    """
    p = _require_fields(p)
    start = set()
    for g in generators:
        _check_object(p, g)
        start |= {(i, n) for i, n in g.summands() if abs(n) <= window}
    seen = set(start)
    queue = list(start)
    while queue:
        i, n = queue.pop()
        for m in (n - 1, n + 1):
            if abs(m) <= window and (i, m) not in seen:
                seen.add((i, m))
                queue.append((i, m))
    return frozenset(seen)


def loc_contains(p: Presentation, generators: Sequence[GradedObject], a: GradedObject, window: int = 8) -> bool:
    _check_object(_require_fields(p), a)
    width = max([window] + [abs(n) for _, n in a.summands()] + [abs(n) for g in generators for _, n in g.summands()])
    closure = loc_closure(p, generators, width)
    return a.summands() <= closure


@dataclass
class RoundtripReport:
    k: int
    subsets_ok: int = 0
    subsets_total: int = 0
    families_ok: int = 0
    families_total: int = 0
    order_pairs: int = 0
    counterexamples: list[str] = field(default_factory=list)

    @property
    def passes(self) -> bool:
        return not self.counterexamples

    def lines(self) -> list[str]:
        head = "PASS" if self.passes else "FAIL"
        return [f"{head} {self.subsets_ok}/{self.subsets_total} subsets"] + [
            f"counterexample {c}" for c in self.counterexamples
        ]


def _fmt_points(w) -> str:
    return "{" + ",".join(str(i) for i in sorted(w)) + "}"


def roundtrip_check(p: Presentation, families: int = 100, seed: int = 0) -> RoundtripReport:
    """Check that sigma and tau are mutually inverse and order preserving.

    * sigma(stalks of W) = W for every subset W;
    * for random families G: every generator lies in tau(sigma(G)), and for
      random objects A, membership in tau(sigma(G)) agrees with membership in
      the localising subcategory generated by G (computed by ``loc_contains``);
    * order preservation on all comparable pairs for k <= 5, sampled above.
    """
    p = _require_fields(p)
    k = p.k
    if k > MAX_ROUNDTRIP_FACTORS:
        raise SizeGuard(f"round trip is exhaustive over subsets; k = {k} exceeds {MAX_ROUNDTRIP_FACTORS}")
    rng = random.Random(seed)
    report = RoundtripReport(k)
    points = range(k)
    subsets = [frozenset(c) for r in range(k + 1) for c in combinations(points, r)]
    stalks = [GradedObject.residue_field(k, i) for i in points]

    for w in subsets:
        report.subsets_total += 1
        got = sigma(p, [stalks[i] for i in sorted(w)])
        if got == w:
            report.subsets_ok += 1
        else:
            report.counterexamples.append(f"sigma(tau({_fmt_points(w)})) = {_fmt_points(got)}")

    probes = [random_object(rng, k) for _ in range(20)]
    for _ in range(families):
        report.families_total += 1
        fam = [random_object(rng, k) for _ in range(rng.randint(0, 3))]
        s = sigma(p, fam)
        ok = all(tau_membership(p, s, g) for g in fam)
        if not ok:
            report.counterexamples.append(f"a generator lies outside tau(sigma(G)) = tau({_fmt_points(s)})")
        for a in probes:
            if tau_membership(p, s, a) != loc_contains(p, fam, a):
                ok = False
                report.counterexamples.append(f"membership of an object with support {_fmt_points(object_support(p, a))} "
                                              f"in the subcategory generated by a family with sigma {_fmt_points(s)}")
                break
        # sigma is order preserving on sub-families
        for sub in (fam[:i] for i in range(len(fam))):
            if not sigma(p, sub) <= s:
                ok = False
                report.counterexamples.append("sigma is not monotone on a sub-family")
        report.families_ok += ok

    if k <= 5:
        pairs = [(w, v) for w in subsets for v in subsets if w <= v]
    else:
        pairs = []
        for _ in range(200):
            v = rng.choice(subsets)
            w = frozenset(x for x in v if rng.random() < 0.5)
            pairs.append((w, v))
    members = probes + stalks
    for w, v in pairs:
        report.order_pairs += 1
        for a in members:
            if tau_membership(p, w, a) and not tau_membership(p, v, a):
                report.counterexamples.append(f"tau not monotone on {_fmt_points(w)} <= {_fmt_points(v)}")
                break
    return report
