import random

import pytest
from hypothesis import given, strategies as st

from conftest import ordinals
from ttg.literal import format_subset, parse_subset
from ttg.ordinal import OMEGA, ONE, Kind, Ordinal, add, classify, parse
from ttg.ordset import OrdinalSet, first_in_rank, rank
from ttg.space import OrdinalSpace

P = parse
TOP = P("w^2*2+w*3+2")


def probe_points(top: Ordinal, extra=()) -> list[Ordinal]:
    """Small-coefficient ordinals up to top, plus the given points and their successors."""
    pts = set()
    for a in range(3):
        for b in range(5):
            for c in range(4):
                pts.add(Ordinal(tuple(t for t in ((2, a), (1, b), (0, c)) if t[1])))
    for e in extra:
        pts.update({e, add(e, ONE)})
    return sorted(p for p in pts if p <= top)


@st.composite
def intervals(draw, top=TOP, count=3):
    out = []
    for _ in range(draw(st.integers(0, count))):
        a, b = sorted([draw(ordinals(max_exp=2, max_coeff=3)), draw(ordinals(max_exp=2, max_coeff=3))])
        out.append((min(a, top), min(b, top)))
    return out


def build_closed(ivs, top=TOP):
    s = OrdinalSet.empty(top)
    for lo, hi in ivs:
        s = s | OrdinalSet.interval(top, lo, hi)
    return s


def member_closed(x, ivs):
    return any(lo <= x <= hi for lo, hi in ivs)


class TestRank:
    def test_values(self):
        assert rank(0) == 0 and rank(5) == 0
        assert rank(OMEGA) == 1 and rank(P("w^2+w")) == 1 and rank(P("w^2*3")) == 2

    @given(ordinals(max_exp=3), st.integers(0, 3))
    def test_first_in_rank(self, a, k):
        f = first_in_rank(a, k)
        assert f >= a and rank(f) == k and (k > 0 or classify(f).kind is not Kind.LIMIT)


class TestAlgebra:
    @given(intervals(), intervals())
    def test_boolean_ops_pointwise(self, ivs1, ivs2):
        s, t = build_closed(ivs1), build_closed(ivs2)
        ends = [e for iv in ivs1 + ivs2 for e in iv]
        for x in probe_points(TOP, ends):
            a, b = member_closed(x, ivs1), member_closed(x, ivs2)
            assert (x in s) == a
            assert (x in (s | t)) == (a or b)
            assert (x in (s & t)) == (a and b)
            assert (x in (s - t)) == (a and not b)
            assert (x in s.complement()) == (not a)

    @given(intervals(), intervals())
    def test_canonical_form(self, ivs1, ivs2):
        s, t = build_closed(ivs1), build_closed(ivs2)
        assert (s | t) == (t | s)
        assert (s - t) | (s & t) == s
        assert s.complement().complement() == s
        assert (s <= t) == ((s | t) == t)

    def test_half_open_vs_closed(self):
        assert OrdinalSet.half_open(TOP, 0, OMEGA) == OrdinalSet.interval(TOP, 0, P("w")) - OrdinalSet.points(TOP, [OMEGA])
        assert OrdinalSet.half_open(TOP, 3, 3).is_empty()

    def test_clipped_to_top(self):
        s = OrdinalSet.interval(P("w"), 0, P("w^2"))
        assert s == OrdinalSet.full(P("w"))

    def test_rank_levels_partition(self):
        top = P("w^3+w")
        levels = [OrdinalSet.rank_level(top, k) for k in range(4)]
        union = OrdinalSet.empty(top)
        for i, a in enumerate(levels):
            for b in levels[i + 1:]:
                assert a.isdisjoint(b)
            union = union | a
        assert union == OrdinalSet.full(top)


class TestTopology:
    @given(intervals())
    def test_closed_intervals_are_closed(self, ivs):
        s = build_closed(ivs)
        assert s.closure() == s
        assert s.is_closed_in(OrdinalSet.full(TOP))

    @given(st.lists(st.tuples(ordinals(max_exp=2, max_coeff=3), ordinals(max_exp=2, max_coeff=3)), max_size=3))
    def test_closure_of_half_open_pieces(self, pairs):
        pieces = [(min(a, b), max(a, b)) for a, b in pairs]
        pieces = [(lo, end) for lo, end in pieces if end <= TOP]
        s = OrdinalSet.empty(TOP)
        for lo, end in pieces:
            s = s | OrdinalSet.half_open(TOP, lo, end)
        cl = s.closure()
        for x in probe_points(TOP, [e for p in pieces for e in p]):
            expected = any(lo <= x < end for lo, end in pieces) or any(
                x == end and lo < end and classify(end).kind is Kind.LIMIT for lo, end in pieces
            )
            assert (x in cl) == expected, x

    @given(intervals())
    def test_closure_idempotent_and_extensive(self, ivs):
        s = build_closed(ivs).complement()
        assert s <= s.closure()
        assert s.closure().closure() == s.closure()

    def test_isolated_points_of_full_space(self):
        top = P("w^2")
        assert OrdinalSet.full(top).isolated() == OrdinalSet.rank_level(top, 0)
        assert OrdinalSet.full(top).derived() == OrdinalSet.full(top) - OrdinalSet.rank_level(top, 0)

    def test_limit_points_of_multiples(self):
        top = P("w^2")
        limits = OrdinalSet.rank_level(top, 1)
        assert limits.limit_points() == OrdinalSet.points(top, [P("w^2")])


class TestEnumeration:
    def test_min_max(self):
        s = OrdinalSet.interval(TOP, 3, P("w+2"))
        assert s.min() == 3 and s.max() == P("w+2")
        assert OrdinalSet.half_open(TOP, 0, OMEGA).max() is None
        assert OrdinalSet.empty(TOP).min() is None

    def test_components(self):
        s = OrdinalSet.interval(TOP, 0, 5) | OrdinalSet.interval(TOP, OMEGA, P("w*2"))
        assert s.components() == [(Ordinal.of(0), Ordinal.of(6)), (OMEGA, P("w*2+1"))]
        assert OrdinalSet.rank_level(TOP, 1).components() is None

    def test_finite_elements(self):
        s = OrdinalSet.points(TOP, [3, OMEGA, P("w^2*2")]) | OrdinalSet.interval(TOP, P("w*3"), P("w*3+2"))
        assert s.is_finite_set()
        assert s.elements() == [Ordinal.of(3), OMEGA, P("w*3"), P("w*3+1"), P("w*3+2"), P("w^2*2")]
        assert not OrdinalSet.rank_level(TOP, 1).is_finite_set()
        with pytest.raises(ValueError):
            OrdinalSet.rank_level(TOP, 1).elements()

    def test_samples_are_members(self):
        rng = random.Random(4)
        s = OrdinalSet.rank_level(TOP, 1) | OrdinalSet.interval(TOP, 2, 9)
        assert all(x in s for x in s.sample(rng, 200))


class TestLiterals:
    sp = OrdinalSpace(TOP)

    @given(intervals())
    def test_round_trip_closed(self, ivs):
        s = build_closed(ivs)
        assert parse_subset(self.sp, format_subset(self.sp, s)) == s

    @given(intervals())
    def test_round_trip_open(self, ivs):
        s = build_closed(ivs).complement()
        assert parse_subset(self.sp, format_subset(self.sp, s)) == s

    @pytest.mark.parametrize("k", [0, 1, 2])
    def test_round_trip_rank_levels(self, k):
        s = OrdinalSet.rank_level(TOP, k)
        assert parse_subset(self.sp, format_subset(self.sp, s)) == s

    def test_renderings(self):
        sp = OrdinalSpace(P("w^2"))
        assert format_subset(sp, OrdinalSet.half_open(sp.top, 0, OMEGA)) == "co([w,w^2])"
        assert format_subset(sp, OrdinalSet.rank_level(sp.top, 1)) == "r1[w,w^2)"
        assert format_subset(sp, OrdinalSet.points(sp.top, [P("w^2")])) == "[w^2,w^2]"
        assert format_subset(sp, sp.empty()) == "{}"
