import random

import pytest
from hypothesis import given, strategies as st

from conftest import ordinals
from oracles import grid_cb_ranks, longest_chain, random_poset, unlabeled_posets, unvec, vec
from ttg import dimfn
from ttg.dimfn import (
    DimensionAssignment,
    bound_check,
    cb_levels_by_slicing,
    cb_rank_by_slicing,
    cb_rank_formula,
    cbrank,
    check_compatibility,
    krull,
    sublevel,
    validate,
)
from ttg.errors import DualRouteMismatch, NotConstructible, NotSupported, RankUndefined
from ttg.literal import parse_subset
from ttg.ordinal import OMEGA, Ordinal, parse
from ttg.ordset import OrdinalSet
from ttg.space import CantorSpace, FiniteSpace, OrdinalSpace, subspace

P = parse


def finite(n, rel):
    return FiniteSpace([f"p{i}" for i in range(n)], rel)


class TestSublevel:
    def test_chain(self):
        ab = FiniteSpace(["a", "b"], [(0, 1)])
        assert sublevel(krull(ab), 0) == frozenset({1})
        assert sublevel(krull(ab), krull(ab).space_dim) == ab.full()

    def test_isolated_points_of_omega_plus_one(self):
        space = OrdinalSpace(OMEGA)
        assert sublevel(cbrank(space), 0) == parse_subset(space, "[0,w)")


class TestValidate:
    def test_constant_on_chain_violates_strictness(self):
        ab = FiniteSpace(["a", "b"], [(0, 1)])
        report = validate(DimensionAssignment.from_values(ab, {"a": 0, "b": 0}))
        assert not report.passes
        assert [v[0] for v in report.violations] == ["iii"]

    def test_limit_value_violates_first_axiom(self):
        report = validate(DimensionAssignment.from_values(FiniteSpace.discrete(2), {0: OMEGA, 1: 0}))
        assert ("i", "value w") in report.violations
        assert report.lines()[0].startswith("FAIL i")

    def test_reversed_chain_violates_monotonicity(self):
        ab = FiniteSpace(["a", "b"], [(0, 1)])
        report = validate(DimensionAssignment.from_values(ab, {"a": 0, "b": 1}))
        assert ("ii", "a~>b") in report.violations

    def test_non_thomason_sublevel(self):
        # on [0,w], X<=0 = {w} is not open
        space = OrdinalSpace(OMEGA)
        levels = {0: parse_subset(space, "[w,w]"), 1: parse_subset(space, "[0,w)")}
        report = validate(DimensionAssignment.from_levels(space, levels))
        assert ("spectral", "X<=0") in report.violations


class TestKrull:
    def test_examples(self):
        assert set(krull(FiniteSpace.discrete(3)).values().values()) == {Ordinal.of(0)}
        chain = FiniteSpace(["x", "y", "z"], [(0, 1), (1, 2)])
        assert krull(chain).values() == {2: 0, 1: 1, 0: 2}
        diamond = FiniteSpace(["x", "y1", "y2", "z"], [(0, 1), (0, 2), (1, 3), (2, 3)])
        assert krull(diamond)(0) == 2

    @pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
    def test_exhaustive_against_chain_oracle(self, n):
        for rel in unlabeled_posets(n):
            sp = finite(n, rel)
            assignment = krull(sp)
            assert assignment.values() == longest_chain(n, rel)
            assert validate(assignment).passes

    @given(st.integers(1, 10), st.floats(0.0, 0.6), st.integers(0, 10**6))
    def test_random_against_chain_oracle(self, n, density, seed):
        rel = random_poset(random.Random(seed), n, density)
        sp = finite(n, rel)
        assignment = krull(sp)
        assert assignment.values() == longest_chain(n, rel)
        assert validate(assignment).passes
        assert check_compatibility(sp, "krull").passes

    @given(st.integers(1, 8), st.floats(0.0, 0.6), st.integers(0, 10**6))
    def test_views_accept_krull(self, n, density, seed):
        rng = random.Random(seed)
        sp = finite(n, random_poset(rng, n, density))
        keep = frozenset(x for x in sp.points if rng.random() < 0.6)
        view = subspace(sp, keep)
        assert validate(krull(view)).passes

    def test_not_for_ordinal_spaces(self):
        with pytest.raises(NotSupported):
            krull(OrdinalSpace(OMEGA))


class TestCBRank:
    def test_discrete(self):
        a = cbrank(FiniteSpace.discrete(4))
        assert a.space_dim == 0 and a.attained == (Ordinal.of(0),)

    def test_omega_plus_one(self):
        a = cbrank(OrdinalSpace(OMEGA))
        assert a(5) == 0 and a(OMEGA) == 1 and a.space_dim == 1

    def test_omega_squared(self):
        a = cbrank(OrdinalSpace(P("w^2")))
        assert a(P("w^2")) == 2 and a(P("w*7")) == 1 and a(P("w*7+1")) == 0 and a.space_dim == 2

    def test_errors(self):
        with pytest.raises(NotConstructible):
            cbrank(FiniteSpace.chain(2))
        with pytest.raises(RankUndefined):
            cbrank(CantorSpace())

    @given(ordinals(max_exp=2, max_coeff=4))
    def test_three_routes_agree(self, top):
        a = cbrank(OrdinalSpace(top))  # raises DualRouteMismatch on disagreement
        assert a.space_dim == top.leading_exponent()
        assert validate(a).passes
        for x in OrdinalSet.full(top).sample(random.Random(str(top)), 30) + [top]:
            assert a(x) == cb_rank_formula(x) == cb_rank_by_slicing(x, top)

    def test_slice_levels(self):
        top = P("w^2*2+w")
        assert cb_levels_by_slicing(top) == [OrdinalSet.rank_level(top, k) for k in range(3)]

    def test_mismatch_is_an_error(self, monkeypatch):
        monkeypatch.setattr(dimfn, "cb_levels_by_slicing", lambda top: [OrdinalSet.full(top)])
        with pytest.raises(DualRouteMismatch):
            cbrank(OrdinalSpace(OMEGA))

    @given(st.lists(st.tuples(ordinals(max_exp=2, max_coeff=3), ordinals(max_exp=2, max_coeff=3)), min_size=1, max_size=3))
    def test_views_match_grid_oracle(self, pairs):
        top = P("w^3")
        ivs = [tuple(sorted(p)) for p in pairs]
        base = OrdinalSpace(top)
        s = OrdinalSet.empty(top)
        for lo, hi in ivs:
            s = s | OrdinalSet.interval(top, lo, hi)
        view_rank = cbrank(subspace(base, s))
        base_rank = cbrank(base)
        oracle = grid_cb_ranks([(vec(lo), vec(hi)) for lo, hi in ivs], depth=3, bound=7)
        for v, r in oracle.items():
            if max(v) <= 4:
                y = unvec(v)
                assert view_rank(y) == r, y
                assert view_rank(y) <= base_rank(y)


class TestCompatibility:
    def test_chain(self):
        chain = FiniteSpace(["x", "y", "z"], [(0, 1), (1, 2)])
        report = check_compatibility(chain, "krull")
        assert report.passes and report.lines()[-1] == "PASS"

    def test_omega_squared_slices(self):
        space = OrdinalSpace(P("w^2"))
        assert check_compatibility(space, "cbrank").passes
        sliced = dimfn.slice_dimension(cbrank(space), 0, "cbrank")
        rec = subspace(space, space.full() - OrdinalSet.rank_level(space.top, 0)).recoordinate()
        assert rec.target == OrdinalSpace(OMEGA)
        for x in [P("w"), P("w*5"), P("w^2")]:
            # ranks on the slice shift down by one, in either coordinate system
            assert sliced(x) == cbrank(rec.target)(rec.forward(x))
            assert int(sliced(x)) == int(cbrank(space)(x)) - 1

    def test_discrete(self):
        assert check_compatibility(FiniteSpace.discrete(5), "cbrank").passes


class TestBound:
    @pytest.mark.parametrize("d, ok", [("0", True), ("3", True), ("5", True), ("w+1", True), ("w*2", False), ("w^2", False)])
    def test_values(self, d, ok):
        assert bound_check(P(d)) is ok

    def test_on_assignment(self):
        assert bound_check(krull(FiniteSpace.chain(4)))
