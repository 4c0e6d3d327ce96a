import random
from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from ttg.dimfn import is_cb_defined
from ttg.errors import PresentationError, SizeGuard
from ttg.ordinal import OMEGA, parse
from ttg.space import CantorSpace, FiniteSpace, OrdinalSpace, constructible_check
from ttg.stone import (
    AtomlessMarker,
    GradedObject,
    IntervalAlgebra,
    ProductOfFields,
    is_semi_artinian,
    loads_objects,
    loc_contains,
    object_support,
    parse_presentation,
    random_object,
    roundtrip_check,
    sigma,
    spec_of,
    stone_dual_check,
    tau_membership,
)

P = parse


class TestPresentations:
    def test_parse(self):
        assert parse_presentation("fields:3") == ProductOfFields(3)
        assert parse_presentation("interval:w^2") == IntervalAlgebra(P("w^2"))
        assert parse_presentation("atomless") == AtomlessMarker()
        for bad in ["fields:0", "fields:x", "ring:3", "interval:w+"]:
            with pytest.raises(Exception) as info:
                parse_presentation(bad)
            assert isinstance(info.value, (PresentationError, ValueError))

    def test_spec(self):
        assert spec_of(ProductOfFields(3)) == FiniteSpace.discrete(3)
        assert spec_of(IntervalAlgebra(OMEGA)) == OrdinalSpace(OMEGA)
        assert spec_of(AtomlessMarker()) == CantorSpace()
        for p in [ProductOfFields(2), IntervalAlgebra(P("w^2*3+1")), AtomlessMarker()]:
            assert constructible_check(spec_of(p))

    @pytest.mark.parametrize("top", ["0", "5", "w", "w^2+w*3", "w^3*2"])
    def test_interval_algebra_dual(self, top):
        assert stone_dual_check(IntervalAlgebra(P(top)))

    def test_semi_artinian(self):
        assert is_semi_artinian(ProductOfFields(5))
        assert is_semi_artinian(IntervalAlgebra(P("w^2")))
        assert not is_semi_artinian(AtomlessMarker())
        for p in [ProductOfFields(1), IntervalAlgebra(P("w^3+2")), AtomlessMarker()]:
            assert is_semi_artinian(p) == is_cb_defined(spec_of(p))


class TestObjects:
    def test_support(self):
        p4 = ProductOfFields(4)
        assert object_support(p4, GradedObject.zero(4)) == frozenset()
        assert object_support(p4, GradedObject.from_mapping(4, {2: {5: 1}})) == frozenset({2})
        a = GradedObject.from_mapping(4, {0: {0: 1}, 3: {-1: 2}})
        assert object_support(p4, a) == frozenset({0, 3})

    def test_tau(self):
        p = ProductOfFields(3)
        stalk = GradedObject.residue_field(3, 1)
        assert tau_membership(p, {1}, stalk)
        assert not tau_membership(p, set(), stalk)
        rng = random.Random(0)
        for _ in range(50):
            assert tau_membership(p, range(3), random_object(rng, 3))

    def test_sigma(self):
        p = ProductOfFields(4)
        assert sigma(p, []) == frozenset()
        assert sigma(p, [GradedObject.residue_field(4, 2)]) == frozenset({2})
        g1 = GradedObject.from_mapping(4, {0: {0: 1}, 1: {2: 1}})
        g2 = GradedObject.from_mapping(4, {1: {0: 3}, 3: {1: 1}})
        assert sigma(p, [g1, g2]) == frozenset({0, 1, 3})

    def test_zero_dimensions_are_dropped(self):
        a = GradedObject.from_mapping(2, {0: {0: 0}})
        assert a.is_zero() and a == GradedObject.zero(2)

    def test_validation(self):
        with pytest.raises(PresentationError):
            GradedObject.from_mapping(2, {2: {0: 1}})
        with pytest.raises(PresentationError):
            GradedObject.from_mapping(2, {0: {0: -1}})
        with pytest.raises(PresentationError):
            object_support(IntervalAlgebra(OMEGA), GradedObject.zero(1))

    def test_file_format(self):
        objs = loads_objects("# two objects\nobj A\ndim 0 0 1\ndim 3 -1 2\nobj B\n", 4)
        assert object_support(ProductOfFields(4), objs["A"]) == frozenset({0, 3})
        assert objs["B"].is_zero()
        for bad in ["dim 0 0 1\n", "obj A\ndim 0 x 1\n", "obj A\nobj A\n", "obj A\ndim 9 0 1\n", "thing\n"]:
            with pytest.raises(PresentationError):
                loads_objects(bad, 4)


class TestLocModel:
    @given(st.integers(1, 6), st.integers(0, 10**6))
    def test_loc_agrees_with_supports(self, k, seed):
        rng = random.Random(seed)
        p = ProductOfFields(k)
        fam = [random_object(rng, k) for _ in range(rng.randint(0, 3))]
        for _ in range(10):
            a = random_object(rng, k, degrees=12)
            assert loc_contains(p, fam, a) == tau_membership(p, sigma(p, fam), a)

    def test_shifts_and_sums_stay_inside(self):
        p = ProductOfFields(3)
        g = GradedObject.residue_field(3, 0)
        assert loc_contains(p, [g], g.shift(20) + g.shift(-3))
        assert not loc_contains(p, [g], GradedObject.residue_field(3, 1))

    def test_every_object_in_tau_of_its_support_only(self):
        rng = random.Random(7)
        p = ProductOfFields(4)
        subsets = [frozenset(c) for r in range(5) for c in combinations(range(4), r)]
        for _ in range(30):
            a = random_object(rng, 4)
            supp = object_support(p, a)
            for w in subsets:
                assert tau_membership(p, w, a) == (supp <= w)


class TestRoundtrip:
    def test_one_factor(self):
        r = roundtrip_check(ProductOfFields(1))
        assert r.passes and (r.subsets_ok, r.subsets_total) == (2, 2)

    def test_three_factors(self):
        r = roundtrip_check(ProductOfFields(3))
        assert r.lines() == ["PASS 8/8 subsets"]

    def test_eight_factors(self):
        r = roundtrip_check(ProductOfFields(8), families=100)
        assert r.passes and r.families_ok == r.families_total == 100

    def test_guard(self):
        with pytest.raises(SizeGuard):
            roundtrip_check(ProductOfFields(13))
        with pytest.raises(PresentationError):
            roundtrip_check(AtomlessMarker())
