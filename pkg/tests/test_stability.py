import itertools
import random
from fractions import Fraction as Q

import pytest
from hypothesis import given, strategies as st

import oracles
from gen import configs_with_lin, weight_configs
from torusgit.errors import AdaptedUndefined, DimensionMismatch
from torusgit.exactgeom import GramForm, SignedDistance, sign_of_sum
from torusgit.gitcore import (LinearizationClass, OneParamSubgroup, ProjPoint, Stability,
                              WeightConfiguration, adapted, all_state_sets, bigM, classify,
                              classify_by_membership, classify_by_sign, fixed_components,
                              g_ample_cone, is_effective, limit_point, mu, mu_raw,
                              stabilizer_dim, state_set, stratify)

W012 = WeightConfiguration(((0,), (1,), (2,)))
HALF = LinearizationClass((Q(1, 2),))


def lam(*xs):
    return OneParamSubgroup(xs)


class TestTypes:
    def test_weights_validation(self):
        with pytest.raises(DimensionMismatch):
            WeightConfiguration(((0, 0), (1,)))
        with pytest.raises(ValueError):
            WeightConfiguration(((Q(1, 2),),))
        with pytest.raises(ValueError):
            WeightConfiguration(())

    def test_duplicates_are_distinct_states(self):
        W = WeightConfiguration(((0,), (0,), (1,)))
        assert W.m == 3 and len(W.slice.distinct) == 2

    def test_point_support(self):
        assert state_set(ProjPoint({0: 1, 1: 1, 2: 1})) == {0, 1, 2}
        assert state_set(ProjPoint({2: 7})) == {2}
        assert state_set(ProjPoint({0: 1, 2: -5})) == {0, 2}
        assert state_set(ProjPoint({0: 1, 1: 0})) == {0}
        with pytest.raises(ValueError):
            ProjPoint({0: 0})

    def test_linearization(self):
        L = LinearizationClass((1, 2), 2)
        assert L.normalized == (Q(1, 2), 1)
        assert (L + L).normalized == L.normalized
        assert L.scaled(3).d == 6
        with pytest.raises(ValueError):
            LinearizationClass((1,), 0)

    def test_subgroup(self):
        assert OneParamSubgroup.from_direction((Q(2, 3), Q(-4, 3))).lam == (1, -2)
        with pytest.raises(ValueError):
            OneParamSubgroup((2, 4))
        with pytest.raises(ValueError):
            OneParamSubgroup((0, 0))


class TestMu:
    def test_examples(self):
        L = LinearizationClass((1,), 2)
        assert mu({0, 1, 2}, lam(1), L, W012) == -1
        assert mu({2}, lam(-1), L, W012) == -3
        for l in (lam(1), lam(-1)):
            assert mu({1}, l, LinearizationClass((1,)), W012) == 0

    def test_trivial_class_is_zero(self):
        for S in all_state_sets(3):
            assert mu_raw(S, (1,), (0,), 0, W012) == 0
            assert mu_raw(S, (-1,), (0,), 0, W012) == 0

    def test_empty_state_set(self):
        with pytest.raises(ValueError):
            mu(set(), lam(1), HALF, W012)

    @given(weight_configs(), st.integers(0, 10 ** 6))
    def test_homogeneous_and_additive_per_minimizer(self, W, seed):
        rng = random.Random(seed)
        l = OneParamSubgroup.from_direction([rng.choice([-2, -1, 1, 2]) for _ in range(W.n)])
        S = frozenset(rng.sample(range(W.m), rng.randint(1, W.m)))
        p1 = tuple(Q(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(W.n))
        p2 = tuple(Q(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(W.n))
        L1, L2 = LinearizationClass(p1, 1), LinearizationClass(p2, 2)
        a = Q(rng.randint(1, 5), rng.randint(1, 5))
        assert mu(S, l, L1.scaled(a), W) == a * mu(S, l, L1, W)
        # the pairing of each fixed state is additive, so mu is superadditive
        assert mu(S, l, L1 + L2, W) >= mu(S, l, L1, W) + mu(S, l, L2, W)
        vals = {i: l.pairing(W.qweights[i]) for i in S}
        if len(set(vals.values())) == 1:
            assert mu(S, l, L1 + L2, W) == mu(S, l, L1, W) + mu(S, l, L2, W)


class TestBigM:
    def test_examples(self):
        assert bigM({0, 1, 2}, HALF, W012) == SignedDistance(-1, Q(1, 4))
        assert bigM({2}, HALF, W012) == SignedDistance(1, Q(9, 4))
        assert bigM({1}, LinearizationClass((1,)), W012) == SignedDistance(0, 0)
        assert bigM({0, 1, 2}, LinearizationClass((1,), 2), W012) == SignedDistance(-1, 1)

    @given(configs_with_lin(inside=False), st.integers(0, 10 ** 6))
    def test_matches_oracle(self, WL, seed):
        W, L = WL
        S = frozenset(random.Random(seed).sample(range(W.m), random.Random(seed + 1).randint(1, W.m)))
        got = bigM(S, L, W)
        sign, sq = oracles.signed_distance(L.normalized, W.subset(S), W.gram.matrix)
        assert (got.sign, got.sq) == (sign, sq * L.d * L.d)

    def test_gram_changes_distance(self):
        W = WeightConfiguration(((0,), (2,)), gram=GramForm(((4,),)))
        # characters are measured with the inverse form 1/4
        assert bigM({0, 1}, HALF, W) == SignedDistance(-1, Q(1, 16))


class TestClassify:
    def test_examples(self):
        assert classify(ProjPoint({0: 1, 1: 1, 2: 1}), HALF, W012) is Stability.STABLE
        assert classify({0, 2}, LinearizationClass((0,)), W012) is Stability.STRICTLY_SEMISTABLE
        assert classify({2}, HALF, W012) is Stability.UNSTABLE

    @given(configs_with_lin(max_n=3, max_m=5, inside=False), st.integers(0, 10 ** 6))
    def test_routes_agree_with_oracle(self, WL, seed):
        W, L = WL
        rng = random.Random(seed)
        S = frozenset(rng.sample(range(W.m), rng.randint(1, W.m)))
        a = classify_by_membership(S, L, W)
        b = classify_by_sign(S, L, W)
        assert a is b
        assert a.value == oracles.classify(L.normalized, W.subset(S))

    def test_stabilizer_dim(self):
        assert stabilizer_dim({1}, W012) == 1
        assert stabilizer_dim({0, 2}, W012) == 0
        W = WeightConfiguration(((0, 0), (1, 0), (0, 1)))
        assert stabilizer_dim({0, 1, 2}, W) == 0 and stabilizer_dim({0, 1}, W) == 1


class TestCone:
    def test_examples(self):
        cone = g_ample_cone(W012)
        assert cone.slice.distinct == ((0,), (2,), (1,)) or set(cone.slice.distinct) == {(0,), (1,), (2,)}
        assert cone.generators == ((0, 1), (1, 1), (2, 1))
        single = g_ample_cone(WeightConfiguration(((3, 1),)))
        assert single.generators == ((3, 1, 1),)

    def test_gm_slice_is_hypersimplex(self):
        from torusgit.pointconfig import gm_weights, hypersimplex
        cone = g_ample_cone(gm_weights(1, 4))
        assert set(cone.slice.distinct) == set(hypersimplex(1, 4).vertices)

    @given(configs_with_lin(inside=False), st.integers(1, 5), st.integers(1, 5))
    def test_effectivity_semigroup(self, WL, a, b):
        W, L = WL
        L2 = LinearizationClass(tuple(w * 2 for w in W.qweights[0]), 2)
        if is_effective(L, W):
            assert is_effective(L.scaled(a) + L2.scaled(b), W)


class TestAdapted:
    def test_examples(self):
        a = adapted(ProjPoint({2: 1}), HALF, W012)
        assert (a.beta, a.lam.lam, a.M) == ((Q(3, 2),), (1,), SignedDistance(1, Q(9, 4)))
        a = adapted(ProjPoint({0: 1}), HALF, W012)
        assert (a.beta, a.lam.lam, a.M) == ((Q(-1, 2),), (-1,), SignedDistance(1, Q(1, 4)))
        with pytest.raises(AdaptedUndefined):
            adapted(ProjPoint({0: 1, 1: 1}), HALF, W012)

    def test_non_identity_gram(self):
        W = WeightConfiguration(((2, 0), (2, 1)), gram=GramForm(((1, 0), (0, 3))))
        L = LinearizationClass((0, 0))
        a = adapted({0, 1}, L, W)
        assert a.M == bigM({0, 1}, L, W)
        # lambda is the subgroup dual to beta under the gram form
        assert a.lam.lam == OneParamSubgroup.from_direction(W.char_form.apply(a.beta)).lam

    @given(configs_with_lin(max_n=3, max_m=5, inside=False), st.integers(0, 10 ** 6))
    def test_certificate_and_limit(self, WL, seed):
        W, L = WL
        rng = random.Random(seed)
        S = frozenset(rng.sample(range(W.m), rng.randint(1, W.m)))
        x = ProjPoint({i: rng.choice([1, -2, 3]) for i in S})
        if classify(x, L, W) is not Stability.UNSTABLE:
            return
        a = adapted(x, L, W)
        m = mu(S, a.lam, L, W)
        assert m > 0 and m * m == a.M.sq * W.gram.norm2(a.lam.lam)
        assert a.M == bigM(S, L, W)
        y = limit_point(x, a.lam, W)
        assert mu(y, a.lam, L, W) == m
        assert bigM(y.support, L, W) == a.M

    @given(configs_with_lin(inside=False), st.integers(0, 10 ** 6))
    def test_grid_lower_bound(self, WL, seed):
        W, L = WL
        rng = random.Random(seed)
        S = frozenset(rng.sample(range(W.m), rng.randint(1, W.m)))
        M = bigM(S, L, W)
        best = None
        for l in itertools.product(range(-3, 4), repeat=W.n):
            if not any(l):
                continue
            m = mu_raw(S, l, L.p, L.d, W)
            v = SignedDistance.from_rational(m).sq / W.gram.norm2(l)
            ratio = SignedDistance((m > 0) - (m < 0), v) if m else SignedDistance(0, 0)
            assert ratio <= M
            best = ratio if best is None or ratio > best else best
        if W.n == 1:
            assert best == M


class TestLimits:
    def test_examples(self):
        x = ProjPoint({0: 1, 1: 1, 2: 1})
        assert limit_point(x, lam(1), W012).support == {0}
        assert limit_point(x, lam(-1), W012).support == {2}
        assert limit_point(ProjPoint({1: 5}), lam(1), W012) == ProjPoint({1: 5})

    def test_fixed_components(self):
        assert fixed_components(lam(1), W012) == ((0, (0,)), (1, (1,)), (2, (2,)))
        W = WeightConfiguration(((1, 0), (0, 1), (1, 1)))
        assert [v for v, _ in fixed_components(lam(1, -1), W)] == [-1, 0, 1]
        assert len(fixed_components(lam(1), WeightConfiguration(((4,),)))) == 1
        with pytest.raises(ValueError):
            fixed_components((0,), W012)


class TestStratify:
    def test_example(self):
        st_ = stratify(W012, HALF)
        got = {s.beta: [sorted(S) for S in s.member_states] for s in st_.strata}
        assert got == {
            (0,): [[0, 1], [0, 2], [0, 1, 2]],
            (Q(-1, 2),): [[0]],
            (Q(1, 2),): [[1], [1, 2]],
            (Q(3, 2),): [[2]],
        }
        assert st_.strata[0].semistable
        assert st_.assign(ProjPoint({1: 1, 2: 1})).beta == (Q(1, 2),)

    def test_vertex(self):
        st_ = stratify(W012, LinearizationClass((0,)))
        assert set(st_.strata[0].member_states) == {S for S in all_state_sets(3) if 0 in S}

    def test_two_points(self):
        W = WeightConfiguration(((1, 0), (0, 1)))
        st_ = stratify(W, LinearizationClass((0, 0)))
        assert {s.beta: s.member_states for s in st_.strata} == {
            (Q(1, 2), Q(1, 2)): (frozenset({0, 1}),),
            (1, 0): (frozenset({0}),),
            (0, 1): (frozenset({1}),),
        }

    @given(configs_with_lin(max_n=3, max_m=5, inside=False))
    def test_partition_and_semistable_stratum(self, WL):
        W, L = WL
        st_ = stratify(W, L)
        seen = [S for s in st_.strata for S in s.member_states]
        assert len(seen) == len(set(seen)) == 2 ** W.m - 1
        assert len({s.beta for s in st_.strata}) == len(st_.strata)
        for s in st_.strata:
            for S in s.member_states:
                semistable = classify(S, L, W, check=False) is not Stability.UNSTABLE
                assert semistable == s.semistable
                assert s.beta == oracles.closest_point(
                    [tuple(a - b for a, b in zip(w, L.normalized)) for w in W.subset(S)], W.char_form.matrix)
                if not s.semistable:
                    assert adapted(S, L, W).lam == OneParamSubgroup.from_direction(W.char_form.apply(s.beta))

    def test_ineffective_linearization_still_stratifies(self):
        st_ = stratify(W012, LinearizationClass((5,)))
        assert not any(s.semistable for s in st_.strata)


class TestConvexity:
    @given(weight_configs(max_n=2, max_m=5), st.integers(0, 10 ** 6))
    def test_lower_convex_and_homogeneous(self, W, seed):
        rng = random.Random(seed)
        for _ in range(4):
            S = frozenset(rng.sample(range(W.m), rng.randint(1, W.m)))
            L1 = LinearizationClass(tuple(Q(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(W.n)),
                                    Q(rng.randint(1, 3)))
            L2 = LinearizationClass(tuple(Q(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(W.n)),
                                    Q(rng.randint(1, 3)))
            a = Q(rng.randint(0, 4), rng.randint(1, 4))
            m1, m2, m12 = bigM(S, L1, W), bigM(S, L2, W), bigM(S, L1 + L2, W)
            assert sign_of_sum([m12, -m1, -m2]) <= 0
            if a:
                assert bigM(S, L1.scaled(a), W) == m1.scaled(a)
