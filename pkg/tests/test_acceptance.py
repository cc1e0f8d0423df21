"""Acceptance criteria, each timed against its budget and reported on one line.

Run alone with ``pytest tests/test_acceptance.py -v``; the summary lists a
PASS/FAIL line per criterion.
"""
import itertools
import json
import io
import random
from fractions import Fraction as Q

import pytest

import oracles
from gen import approach, closure_faces, family, random_lin, refines
from report import criterion
from torusgit.cli import run
from torusgit.exactgeom import Membership, hull_membership, sign_of_sum
from torusgit.gitcore import (CellKind, LinearizationClass, OneParamSubgroup, ProjPoint, Stability,
                              WeightConfiguration, adapted, bigM, chamber_complex, classify,
                              classify_by_membership, classify_by_sign, limit_point, mu, stratify,
                              walls)
from torusgit.gitcore.chambers import from_mask
from torusgit.pointconfig import (PointConfig, classify_via_pluecker, gm_crosscheck, is_semistable,
                                  nonempty_ss)
from torusgit.vgit import cross_wall, relevant_chambers

FAMILY_SEED = 2024


@pytest.fixture(scope="module")
def weight_family():
    fam = family(FAMILY_SEED, 50)
    assert len(fam) >= 50 and all(W.n <= 3 and W.m <= 7 and W.spanning for W in fam)
    return fam


def interval_oracle(ws, p):
    """Rank-one brute force over every state set: hulls are intervals [min, max]."""
    p = Q(p)
    out = {}
    for k in range(1, len(ws) + 1):
        for S in itertools.combinations(range(len(ws)), k):
            lo, hi = min(ws[i] for i in S), max(ws[i] for i in S)
            if lo < p < hi:
                out[S] = ("Stable", Q(0))
            elif lo <= p <= hi:
                out[S] = ("StrictlySemistable", Q(0))
            else:
                out[S] = ("Unstable", (lo if p < lo else hi) - p)
    return out


def test_criterion_1_running_example():
    with criterion(1, "running example, weights {0,1,2}", 1.0) as st:
        ws = (0, 1, 2)
        W = WeightConfiguration(tuple((w,) for w in ws))
        # oracle: degenerate state sets are those with all weights equal
        oracle_walls = sorted({ws[S[0]] for S in interval_oracle(ws, 0) if len({ws[i] for i in S}) == 1})
        lo, hi = min(ws), max(ws)
        oracle_chambers = [(a + b) / Q(2) for a, b in zip(oracle_walls, oracle_walls[1:])]
        got = walls(W)
        assert [w.hyperplane.offset / w.hyperplane.normal[0] for w in got] == oracle_walls
        assert [w.is_boundary for w in got] == [v in (lo, hi) for v in oracle_walls]
        cx = chamber_complex(W)
        assert [c.point[0] for c in cx.chambers] == oracle_chambers
        assert len(cx.cells) == len(oracle_walls) + len(oracle_chambers) == 5
        for c in cx.cells:
            table = interval_oracle(ws, c.point[0])
            assert {frozenset(S) for S, (v, _) in table.items() if v != "Unstable"} == \
                {from_mask(t) for t in c.signature.masks()}

        L = LinearizationClass((Q(1, 2),))
        table = interval_oracle(ws, Q(1, 2))
        assert classify(ProjPoint({0: 1, 1: 1, 2: 1}), L, W).value == table[(0, 1, 2)][0] == "Stable"
        assert classify(ProjPoint({2: 1}), L, W).value == table[(2,)][0] == "Unstable"
        assert adapted(ProjPoint({2: 1}), L, W).beta == (table[(2,)][1],) == (Q(3, 2),)

        F = cx.cells[cx.locate((1,))]
        cp, cm, seg = relevant_chambers(F, W, cx)
        x = cross_wall(F, cp, cm, W, cx)
        (c,) = x.components
        plus = tuple(sorted(w - 1 for w in ws if w > 1))
        minus = tuple(sorted(1 - w for w in ws if w < 1))
        assert (c.plus_weights, c.minus_weights) == (plus, minus) == ((1,), (1,))
        assert (c.d_plus, c.d_minus) == (len(plus) - 1, len(minus) - 1) == (0, 0)
        assert c.codim == oracles.flip_codim((1,), W.qweights, c.level_set) == 1
        st["detail"] = "3 walls, 2 chambers, 5 cells, d+ = d- = 0, codim 1"


def test_criterion_2_point_configurations():
    with criterion(2, "four points on P^1 with k = (1,1,1,1)", 1.0) as st:
        k = (1, 1, 1, 1)
        cases = {
            "Stable": ((1, 0), (1, 1), (1, 2), (0, 1)),
            "StrictlySemistable": ((1, 0), (2, 0), (1, 2), (0, 1)),
            "Unstable": ((1, 0), (3, 0), (-1, 0), (0, 1)),
        }
        for expected, pts in cases.items():
            P = PointConfig(1, pts)
            assert is_semistable(P, k).value == oracles.point_config_class(P.points, k, 1) == expected
            assert classify_via_pluecker(P, k).value == expected
        assert nonempty_ss((3, 1, 1), 1) is False and (2 * 3 > 5)
        assert nonempty_ss((2, 1, 1), 1) is True and (2 * 2 <= 4)
        st["detail"] = "Stable / StrictlySemistable / Unstable, nonempty_ss false then true"


def _config_sample(rng: random.Random):
    n = rng.choice([1, 1, 2])
    m = rng.randint(n + 2, 5)
    vals = [-2, -1, 0, 1, 2, Q(1, 2), Q(-3, 2)]
    pts = []
    for i in range(m):
        r = rng.random()
        if pts and r < 0.25:
            # the same point with another representative
            c = rng.choice([-2, Q(1, 3), 3])
            pts.append(tuple(c * x for x in rng.choice(pts)))
        elif n == 2 and len(pts) >= 2 and r < 0.45:
            a, b = rng.sample(pts, 2)
            s, t = rng.choice([1, 2, Q(1, 2)]), rng.choice([-1, 1, 3])
            q = tuple(s * x + t * y for x, y in zip(a, b))
            pts.append(q if any(q) else a)
        else:
            q = tuple(Q(rng.choice(vals)) for _ in range(n + 1))
            pts.append(q if any(q) else (1,) + (0,) * n)
    return PointConfig(n, tuple(pts)), tuple(rng.randint(1, 4) for _ in range(m))


def test_criterion_3_gelfand_macpherson():
    with criterion(3, "Gelfand-MacPherson cross-check", 30.0) as st:
        for n, m in [(1, 4), (1, 3)]:
            r = gm_crosscheck(n, m)
            assert r.walls_match and r.chambers_match and all(x.match for x in r.regions)
        rng = random.Random(FAMILY_SEED)
        tested = 0
        tally = {}
        while tested < 200:
            P, k = _config_sample(rng)
            if not P.spans():
                continue
            a = is_semistable(P, k)
            assert a is classify_via_pluecker(P, k)
            assert a.value == oracles.point_config_class(P.points, k, P.n)
            tally[a.value] = tally.get(a.value, 0) + 1
            tested += 1
        assert len(tally) == 3
        st["detail"] = f"(1,4), (1,3) match; {tested} configurations agree " + \
            ", ".join(f"{v}={tally[v]}" for v in sorted(tally))


def _linearizations(rng, W, cx, count=20):
    out = [random_lin(rng, W) for _ in range(count - 6)]
    out += [random_lin(rng, W, outside=True) for _ in range(2)]
    for c in rng.sample(cx.cells, min(4, len(cx.cells))):
        out.append(LinearizationClass(c.point).scaled(rng.randint(1, 3)))
    while len(out) < count:
        out.append(random_lin(rng, W))
    return out


def _on_slice_boundary(W, L):
    return hull_membership(L.normalized, W.slice) is Membership.BOUNDARY


def test_criterion_4_property_suite(weight_family):
    with criterion(4, "property suite over the random family", 60.0) as st:
        checks = dict.fromkeys("abcdefg", 0)
        for idx, W in enumerate(weight_family):
            rng = random.Random(idx)
            cx = chamber_complex(W)
            lins = _linearizations(rng, W, cx)
            assert len(lins) >= 20
            states = [from_mask(t) for t in range(1, 1 << W.m)]
            for i, L in enumerate(lins):
                sample = rng.sample(states, min(4, len(states)))
                # (a) numerical criterion against hull membership
                for S in sample:
                    assert classify_by_sign(S, L, W) is classify_by_membership(S, L, W)
                    checks["a"] += 1
                # (b) lower convexity and homogeneity
                L2 = lins[(i + 1) % len(lins)]
                S = sample[0]
                alpha = Q(rng.randint(1, 5), rng.randint(1, 5))
                m1, m2 = bigM(S, L, W), bigM(S, L2, W)
                assert sign_of_sum([bigM(S, L + L2, W), -m1, -m2]) <= 0
                assert bigM(S, L.scaled(alpha), W) == m1.scaled(alpha)
                checks["b"] += 1
                # (c) the strata partition all state sets, and beta = 0 is the semistable part
                strat = stratify(W, L)
                seen = [T for s in strat.strata for T in s.member_states]
                assert len(seen) == len(set(seen)) == len(states)
                for s in strat.strata:
                    T = s.member_states[0]
                    assert s.semistable == (classify_by_membership(T, L, W) is not Stability.UNSTABLE)
                checks["c"] += 1
                # (d) adapted certificate and (e) limit invariance on unstable points
                for S in sample:
                    if classify_by_membership(S, L, W) is not Stability.UNSTABLE:
                        continue
                    x = ProjPoint({j: rng.choice([1, -1, 2]) for j in S})
                    a = adapted(x, L, W)
                    m = mu(S, a.lam, L, W)
                    assert m > 0 and m * m == a.M.sq * W.gram.norm2(a.lam.lam)
                    assert a.lam == OneParamSubgroup.from_direction(W.char_form.apply(a.beta))
                    checks["d"] += 1
                    y = limit_point(x, a.lam, W)
                    assert bigM(y.support, L, W) == a.M
                    checks["e"] += 1
                # (g) no stable state set over the slice boundary
                if _on_slice_boundary(W, L):
                    for T in states:
                        assert classify_by_sign(T, L, W) is not Stability.STABLE
                    checks["g"] += 1
            # (f) refinement when a chamber degenerates onto a face of its closure
            for c in rng.sample(cx.chambers, min(2, len(cx.chambers))):
                f = rng.choice(closure_faces(cx, c))
                l0 = cx.faces.faces[f].witness
                assert refines(W, approach(c.point, l0, 12), l0)
                checks["f"] += 1
        assert all(checks.values())
        st["detail"] = "checks " + " ".join(f"{k}={v}" for k, v in checks.items())


def test_criterion_5_flip_sweep(weight_family):
    with criterion(5, "flip identity over every interior wall cell", 60.0) as st:
        crossed = 0
        for W in weight_family:
            cx = chamber_complex(W)
            for F in cx.cells:
                if F.kind is not CellKind.WALL_CELL or F.on_boundary or F.dim != W.n - 1 or len(F.walls) != 1:
                    continue
                cp, cm, seg = relevant_chambers(F, W, cx)
                x = cross_wall(F, cp, cm, W, cx)
                y = cross_wall(F, cm, cp, W, cx)
                for a, b in zip(x.components, y.components):
                    codim = oracles.flip_codim(F.point, W.qweights, a.level_set)
                    assert a.d_plus + a.d_minus + 1 == codim == a.codim
                    assert b.lam.lam == tuple(-v for v in a.lam.lam)
                    assert (b.d_plus, b.plus_weights, b.d_minus, b.minus_weights) == (
                        a.d_minus, a.minus_weights, a.d_plus, a.plus_weights)
                sP = {from_mask(t) for t in cx.stable_family(cp.point)}
                sM = {from_mask(t) for t in cx.stable_family(cm.point)}
                sF = {from_mask(t) for t in cx.stable_family(F.point)}
                ssF = {from_mask(t) for t in cx.semistable_family(F.point)}
                assert sF == sP & sM and (sP | sM) <= ssF
                crossed += 1
        assert crossed > 0
        st["detail"] = f"{crossed} crossings"


def _summary(W):
    cx = chamber_complex(W)
    strata = [len(stratify(W, LinearizationClass(c.point)).strata) for c in cx.chambers]
    return (len(cx.walls), len(cx.chambers), len(cx.cells), tuple(strata),
            tuple(c.point for c in cx.cells))


def _cells_json(W):
    out = io.StringIO()
    assert run(["cells", "--weights", json.dumps({"weights": [list(w) for w in W.weights]})], out) == 0
    return out.getvalue()


def test_criterion_6_finiteness_and_determinism(weight_family):
    with criterion(6, "finite, repeatable, permutation-invariant counts", 60.0) as st:
        rng = random.Random(FAMILY_SEED)
        for W in weight_family[:20]:
            first, text = _summary(W), _cells_json(W)
            chamber_complex.cache_clear()
            walls.cache_clear()
            assert _summary(W) == first and _cells_json(W) == text
            perm = list(range(W.m))
            rng.shuffle(perm)
            V = WeightConfiguration(tuple(W.weights[i] for i in perm))
            assert _summary(V) == first
        st["detail"] = "20 configurations, repeated and relabeled"
