"""Hilbert-Mumford functions, stability and the closest-point stratification."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from ..errors import AdaptedUndefined, DimensionMismatch
from ..exactgeom import (Membership, QPolytope, SignedDistance, closest_point, hull_membership,
                         linalg, signed_distance)
from .model import (LinearizationClass, OneParamSubgroup, ProjPoint, Stability, StateSet,
                    WeightConfiguration)


def state_set(x: ProjPoint) -> StateSet:
    return x.support


def _states(x, W: WeightConfiguration) -> StateSet:
    if isinstance(x, ProjPoint):
        return W.check_state_set(x.support)
    return W.check_state_set(x)


def _check_lin(L: LinearizationClass, W: WeightConfiguration) -> None:
    if len(L.p) != W.n:
        raise DimensionMismatch(f"linearization has dimension {len(L.p)}, torus rank is {W.n}")


def mu_raw(S: Iterable[int], lam, p, d, W: WeightConfiguration) -> Fraction:
    """min over chi in S of <lam, d*chi - p>, with no positivity requirement on d.

    ``d = 0, p = 0`` is the trivial class, where this is identically zero.
    """
    S = W.check_state_set(S)
    lam = lam.lam if isinstance(lam, OneParamSubgroup) else tuple(lam)
    d = Fraction(d)
    return min(linalg.dot(lam, [d * c - q for c, q in zip(W.qweights[i], p)]) for i in S)


def mu(S, lam: OneParamSubgroup, L: LinearizationClass, W: WeightConfiguration) -> Fraction:
    _check_lin(L, W)
    return mu_raw(_states(S, W), lam, L.p, L.d, W)


def _shifted(S: StateSet, L: LinearizationClass, W: WeightConfiguration) -> QPolytope:
    ph = L.normalized
    return QPolytope(tuple(linalg.sub(W.qweights[i], ph) for i in sorted(S)))


def bigM(S, L: LinearizationClass, W: WeightConfiguration) -> SignedDistance:
    """Signed distance from p/d to the boundary of the state polytope, times d."""
    _check_lin(L, W)
    S = _states(S, W)
    sd = signed_distance(L.normalized, W.polytope(S), W.char_form)
    return sd.scaled(L.d)


def classify_by_membership(S, L: LinearizationClass, W: WeightConfiguration) -> Stability:
    _check_lin(L, W)
    S = _states(S, W)
    where = hull_membership(L.normalized, W.polytope(S))
    return {Membership.INTERIOR: Stability.STABLE,
            Membership.BOUNDARY: Stability.STRICTLY_SEMISTABLE,
            Membership.OUTSIDE: Stability.UNSTABLE}[where]


def classify_by_sign(S, L: LinearizationClass, W: WeightConfiguration) -> Stability:
    s = bigM(S, L, W).sign
    return {-1: Stability.STABLE, 0: Stability.STRICTLY_SEMISTABLE, 1: Stability.UNSTABLE}[s]


def classify(x, L: LinearizationClass, W: WeightConfiguration, check: bool = True) -> Stability:
    """Stability of a point (or of a generic point with the given state set).

    With ``check`` the numerical criterion (sign of M) is evaluated as well and
    must agree with the hull-membership answer.
    """
    a = classify_by_membership(x, L, W)
    if check:
        b = classify_by_sign(x, L, W)
        if a is not b:
            raise ArithmeticError(f"membership says {a.value}, sign of M says {b.value}")
    return a


def stabilizer_dim(S, W: WeightConfiguration) -> int:
    S = _states(S, W)
    return W.n - W.polytope(S).affine_dim


def is_effective(L: LinearizationClass, W: WeightConfiguration) -> bool:
    _check_lin(L, W)
    return hull_membership(L.normalized, W.slice) is not Membership.OUTSIDE


@dataclass(frozen=True)
class GAmpleCone:
    generators: tuple  # (chi, 1) rays, one per distinct weight
    slice: QPolytope

    def contains(self, L: LinearizationClass) -> bool:
        if len(L.p) != self.slice.dim:
            raise DimensionMismatch("linearization and cone dimensions differ")
        return hull_membership(L.normalized, self.slice) is not Membership.OUTSIDE


def g_ample_cone(W: WeightConfiguration) -> GAmpleCone:
    gens = tuple(tuple(w) + (Fraction(1),) for w in W.slice.distinct)
    return GAmpleCone(gens, W.slice)


@dataclass(frozen=True)
class Adapted:
    beta: tuple
    lam: OneParamSubgroup
    M: SignedDistance


def adapted(x, L: LinearizationClass, W: WeightConfiguration) -> Adapted:
    """Closest point beta of the shifted state polytope and the adapted subgroup.

    The result is certified: mu(S, lam, L)^2 equals M^2 * |lam|^2 with mu > 0.
    """
    _check_lin(L, W)
    S = _states(x, W)
    if hull_membership(L.normalized, W.polytope(S)) is not Membership.OUTSIDE:
        raise AdaptedUndefined("the point is semistable, so no subgroup destabilizes it")
    beta = closest_point(_shifted(S, L, W), W.char_form)
    lam = OneParamSubgroup.from_direction(W.char_form.apply(beta))
    M = SignedDistance(1, L.d * L.d * W.char_form.norm2(beta))
    m = mu(S, lam, L, W)
    if m <= 0 or m * m != M.sq * W.gram.norm2(lam.lam):
        raise ArithmeticError("adapted subgroup fails the mu/|lam| = M identity")
    return Adapted(beta, lam, M)


def limit_point(x: ProjPoint, lam: OneParamSubgroup, W: WeightConfiguration) -> ProjPoint:
    """lim_{t -> 0} lam(t).x: keep the coordinates of minimal pairing."""
    S = _states(x, W)
    vals = {i: lam.pairing(W.qweights[i]) for i in S}
    low = min(vals.values())
    return ProjPoint({i: x.coordinate(i) for i in S if vals[i] == low})


def fixed_components(lam: OneParamSubgroup, W: WeightConfiguration) -> tuple:
    """Weight indices grouped by pairing value, as ((value, indices), ...) in increasing value."""
    if not isinstance(lam, OneParamSubgroup):
        lam = OneParamSubgroup(lam)
    if len(lam.lam) != W.n:
        raise DimensionMismatch("subgroup and torus ranks differ")
    groups: dict[Fraction, list[int]] = {}
    for i, w in enumerate(W.qweights):
        groups.setdefault(lam.pairing(w), []).append(i)
    return tuple((v, tuple(groups[v])) for v in sorted(groups))


@dataclass(frozen=True)
class Stratum:
    beta: tuple
    d_squared: Fraction
    member_states: tuple  # sorted state sets

    @property
    def semistable(self) -> bool:
        return all(x == 0 for x in self.beta)


def state_key(S) -> tuple:
    return (len(S), tuple(sorted(S)))


def all_state_sets(m: int):
    for mask in range(1, 1 << m):
        yield frozenset(i for i in range(m) if mask >> i & 1)


@dataclass(frozen=True)
class Stratification:
    W: WeightConfiguration
    L: LinearizationClass
    strata: tuple

    def beta_of(self, S) -> tuple:
        S = _states(S, self.W)
        return closest_point(_shifted(S, self.L, self.W), self.W.char_form)

    def assign(self, x) -> Stratum:
        beta = self.beta_of(x)
        for s in self.strata:
            if s.beta == beta:
                return s
        raise LookupError("no stratum with this closest point")  # cannot happen for X = P(V)

    def partition(self) -> dict:
        return {S: k for k, s in enumerate(self.strata) for S in s.member_states}


def stratify(W: WeightConfiguration, L: LinearizationClass) -> Stratification:
    """Group all nonempty state sets by the closest point of conv(S) - p/d.

    Strata are ordered by |beta|^2 and then by beta, so the semistable stratum
    (beta = 0), when present, comes first.
    """
    _check_lin(L, W)
    groups: dict[tuple, list] = {}
    ph = L.normalized
    cache: dict[tuple, tuple] = {}
    g = W.char_form
    for S in all_state_sets(W.m):
        pts = tuple(sorted({W.qweights[i] for i in S}))
        beta = cache.get(pts)
        if beta is None:
            beta = closest_point(QPolytope(tuple(linalg.sub(p, ph) for p in pts)), g)
            cache[pts] = beta
        groups.setdefault(beta, []).append(S)
    strata = tuple(
        Stratum(b, g.norm2(b), tuple(sorted(groups[b], key=state_key)))
        for b in sorted(groups, key=lambda b: (g.norm2(b), b))
    )
    return Stratification(W, L, strata)
