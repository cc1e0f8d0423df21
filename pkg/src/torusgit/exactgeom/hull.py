"""Membership, closest point and signed distance for V-described rational polytopes."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..errors import DimensionMismatch
from . import linalg
from .core import GramForm, Membership, QPolytope, QVector, SignedDistance, qvec
from .lp import OPTIMAL, linprog


def _check_dim(p, P: QPolytope) -> QVector:
    p = qvec(p)
    if len(p) != P.dim:
        raise DimensionMismatch(f"point has dimension {len(p)}, polytope {P.dim}")
    return p


def hull_membership(p, P: QPolytope) -> Membership:
    """Classify ``p`` against conv(P) by exact LP feasibility.

    ``p`` is in the relative interior iff it is a convex combination with every
    weight strictly positive. Writing each weight as t + u_i with u_i >= 0, one
    LP maximizing t over t, u >= 0 decides both membership (feasibility) and
    relative interiority (t > 0).
    """
    p = _check_dim(p, P)
    gens = P.distinct
    k = len(gens)
    # variables u_1..u_k, t:  sum u_i v_i + t sum v_i = p,  sum u_i + k t = 1
    totals = [sum((g[r] for g in gens), Fraction(0)) for r in range(P.dim)]
    A_eq = [[g[r] for g in gens] + [totals[r]] for r in range(P.dim)]
    A_eq.append([1] * k + [k])
    b_eq = list(p) + [1]
    res = linprog([0] * k + [1], (), (), A_eq, b_eq)
    if res.status != OPTIMAL:
        return Membership.OUTSIDE
    if res.value > 0 and P.full_dimensional:
        return Membership.INTERIOR
    return Membership.BOUNDARY


@dataclass(frozen=True)
class ClosestPoint:
    point: QVector
    # convex weights aligned with ``P.distinct``
    weights: tuple


def closest_point_certificate(P: QPolytope, g: GramForm | None = None) -> ClosestPoint:
    """Minimum-norm point of conv(P) under ``g`` by Wolfe's algorithm in exact arithmetic.

    The result is checked against the optimality conditions before returning:
    the weights form a convex combination reproducing the point, and
    <beta, v - beta>_g >= 0 for every generator v.
    """
    pts = P.distinct
    n = P.dim
    g = g or GramForm.identity(n)
    if g.dim != n:
        raise DimensionMismatch("Gram form and polytope dimensions differ")
    ip = g.inner
    norms = [ip(p, p) for p in pts]
    start = min(range(len(pts)), key=lambda i: (norms[i], i))
    S = [start]
    w = [Fraction(1)]
    x = pts[start]
    while True:
        xx = ip(x, x)
        vals = [ip(x, p) for p in pts]
        j = min(range(len(pts)), key=lambda i: (vals[i], i))
        if vals[j] >= xx or j in S:
            break
        S.append(j)
        w.append(Fraction(0))
        while True:
            v = _affine_minimizer([pts[i] for i in S], ip)
            if all(vi > 0 for vi in v):
                w = list(v)
                break
            theta = min(wi / (wi - vi) for wi, vi in zip(w, v) if vi <= 0 and wi > vi)
            w = [(1 - theta) * wi + theta * vi for wi, vi in zip(w, v)]
            keep = [i for i, wi in enumerate(w) if wi > 0]
            S = [S[i] for i in keep]
            w = [w[i] for i in keep]
        x = _combine([pts[i] for i in S], w)
    weights = [Fraction(0)] * len(pts)
    for i, wi in zip(S, w):
        weights[i] = wi
    cert = ClosestPoint(tuple(x), tuple(weights))
    _verify(cert, pts, ip)
    return cert


def _combine(points, coeffs) -> QVector:
    n = len(points[0])
    return tuple(sum((c * p[i] for c, p in zip(coeffs, points)), Fraction(0)) for i in range(n))


def _affine_minimizer(points, ip) -> list[Fraction]:
    k = len(points)
    G = [[ip(a, b) for b in points] + [Fraction(1)] for a in points]
    G.append([Fraction(1)] * k + [Fraction(0)])
    rhs = [Fraction(0)] * k + [Fraction(1)]
    sol = linalg.solve(G, rhs)
    if sol is None:
        raise ArithmeticError("affinely dependent active set in closest-point search")
    return list(sol[:k])


def _verify(cert: ClosestPoint, pts, ip) -> None:
    beta = cert.point
    if any(wi < 0 for wi in cert.weights) or sum(cert.weights) != 1:
        raise ArithmeticError("closest point weights are not a convex combination")
    if _combine(pts, cert.weights) != beta:
        raise ArithmeticError("closest point weights do not reproduce the point")
    for v in pts:
        if ip(beta, linalg.sub(v, beta)) < 0:
            raise ArithmeticError("closest point fails the optimality check")


def closest_point(P: QPolytope, g: GramForm | None = None) -> QVector:
    """Unique g-norm minimizer of conv(P) (the point of P closest to the origin)."""
    return closest_point_certificate(P, g).point


def signed_distance(p, P: QPolytope, g: GramForm | None = None) -> SignedDistance:
    """Signed g-distance from ``p`` to the boundary of conv(P), kept as (sign, squared).

    Outside points use the closest point of the translated hull; inside points
    use the nearest facet, at squared distance slack^2 / <a, a>_{g^-1}.
    No LP is involved, so the sign is an independent membership test.
    """
    p = _check_dim(p, P)
    g = g or GramForm.identity(P.dim)
    beta = closest_point(P.translated(tuple(-x for x in p)), g)
    if any(x != 0 for x in beta):
        return SignedDistance(1, g.norm2(beta))
    if not P.full_dimensional:
        return SignedDistance(0, 0)
    ginv = g.inverse
    best = None
    for f in P.facets:
        slack = f.b - linalg.dot(f.a, p)
        if slack == 0:
            return SignedDistance(0, 0)
        d2 = slack * slack / ginv.norm2(f.a)
        if best is None or d2 < best:
            best = d2
    return SignedDistance(-1, best)
