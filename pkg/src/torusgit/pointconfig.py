"""Weighted point configurations on P^n and the Gelfand-MacPherson dictionary.

A configuration of m points in P^n is compared with the torus (C*)^m acting
on the Pluecker space of (n+1)-subsets. Pluecker weights sit on the
hyperplane sum(x) = n+1, so the torus side works in the chart that forgets
the last coordinate.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .errors import DimensionMismatch, NotSpanning
from .exactgeom import QHyperplane, QPolytope, enumerate_regions, linalg, qvec
from .gitcore import (LinearizationClass, ProjPoint, Stability, WeightConfiguration, classify,
                      chamber_complex)
from .limits import check_pluecker


@dataclass(frozen=True)
class PointConfig:
    n: int
    points: tuple

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("configurations live on P^n with n >= 1")
        pts = tuple(qvec(p) for p in self.points)
        if not pts:
            raise ValueError("a configuration needs at least one point")
        for p in pts:
            if len(p) != self.n + 1:
                raise DimensionMismatch(f"points on P^{self.n} have {self.n + 1} coordinates")
            if all(x == 0 for x in p):
                raise ValueError("homogeneous coordinates must be nonzero")
        object.__setattr__(self, "points", pts)

    @property
    def m(self) -> int:
        return len(self.points)

    def spans(self) -> bool:
        return linalg.rank(list(self.points)) == self.n + 1


@dataclass(frozen=True)
class KVector:
    k: tuple

    def __post_init__(self):
        k = tuple(int(x) for x in self.k)
        if not k or any(x <= 0 for x in k):
            raise ValueError("k must be a nonempty vector of positive integers")
        object.__setattr__(self, "k", k)

    @property
    def total(self) -> int:
        return sum(self.k)


def _as_k(k) -> KVector:
    return k if isinstance(k, KVector) else KVector(tuple(k))


def _span_key(rows) -> tuple:
    R, _ = linalg.row_reduce(rows)
    return tuple(tuple(r) for r in R)


def point_subspaces(P: PointConfig) -> dict:
    """Proper subspaces spanned by points: canonical basis -> (rank, member indices)."""
    out: dict[tuple, tuple] = {}
    frontier = []
    for i, p in enumerate(P.points):
        key = _span_key([p])
        if key not in out:
            out[key] = None
            frontier.append(key)
    while frontier:
        nxt = []
        for key in frontier:
            basis = [list(r) for r in key]
            for p in P.points:
                rows = basis + [list(p)]
                if linalg.rank(rows) == len(basis) + 1 and len(rows) <= P.n:
                    k2 = _span_key(rows)
                    if k2 not in out:
                        out[k2] = None
                        nxt.append(k2)
        frontier = nxt
    for key in out:
        r = len(key)
        members = tuple(i for i, p in enumerate(P.points) if linalg.rank([list(x) for x in key] + [list(p)]) == r)
        out[key] = (r, members)
    return out


def is_semistable(P: PointConfig, k) -> Stability:
    """Check (n+1) * sum_{p_i in W} k_i <= (dim W + 1) * sum k over subspaces W spanned by points."""
    k = _as_k(k)
    if len(k.k) != P.m:
        raise DimensionMismatch("one weight per point")
    total = k.total
    strict = True
    for r, members in point_subspaces(P).values():
        lhs = (P.n + 1) * sum(k.k[i] for i in members)
        rhs = r * total
        if lhs > rhs:
            return Stability.UNSTABLE
        if lhs == rhs:
            strict = False
    return Stability.STABLE if strict else Stability.STRICTLY_SEMISTABLE


def nonempty_ss(k, n: int) -> bool:
    k = _as_k(k)
    return (n + 1) * max(k.k) <= k.total


def _check_nm(n: int, m: int) -> None:
    if n < 0 or m < 1 or n + 1 > m:
        raise ValueError(f"need 1 <= n+1 <= m, got n={n}, m={m}")


def subsets(n: int, m: int) -> list:
    return list(itertools.combinations(range(m), n + 1))


def gm_weights(n: int, m: int) -> WeightConfiguration:
    """Indicator vectors of the (n+1)-subsets of {1..m}, in lexicographic order."""
    _check_nm(n, m)
    check_pluecker(n, m)
    ws, labels = [], []
    for I in subsets(n, m):
        ws.append(tuple(int(i in I) for i in range(m)))
        labels.append("".join(str(i + 1) for i in I) if m < 10 else "-".join(str(i + 1) for i in I))
    return WeightConfiguration(tuple(ws), tuple(labels))


def gm_chart(n: int, m: int) -> WeightConfiguration:
    """Pluecker weights with the last coordinate dropped (an affine chart of sum = n+1)."""
    full = gm_weights(n, m)
    return WeightConfiguration(tuple(w[:-1] for w in full.weights), full.labels)


def to_chart(x) -> tuple:
    return tuple(qvec(x)[:-1])


def from_chart(y, n: int) -> tuple:
    y = qvec(y)
    return y + (Fraction(n + 1) - sum(y),)


def k_point(k, n: int) -> tuple:
    """Normalized point (n+1) k / sum(k) in the hypersimplex."""
    k = _as_k(k)
    return tuple(Fraction((n + 1) * x, k.total) for x in k.k)


def gm_linearization(k, n: int) -> LinearizationClass:
    """The linearization p = k, d = sum(k)/(n+1), in chart coordinates."""
    k = _as_k(k)
    return LinearizationClass(tuple(k.k[:-1]), Fraction(k.total, n + 1))


@dataclass(frozen=True)
class HypersimplexModel:
    n: int
    m: int
    vertices: tuple  # 0/1 vectors in Z^m
    walls: tuple  # homogeneous hyperplanes in R^m

    @property
    def polytope(self) -> QPolytope:
        return QPolytope(self.vertices)

    @property
    def chart_polytope(self) -> QPolytope:
        return QPolytope(tuple(to_chart(v) for v in self.vertices))

    def contains(self, x) -> bool:
        x = qvec(x)
        return len(x) == self.m and sum(x) == self.n + 1 and all(0 <= t <= 1 for t in x)


def hypersimplex(n: int, m: int) -> HypersimplexModel:
    _check_nm(n, m)
    verts = tuple(tuple(int(i in I) for i in range(m)) for I in subsets(n, m))
    return HypersimplexModel(n, m, verts, config_walls(n, m))


def config_walls(n: int, m: int) -> tuple:
    """Hyperplanes (n+1) sum_I x_i = (d_W + 1) sum x_i cutting the interior of the hypersimplex.

    Each is where a d_W-dimensional subspace containing exactly the points in
    I turns strictly semistable. Hyperplanes are homogeneous, in R^m.
    """
    _check_nm(n, m)
    verts = [tuple(int(i in I) for i in range(m)) for I in subsets(n, m)]
    found = set()
    for size in range(1, m):
        for I in itertools.combinations(range(m), size):
            for dW in range(n):
                a = tuple((n + 1) * int(i in I) - (dW + 1) for i in range(m))
                if all(x == 0 for x in a):
                    continue
                h = QHyperplane(a, 0)
                sides = {h.sign(v) for v in verts}
                if 1 in sides and -1 in sides:
                    found.add(h)
    return tuple(sorted(found, key=QHyperplane.sort_key))


def wall_to_chart(h: QHyperplane, n: int) -> QHyperplane:
    """Restrict a homogeneous hyperplane of R^m to the chart x_m = n+1 - sum(others)."""
    a = h.normal
    last = a[-1]
    return QHyperplane(tuple(x - last for x in a[:-1]), h.offset - last * (n + 1))


def pluecker_coordinates(P: PointConfig) -> dict:
    cols = P.points
    out = {}
    for idx, I in enumerate(subsets(P.n, P.m)):
        out[idx] = linalg.det([[cols[j][r] for j in I] for r in range(P.n + 1)])
    return out


def map_config_to_pluecker(P: PointConfig) -> ProjPoint:
    """Maximal minors of the (n+1) x m matrix whose columns are the points."""
    if not P.spans():
        raise NotSpanning("the points do not span P^n")
    check_pluecker(P.n, P.m)
    return ProjPoint({i: v for i, v in pluecker_coordinates(P).items() if v != 0})


def classify_via_pluecker(P: PointConfig, k) -> Stability:
    k = _as_k(k)
    return classify(map_config_to_pluecker(P), gm_linearization(k, P.n), gm_chart(P.n, P.m))


@dataclass(frozen=True)
class RegionMatch:
    witness: tuple  # chart coordinates
    chamber: int  # index of the torus-side cell containing the witness
    match: bool


@dataclass(frozen=True)
class CrossCheck:
    n: int
    m: int
    config_walls: tuple  # chart hyperplanes from the subspace criterion
    torus_walls: tuple  # interior wall hyperplanes of the Pluecker torus problem
    walls_match: bool
    regions: tuple
    chambers_match: bool

    @property
    def match(self) -> bool:
        return self.walls_match and self.chambers_match


def gm_crosscheck(n: int, m: int) -> CrossCheck:
    """Compare the hypersimplex wall system with the torus chamber complex on Pluecker weights.

    Every region of the configuration-side arrangement must sit inside exactly
    one torus chamber, with distinct regions in distinct chambers.
    """
    _check_nm(n, m)
    check_pluecker(n, m)
    if n + 1 == m:
        raise ValueError("the hypersimplex is a single point when n+1 = m")
    W = gm_chart(n, m)
    cx = chamber_complex(W)
    cw = tuple(sorted({wall_to_chart(h, n) for h in config_walls(n, m)}, key=QHyperplane.sort_key))
    tw = tuple(w.hyperplane for w in cx.walls if not w.is_boundary)
    rc = enumerate_regions(list(cw), W.slice)
    rows = []
    seen = set()
    for r in rc.regions:
        k = cx.locate(r.witness)
        ok = cx.cells[k].kind.value == "Chamber" and k not in seen
        seen.add(k)
        rows.append(RegionMatch(r.witness, k, ok))
    chambers_ok = all(r.match for r in rows) and seen == set(cx.chamber_indices)
    return CrossCheck(n, m, cw, tw, set(cw) == set(tw), tuple(rows), chambers_ok)
