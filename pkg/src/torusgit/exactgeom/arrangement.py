"""Faces and regions of a hyperplane arrangement inside a bounding polytope.

Faces are built bottom-up. Vertices are intersections of ``n`` independent
hyperplanes that lie in the closed bound. A ``k``-face is reached from each
``(k-1)``-face ``G`` on its boundary: for every ``k``-flat ``L`` through the
flat of ``G``, step from the witness of ``G`` along a direction of ``L`` that
leaves the flat of ``G``, by half the distance to the first hyperplane
crossed. The step lands in the relative interior of the new face, so every
witness is an exact rational point certified by its sign vector.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from ..errors import DimensionMismatch, NotFullDimensional
from . import linalg
from .core import QHyperplane, QPolytope, QVector


@dataclass(frozen=True)
class Face:
    dim: int
    signs: tuple  # over FaceComplex.hyperplanes
    witness: QVector

    @property
    def zeros(self) -> tuple[int, ...]:
        return tuple(i for i, s in enumerate(self.signs) if s == 0)


@dataclass(frozen=True)
class FaceComplex:
    """All relatively open faces of an arrangement restricted to a closed polytope."""

    dim: int
    hyperplanes: tuple  # canonical, sorted; bound facets included
    inside: dict  # hyperplane index -> sign of the bound interior, for facet hyperplanes
    faces: tuple
    incidences: tuple  # (lower face index, upper face index), dimensions differ by one

    def of_dim(self, k: int) -> list[int]:
        return [i for i, f in enumerate(self.faces) if f.dim == k]

    def signs_at(self, p) -> tuple[int, ...]:
        return sign_vector(self.hyperplanes, p)

    def upper(self, i: int) -> list[int]:
        if not hasattr(self, "_up"):
            up: dict[int, list[int]] = {}
            for a, b in self.incidences:
                up.setdefault(a, []).append(b)
            object.__setattr__(self, "_up", up)
        return self._up.get(i, [])


@dataclass(frozen=True)
class Region:
    signs: tuple  # over RegionComplex.hyperplanes, in input order
    witness: QVector


@dataclass(frozen=True)
class RegionComplex:
    hyperplanes: tuple
    regions: tuple
    adjacency: tuple  # (i, j, facet witness) with i < j

    def neighbors(self, i: int) -> list[int]:
        out = [b for a, b, _ in self.adjacency if a == i]
        out += [a for a, b, _ in self.adjacency if b == i]
        return sorted(out)


def _int_form(h: QHyperplane) -> tuple[tuple[int, ...], int, int]:
    d = h.offset.denominator
    return tuple(a * d for a in h.normal), h.offset.numerator, d


def sign_vector(hyperplanes: Sequence[QHyperplane], p) -> tuple[int, ...]:
    nums, den = linalg.common_denominator(p)
    out = []
    for h in hyperplanes:
        a, b, _ = _int_form(h)
        v = sum(x * y for x, y in zip(a, nums)) - b * den
        out.append((v > 0) - (v < 0))
    return tuple(out)


class _Signer:
    """Integer-only sign evaluation against a fixed hyperplane list."""

    def __init__(self, hyperplanes):
        self.forms = [_int_form(h) for h in hyperplanes]

    def __call__(self, p) -> tuple[int, ...]:
        nums, den = linalg.common_denominator(p)
        out = []
        for a, b, _ in self.forms:
            v = sum(x * y for x, y in zip(a, nums)) - b * den
            out.append((v > 0) - (v < 0))
        return tuple(out)


def _signs_int(forms, nums, den) -> tuple[int, ...]:
    out = []
    for a, b in forms:
        v = sum(x * y for x, y in zip(a, nums)) - b * den
        out.append((v > 0) - (v < 0))
    return tuple(out)


def _bound_facets(bound: QPolytope) -> dict[QHyperplane, int]:
    out = {}
    for f in bound.facets:
        h = f.hyperplane
        out[h] = -1 if tuple(f.a) == tuple(h.normal) else 1
    return out


def enumerate_faces(hs: Sequence[QHyperplane], bound: QPolytope) -> FaceComplex:
    n = bound.dim
    for h in hs:
        if h.dim != n:
            raise DimensionMismatch("hyperplane and bound dimensions differ")
    if not bound.full_dimensional:
        raise NotFullDimensional("bounding polytope must be full-dimensional")
    facet_side = _bound_facets(bound)
    H = tuple(sorted(set(hs) | set(facet_side), key=QHyperplane.sort_key))
    inside = {i: facet_side[h] for i, h in enumerate(H) if h in facet_side}
    signer = _Signer(H)
    normals = [h.normal for h in H]

    def in_bound(signs) -> bool:
        return all(signs[i] in (0, s) for i, s in inside.items())

    # vertices
    found: dict[tuple, Face] = {}
    order: list[tuple] = []
    forms = [(a, b) for a, b, _ in signer.forms]
    for combo in itertools.combinations(range(len(H)), n):
        # Cramer's rule over the integer forms
        A = [forms[i][0] for i in combo]
        D = linalg.int_det(A)
        if D == 0:
            continue
        rhs = [forms[i][1] for i in combo]
        nums = [linalg.int_det([row[:j] + (r,) + row[j + 1:] for row, r in zip(A, rhs)]) for j in range(n)]
        if D < 0:
            D, nums = -D, [-x for x in nums]
        s = _signs_int(forms, nums, D)
        if s in found or not in_bound(s):
            continue
        found[s] = Face(0, s, tuple(Fraction(x, D) for x in nums))
        order.append(s)
    layers = [sorted(order, key=lambda s: found[s].witness)]
    links: set[tuple[tuple, tuple]] = set()
    flats: dict[tuple, list] = {}

    for k in range(1, n + 1):
        new: list[tuple] = []
        for gs in layers[-1]:
            G = found[gs]
            gn, gden = linalg.common_denominator(G.witness)
            Z = G.zeros
            # numerators of the hyperplane values at the witness (common positive scale)
            gvals = [sum(x * y for x, y in zip(a, gn)) - b * gden for a, b in forms]
            key = (Z, k)
            if key not in flats:
                flats[key] = []
                for _, d in _flats_with_direction(Z, normals, n, k):
                    d = linalg.primitive_integer(d)
                    sl = [sum(x * y for x, y in zip(a, d)) for a, _ in forms]
                    flats[key].append((d, sl))
            for d, sl in flats[key]:
                for dd, slopes in ((d, sl), (tuple(-x for x in d), [-x for x in sl])):
                    if any(i in inside and slopes[i] != 0 and (slopes[i] > 0) - (slopes[i] < 0) != inside[i]
                           for i in Z):
                        continue
                    # smallest crossing parameter -v/s, kept as an integer fraction N/D
                    N = D = None
                    for v, sl in zip(gvals, slopes):
                        if v != 0 and sl != 0 and (v > 0) != (sl > 0):
                            num, den = (-v, sl) if sl > 0 else (v, -sl)
                            if N is None or num * D < N * den:
                                N, D = num, den
                    if N is None:
                        N, D = 2 * gden, 1
                    qn = tuple(2 * D * x + N * y for x, y in zip(gn, dd))
                    qden = 2 * D * gden
                    s = _signs_int(forms, qn, qden)
                    if not in_bound(s):
                        continue
                    if s not in found:
                        found[s] = Face(k, s, tuple(Fraction(x, qden) for x in qn))
                        new.append(s)
                    links.add((gs, s))
        layers.append(sorted(new, key=lambda s: found[s].witness))

    ordered = [s for layer in layers for s in layer]
    index = {s: i for i, s in enumerate(ordered)}
    faces = tuple(found[s] for s in ordered)
    inc = tuple(sorted((index[a], index[b]) for a, b in links))
    return FaceComplex(n, H, inside, faces, inc)


def _flats_with_direction(Z, normals, n, k):
    """k-flats containing the flat cut out by ``Z`` (which has dimension k-1).

    Yields (closure, d): ``closure`` are the members of Z containing the flat,
    ``d`` a direction inside it that leaves the smaller flat.
    """
    seen = set()
    for combo in itertools.combinations(Z, n - k):
        rows = [normals[i] for i in combo]
        if linalg.rank(rows) != n - k:
            continue
        closure = tuple(i for i in Z if i in combo or linalg.rank(rows + [normals[i]]) == n - k)
        if closure in seen:
            continue
        seen.add(closure)
        others = [i for i in Z if i not in closure]
        if k == n and len(others) == 1 and not closure:
            yield closure, tuple(Fraction(x) for x in normals[others[0]])
            continue
        basis = linalg.nullspace([normals[i] for i in closure], n)
        for b in basis:
            if any(linalg.dot(normals[i], b) != 0 for i in others):
                yield closure, b
                break


def enumerate_regions(hs: Sequence[QHyperplane], bound: QPolytope) -> RegionComplex:
    """Open regions of ``bound`` minus the hyperplanes, with exact witnesses and adjacency."""
    fc = enumerate_faces(hs, bound)
    n = fc.dim
    top = fc.of_dim(n)
    pos = {fi: r for r, fi in enumerate(top)}
    regions = tuple(Region(sign_vector(hs, fc.faces[fi].witness), fc.faces[fi].witness) for fi in top)
    adjacency = []
    for fi in fc.of_dim(n - 1):
        ups = sorted(pos[u] for u in fc.upper(fi) if u in pos)
        if len(ups) == 2:
            adjacency.append((ups[0], ups[1], fc.faces[fi].witness))
    adjacency.sort(key=lambda t: (t[0], t[1], t[2]))
    return RegionComplex(tuple(hs), regions, tuple(adjacency))
