"""Walls, chambers, cells and GIT classes of a torus acting on P(V).

A linearization with normalized point p lies in the GIT class determined by
the family of state sets S with p in conv(S). The family is upward closed, so
it is stored through its minimal members, which are affinely independent
simplices of weights. Whether a simplex T contains p depends only on the
signs of p against hyperplanes spanned by weights, so once a sign table is
built the family at any point of the arrangement is read off from its sign
vector without any linear algebra.
"""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from ..errors import ImproperWallError, IneffectiveLinearization, DimensionMismatch
from ..exactgeom import (FaceComplex, QHyperplane, enumerate_faces, linalg, sign_vector)
from .model import LinearizationClass, StateSet, WeightConfiguration


def to_mask(S) -> int:
    out = 0
    for i in S:
        out |= 1 << int(i)
    return out


def from_mask(mask: int) -> StateSet:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return frozenset(out)


def mask_key(mask: int) -> tuple:
    S = from_mask(mask)
    return (len(S), tuple(sorted(S)))


def _minimal(masks) -> tuple:
    masks = sorted(set(masks), key=mask_key)
    keep: list[int] = []
    for t in masks:
        if not any(k & t == k for k in keep):
            keep.append(t)
    return tuple(keep)


@dataclass(frozen=True)
class Signature:
    """Upward-closed family of state sets, stored by its minimal members."""

    m: int
    minimal: tuple

    def __contains__(self, S) -> bool:
        mask = S if isinstance(S, int) else to_mask(S)
        return any(t & mask == t for t in self.minimal)

    @property
    def empty(self) -> bool:
        return not self.minimal

    def masks(self) -> list[int]:
        return [s for s in range(1, 1 << self.m) if s in self]

    def state_sets(self) -> tuple:
        return tuple(sorted((from_mask(s) for s in self.masks()), key=lambda S: (len(S), sorted(S))))

    def minimal_sets(self) -> tuple:
        return tuple(from_mask(t) for t in self.minimal)


@dataclass(frozen=True)
class WallDesc:
    """A weight-spanned hyperplane with the weights lying on it.

    The wall itself is conv(state_set), a degenerate state polytope; every
    degenerate state set spanning a hyperplane sits inside one of these.
    """

    hyperplane: QHyperplane
    state_set: StateSet
    is_boundary: bool

    @property
    def pieces(self) -> tuple:
        return (self.state_set,)


class CellKind(str, enum.Enum):
    CHAMBER = "Chamber"
    WALL_CELL = "WallCell"


@dataclass(frozen=True)
class CellDesc:
    kind: CellKind
    witness: LinearizationClass
    signature: Signature
    walls: tuple  # indices into the wall list of walls containing the cell
    dim: int
    on_boundary: bool
    faces: tuple  # arrangement face indices making up the cell

    @property
    def point(self) -> tuple:
        return self.witness.normalized


def _hyperplanes(W: WeightConfiguration) -> list[QHyperplane]:
    pts = W.slice.distinct
    seen = set()
    for combo in itertools.combinations(pts, W.n):
        h = QHyperplane.through_points(combo)
        if h is not None:
            seen.add(h)
    return sorted(seen, key=QHyperplane.sort_key)


@lru_cache(maxsize=64)
def walls(W: WeightConfiguration) -> tuple:
    """One wall per hyperplane spanned by weights, in canonical hyperplane order."""
    if not W.spanning:
        raise ImproperWallError("weights do not affinely span: every class lies on an improper wall")
    out = []
    for h in _hyperplanes(W):
        sides = [h.sign(w) for w in W.qweights]
        on = frozenset(i for i, s in enumerate(sides) if s == 0)
        out.append(WallDesc(h, on, not (1 in sides and -1 in sides)))
    return tuple(out)


class SimplexTable:
    """Sign conditions deciding p in conv(T) for every affinely independent T.

    For T extended to an affine basis B, the hyperplanes spanned by subsets
    of B cut out aff(T), and for each vertex v of T the hyperplane through
    T - v (and not v) measures the barycentric coordinate of v. So p lies in
    conv(T) iff p is on every wall hyperplane containing T and, for each v,
    on the closed side of that hyperplane containing v.
    """

    def __init__(self, W: WeightConfiguration, hyperplanes):
        self.W = W
        self.H = tuple(hyperplanes)
        m, n = W.m, W.n
        wsign = [[h.sign(w) for w in W.qweights] for h in self.H]
        self.pos = tuple(sum(1 << i for i in range(m) if row[i] > 0) for row in wsign)
        self.neg = tuple(sum(1 << i for i in range(m) if row[i] < 0) for row in wsign)
        zero = [sum(1 << i for i in range(m) if row[i] == 0) for row in wsign]
        self.simplices = []
        for k in range(1, n + 2):
            for T in itertools.combinations(range(m), k):
                pts = [W.qweights[i] for i in T]
                if k > 1 and linalg.rank([linalg.sub(p, pts[0]) for p in pts[1:]]) != k - 1:
                    continue
                tm = to_mask(T)
                zeros = tuple(j for j in range(len(self.H)) if zero[j] & tm == tm)
                sided = []
                if k > 1:
                    for v in T:
                        rest = tm & ~(1 << v)
                        for j in range(len(self.H)):
                            if zero[j] & rest == rest and wsign[j][v] != 0:
                                sided.append((j, -wsign[j][v]))
                                break
                        else:
                            raise ImproperWallError("weights do not affinely span")
                self.simplices.append((tm, zeros, tuple(sided)))

    def satisfied(self, signs) -> list[int]:
        out = []
        for tm, zeros, sided in self.simplices:
            if all(signs[j] == 0 for j in zeros) and all(signs[j] != bad for j, bad in sided):
                out.append(tm)
        return out

    def signature(self, signs) -> Signature:
        return Signature(self.W.m, _minimal(self.satisfied(signs)))

    def is_stable(self, mask: int, sig: Signature, signs) -> bool:
        if mask not in sig:
            return False
        return all(mask & self.pos[j] and mask & self.neg[j]
                   for j, s in enumerate(signs) if s == 0)


def signature_direct(point, W: WeightConfiguration) -> Signature:
    """Signature at ``point`` from barycentric coordinates; works for any weights."""
    p = tuple(Fraction(x) for x in point)
    if len(p) != W.n:
        raise DimensionMismatch("point and torus ranks differ")
    found = []
    for k in range(1, W.n + 2):
        for T in itertools.combinations(range(W.m), k):
            pts = [W.qweights[i] for i in T]
            cols = [linalg.sub(q, pts[0]) for q in pts[1:]]
            if k > 1 and linalg.rank(cols) != k - 1:
                continue
            rhs = linalg.sub(p, pts[0])
            if k == 1:
                if all(x == 0 for x in rhs):
                    found.append(to_mask(T))
                continue
            A = [[c[r] for c in cols] for r in range(W.n)]
            x = linalg.solve_any(A, rhs)
            if x is None or any(linalg.dot(row, x) != b for row, b in zip(A, rhs)):
                continue
            if all(c >= 0 for c in x) and sum(x) <= 1:
                found.append(to_mask(T))
    return Signature(W.m, _minimal(found))


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, a):
        while self.parent[a] != a:
            self.parent[a] = self.parent[self.parent[a]]
            a = self.parent[a]
        return a

    def union(self, a, b):
        a, b = self.find(a), self.find(b)
        if a != b:
            self.parent[max(a, b)] = min(a, b)


class ChamberComplex:
    """The decomposition of the slice polytope into GIT classes.

    Faces of the arrangement of all wall hyperplanes inside the slice are
    grouped by signature; the connected components of each group are the
    cells, and the full-dimensional cells free of degenerate state sets are
    the chambers.
    """

    def __init__(self, W: WeightConfiguration):
        self.W = W
        self.walls = walls(W)
        self.faces: FaceComplex = enumerate_faces([w.hyperplane for w in self.walls], W.slice)
        if self.faces.hyperplanes != tuple(w.hyperplane for w in self.walls):
            raise ArithmeticError("slice facets are not among the wall hyperplanes")
        self.table = SimplexTable(W, self.faces.hyperplanes)
        self.piece_masks = tuple(to_mask(w.state_set) for w in self.walls)
        n = W.n
        fsig = [self.table.signature(f.signs) for f in self.faces.faces]
        self.face_signatures = tuple(fsig)

        uf = _UnionFind(len(fsig))
        for a, b in self.faces.incidences:
            if fsig[a] == fsig[b]:
                uf.union(a, b)
        comps: dict[int, list[int]] = {}
        for i in range(len(fsig)):
            comps.setdefault(uf.find(i), []).append(i)

        cells = []
        for members in comps.values():
            top = max(self.faces.faces[i].dim for i in members)
            rep = min((i for i in members if self.faces.faces[i].dim == top))
            face = self.faces.faces[rep]
            sig = fsig[rep]
            owning = self.walls_at(face.signs, sig)
            chamber = top == n and all(bin(t).count("1") == n + 1 for t in sig.minimal)
            if top == n and not chamber:
                raise ArithmeticError("full-dimensional class contains a degenerate state set")
            boundary = any(face.signs[j] == 0 for j in self.faces.inside)
            cells.append(CellDesc(
                CellKind.CHAMBER if chamber else CellKind.WALL_CELL,
                LinearizationClass.at(face.witness), sig, owning, top, boundary, tuple(sorted(members)),
            ))
        cells.sort(key=lambda c: (c.kind is not CellKind.CHAMBER, -c.dim, c.point))
        self.cells = tuple(cells)
        self.face_cell = {f: k for k, c in enumerate(self.cells) for f in c.faces}
        self.chamber_indices = tuple(k for k, c in enumerate(self.cells) if c.kind is CellKind.CHAMBER)
        self._check_region_merge()

    def walls_at(self, signs, sig: Signature) -> tuple:
        return tuple(j for j, pm in enumerate(self.piece_masks)
                     if signs[j] == 0 and any(t & pm == t for t in sig.minimal))

    def _check_region_merge(self) -> None:
        """Chambers again, as regions merged across facets covered by no wall."""
        n = self.W.n
        top = self.faces.of_dim(n)
        pos = {f: r for r, f in enumerate(top)}
        uf = _UnionFind(len(top))
        for g in self.faces.of_dim(n - 1):
            ups = [pos[u] for u in self.faces.upper(g) if u in pos]
            if len(ups) != 2:
                continue
            G = self.faces.faces[g]
            if not self.walls_at(G.signs, self.face_signatures[g]):
                uf.union(*ups)
        merged = {}
        for f in top:
            merged.setdefault(uf.find(pos[f]), set()).add(f)
        expect = sorted(sorted(v) for v in merged.values())
        got = sorted(sorted(f for f in self.cells[k].faces if f in pos) for k in self.chamber_indices)
        if expect != got:
            raise ArithmeticError("region merge disagrees with the signature grouping")

    @property
    def chambers(self) -> tuple:
        return tuple(self.cells[k] for k in self.chamber_indices)

    def signs_at(self, point) -> tuple:
        return sign_vector(self.faces.hyperplanes, point)

    def _inside(self, signs) -> bool:
        return all(signs[j] in (0, s) for j, s in self.faces.inside.items())

    def signature_at(self, point) -> Signature:
        signs = self.signs_at(point)
        if not self._inside(signs):
            raise IneffectiveLinearization("normalized linearization lies outside the slice polytope")
        return self.table.signature(signs)

    def locate(self, point) -> int:
        """Index of the cell containing ``point``."""
        signs = self.signs_at(point)
        if not self._inside(signs):
            raise IneffectiveLinearization("normalized linearization lies outside the slice polytope")
        for i, f in enumerate(self.faces.faces):
            if f.signs == signs:
                return self.face_cell[i]
        raise ArithmeticError("point matches no arrangement face")

    def semistable_family(self, point) -> frozenset:
        return frozenset(self.signature_at(point).masks())

    def stable_family(self, point) -> frozenset:
        signs = self.signs_at(point)
        sig = self.signature_at(point)
        return frozenset(s for s in sig.masks() if self.table.is_stable(s, sig, signs))

    def is_stable(self, S, point) -> bool:
        signs = self.signs_at(point)
        return self.table.is_stable(to_mask(S), self.table.signature(signs), signs)


@lru_cache(maxsize=64)
def chamber_complex(W: WeightConfiguration) -> ChamberComplex:
    return ChamberComplex(W)


def chambers(W: WeightConfiguration) -> tuple:
    return chamber_complex(W).chambers


def cells(W: WeightConfiguration) -> tuple:
    return chamber_complex(W).cells


@lru_cache(maxsize=64)
def _table(W: WeightConfiguration) -> SimplexTable:
    return SimplexTable(W, [w.hyperplane for w in walls(W)])


def git_class(L: LinearizationClass, W: WeightConfiguration) -> Signature:
    """Canonical semistable family of ``L``; equal families mean equal GIT classes."""
    if len(L.p) != W.n:
        raise DimensionMismatch("linearization and torus ranks differ")
    p = L.normalized
    if not W.spanning:
        sig = signature_direct(p, W)
        if sig.empty:
            raise IneffectiveLinearization("normalized linearization lies outside the slice polytope")
        return sig
    t = _table(W)
    signs = sign_vector(t.H, p)
    sig = t.signature(signs)
    if sig.empty:
        raise IneffectiveLinearization("normalized linearization lies outside the slice polytope")
    return sig
