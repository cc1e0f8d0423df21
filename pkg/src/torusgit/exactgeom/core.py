"""Exact rational value types: vectors, Gram forms, polytopes, hyperplanes, signed distances."""
from __future__ import annotations

import enum
import re
import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

from ..errors import DimensionMismatch
from . import linalg

Rational = Fraction
_FRACTION = re.compile(r"^[+-]?[0-9]+(/[0-9]+)?$")
QVector = tuple  # tuple[Fraction, ...]


def to_q(x) -> Fraction:
    """Parse an int, ``Fraction`` or exact string ``"a/b"`` into a ``Fraction``.

    Floats are rejected: every quantity in the engine is exact.
    """
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if isinstance(x, str):
        if not _FRACTION.match(x.strip()):
            raise ValueError(f"{x!r} is not an integer or a fraction a/b")
        return Fraction(x.strip())
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


def qvec(xs: Iterable) -> QVector:
    return tuple(to_q(x) for x in xs)


def fmt_q(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


class Membership(str, enum.Enum):
    INTERIOR = "Interior"
    BOUNDARY = "Boundary"
    OUTSIDE = "Outside"


@dataclass(frozen=True)
class GramForm:
    """Symmetric positive-definite rational form; ``GramForm.identity(n)`` by default."""

    matrix: tuple

    def __post_init__(self):
        M = tuple(tuple(to_q(x) for x in row) for row in self.matrix)
        object.__setattr__(self, "matrix", M)
        n = len(M)
        if n == 0 or any(len(row) != n for row in M):
            raise ValueError("Gram matrix must be square and nonempty")
        if any(M[i][j] != M[j][i] for i in range(n) for j in range(n)):
            raise ValueError("Gram matrix must be symmetric")
        for k in range(1, n + 1):
            if linalg.det([row[:k] for row in M[:k]]) <= 0:
                raise ValueError("Gram matrix must be positive definite")

    @classmethod
    def identity(cls, n: int) -> "GramForm":
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @property
    def dim(self) -> int:
        return len(self.matrix)

    @cached_property
    def is_identity(self) -> bool:
        return all(self.matrix[i][j] == int(i == j) for i in range(self.dim) for j in range(self.dim))

    def inner(self, u, v) -> Fraction:
        if self.is_identity:
            return linalg.dot(u, v)
        return linalg.dot(u, linalg.mat_vec(self.matrix, v))

    def norm2(self, u) -> Fraction:
        return self.inner(u, u)

    @cached_property
    def inverse(self) -> "GramForm":
        if self.is_identity:
            return self
        return GramForm(tuple(tuple(r) for r in linalg.inverse(self.matrix)))

    def apply(self, v) -> QVector:
        return tuple(linalg.mat_vec(self.matrix, v))


@dataclass(frozen=True)
class QHyperplane:
    """Affine hyperplane ``normal . x = offset``.

    The constructor rescales to a primitive integer normal whose first nonzero
    entry is positive, so dataclass equality is equality of point sets.
    """

    normal: tuple
    offset: Fraction

    def __post_init__(self):
        a = [to_q(x) for x in self.normal]
        b = to_q(self.offset)
        if not a or all(x == 0 for x in a):
            raise ValueError("hyperplane normal must be nonzero")
        prim = linalg.primitive_integer(a)
        k = next(i for i, x in enumerate(a) if x != 0)
        if prim[k] < 0:
            prim = tuple(-x for x in prim)
        object.__setattr__(self, "normal", prim)
        object.__setattr__(self, "offset", b * prim[k] / a[k])

    @classmethod
    def from_equation(cls, normal, offset) -> "QHyperplane":
        return cls(tuple(normal), offset)

    @classmethod
    def through_points(cls, points: Sequence[QVector]) -> "QHyperplane | None":
        """Hyperplane spanned by ``n`` affinely independent points in Q^n, else None."""
        p0 = points[0]
        diffs = [linalg.sub(p, p0) for p in points[1:]]
        n = len(p0)
        ns = linalg.nullspace(diffs, n) if diffs else linalg.nullspace([], n)
        if len(ns) != 1:
            return None
        return cls.from_equation(ns[0], linalg.dot(ns[0], p0))

    @property
    def dim(self) -> int:
        return len(self.normal)

    def value(self, p) -> Fraction:
        return linalg.dot(self.normal, p) - self.offset

    def sign(self, p) -> int:
        v = self.value(p)
        return (v > 0) - (v < 0)

    def contains(self, p) -> bool:
        return self.value(p) == 0

    def sort_key(self):
        return (self.normal, self.offset)


@dataclass(frozen=True)
class SignedDistance:
    """An exact signed length ``sign * sqrt(sq)``."""

    sign: int
    sq: Fraction

    def __post_init__(self):
        object.__setattr__(self, "sq", Fraction(self.sq))
        if self.sign not in (-1, 0, 1) or self.sq < 0 or ((self.sign == 0) != (self.sq == 0)):
            raise ValueError(f"inconsistent signed distance ({self.sign}, {self.sq})")

    @classmethod
    def from_rational(cls, x) -> "SignedDistance":
        x = Fraction(x)
        return cls((x > 0) - (x < 0), x * x)

    def scaled(self, alpha) -> "SignedDistance":
        alpha = Fraction(alpha)
        if alpha < 0:
            raise ValueError("only nonnegative scaling is supported")
        if alpha == 0:
            return SignedDistance(0, 0)
        return SignedDistance(self.sign, self.sq * alpha * alpha)

    def __neg__(self):
        return SignedDistance(-self.sign, self.sq)

    def _key(self):
        return (self.sign, self.sign * self.sq)

    def __lt__(self, other):
        return self._key() < other._key()

    def __le__(self, other):
        return self._key() <= other._key()

    def __gt__(self, other):
        return self._key() > other._key()

    def __ge__(self, other):
        return self._key() >= other._key()


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def _sign_rat_plus_root(r: Fraction, s: int, D: Fraction) -> int:
    """Sign of ``r + s*sqrt(D)`` with D >= 0."""
    if s == 0 or D == 0:
        return _sign(r)
    if r == 0 or _sign(r) == s:
        return s
    # opposite signs: compare r^2 with D
    return _sign(r) * _sign(r * r - D)


def sign_of_sum(terms: Sequence[SignedDistance]) -> int:
    """Exact sign of ``sum(t.sign * sqrt(t.sq))`` for up to three terms."""
    ts = [t for t in terms if t.sign != 0]
    if not ts:
        return 0
    if len(ts) == 1:
        return ts[0].sign
    if len(ts) == 2:
        a, b = ts
        if a.sign == b.sign:
            return a.sign
        return a.sign * _sign(a.sq - b.sq)
    if len(ts) == 3:
        a, b, c = ts
        u = sign_of_sum([a, b])
        if u == 0:
            return c.sign
        if u != c.sign:
            # compare |a+b| with |c|: (a+b)^2 = A + B + 2 s sqrt(AB) versus C
            s = a.sign * b.sign
            diff = _sign_rat_plus_root(a.sq + b.sq - c.sq, s, 4 * a.sq * b.sq)
            return u if diff > 0 else (0 if diff == 0 else c.sign)
        return u
    raise NotImplementedError("sign_of_sum supports at most three nonzero terms")


@dataclass(frozen=True)
class Facet:
    """Facet inequality ``a . x <= b`` plus its canonical hyperplane."""

    a: tuple
    b: Fraction
    hyperplane: QHyperplane


@dataclass(frozen=True)
class QPolytope:
    """V-described polytope conv(generators); generators need not be vertices."""

    generators: tuple

    def __post_init__(self):
        gens = tuple(qvec(g) for g in self.generators)
        if not gens:
            raise ValueError("a polytope needs at least one generator")
        n = len(gens[0])
        if n == 0 or any(len(g) != n for g in gens):
            raise DimensionMismatch("all generators must share one positive dimension")
        object.__setattr__(self, "generators", gens)

    @property
    def dim(self) -> int:
        return len(self.generators[0])

    @cached_property
    def distinct(self) -> tuple:
        return tuple(sorted(set(self.generators)))

    @cached_property
    def affine_dim(self) -> int:
        return affine_dim(self.distinct)

    @property
    def full_dimensional(self) -> bool:
        return self.affine_dim == self.dim

    def translated(self, shift) -> "QPolytope":
        return QPolytope(tuple(linalg.add(g, shift) for g in self.generators))

    @property
    def facets(self) -> tuple[Facet, ...]:
        """H-description by brute force over affinely independent generator subsets."""
        if not self.full_dimensional:
            raise ValueError("facets are only defined for full-dimensional polytopes")
        return _facets(self.distinct)

    def contains_vertex_form(self, p) -> bool:
        """Membership using the facet inequalities (full-dimensional only)."""
        return all(linalg.dot(f.a, p) <= f.b for f in self.facets)


@lru_cache(maxsize=4096)
def _facets(pts: tuple) -> tuple[Facet, ...]:
    n = len(pts[0])
    seen: dict[QHyperplane, Facet] = {}
    for combo in itertools.combinations(pts, n):
        h = QHyperplane.through_points(combo)
        if h is None or h in seen:
            continue
        signs = {h.sign(p) for p in pts}
        if 1 in signs and -1 in signs:
            continue
        if 1 in signs:
            a = tuple(-x for x in h.normal)
            b = -h.offset
        else:
            a, b = h.normal, h.offset
        seen[h] = Facet(a, b, h)
    return tuple(seen[h] for h in sorted(seen, key=QHyperplane.sort_key))


def affine_dim(points: Sequence) -> int:
    pts = [qvec(p) for p in points]
    if not pts:
        raise ValueError("affine_dim of an empty set is undefined")
    p0 = pts[0]
    if len(pts) == 1:
        return 0
    return linalg.rank([linalg.sub(p, p0) for p in pts[1:]])
