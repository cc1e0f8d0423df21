"""Value types for a torus acting linearly on projective space."""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import gcd
from typing import Iterable, Mapping

from ..errors import DimensionMismatch
from ..exactgeom import GramForm, QPolytope, QVector, affine_dim, qvec, to_q
from ..exactgeom import linalg

StateSet = frozenset  # frozenset[int] of weight indices


class Stability(str, enum.Enum):
    STABLE = "Stable"
    STRICTLY_SEMISTABLE = "StrictlySemistable"
    UNSTABLE = "Unstable"


@dataclass(frozen=True)
class WeightConfiguration:
    """Integer characters of the torus on the coordinates of V, in a fixed order.

    Duplicated characters are distinct coordinates. ``gram`` is the norm used
    on one-parameter subgroups; distances between characters use its inverse.
    """

    weights: tuple
    labels: tuple | None = None
    gram: GramForm | None = None

    def __post_init__(self):
        ws = tuple(tuple(int(x) for x in w) for w in self.weights)
        if not ws:
            raise ValueError("a weight configuration needs at least one weight")
        n = len(ws[0])
        if n == 0 or any(len(w) != n for w in ws):
            raise DimensionMismatch("all weights must have the same positive dimension")
        for w, raw in zip(ws, self.weights):
            if any(Fraction(x) != y for x, y in zip(raw, w)):
                raise ValueError("weights must be integral")
        object.__setattr__(self, "weights", ws)
        if self.labels is not None:
            labels = tuple(str(x) for x in self.labels)
            if len(labels) != len(ws):
                raise ValueError("one label per weight")
            object.__setattr__(self, "labels", labels)
        gram = self.gram if self.gram is not None else GramForm.identity(n)
        if gram.dim != n:
            raise DimensionMismatch("Gram form dimension differs from torus rank")
        object.__setattr__(self, "gram", gram)

    @property
    def n(self) -> int:
        return len(self.weights[0])

    @property
    def m(self) -> int:
        return len(self.weights)

    @cached_property
    def qweights(self) -> tuple:
        return tuple(qvec(w) for w in self.weights)

    @property
    def char_form(self) -> GramForm:
        return self.gram.inverse

    @cached_property
    def spanning(self) -> bool:
        return affine_dim(self.weights) == self.n

    @cached_property
    def slice(self) -> QPolytope:
        return QPolytope(self.qweights)

    def subset(self, S: Iterable[int]) -> list:
        return [self.qweights[i] for i in sorted(S)]

    def polytope(self, S: Iterable[int]) -> QPolytope:
        return QPolytope(tuple(self.subset(S)))

    def check_state_set(self, S) -> StateSet:
        S = frozenset(int(i) for i in S)
        if not S:
            raise ValueError("state sets are nonempty")
        if min(S) < 0 or max(S) >= self.m:
            raise ValueError(f"state set {sorted(S)} has indices outside 0..{self.m - 1}")
        return S


@dataclass(frozen=True)
class ProjPoint:
    """A point of P(V) given by its nonzero coordinates, keyed by weight index."""

    entries: tuple

    def __init__(self, entries: Mapping | Iterable):
        items = entries.items() if isinstance(entries, Mapping) else entries
        pairs = tuple(sorted((int(k), to_q(v)) for k, v in items))
        pairs = tuple((k, v) for k, v in pairs if v != 0)
        if not pairs:
            raise ValueError("a projective point needs a nonzero coordinate")
        object.__setattr__(self, "entries", pairs)

    @property
    def support(self) -> StateSet:
        return frozenset(k for k, _ in self.entries)

    def coordinate(self, i: int) -> Fraction:
        return dict(self.entries).get(i, Fraction(0))


@dataclass(frozen=True)
class LinearizationClass:
    """Linearization (p, d): character coordinate ``p`` at ample degree ``d > 0``."""

    p: tuple
    d: Fraction = Fraction(1)

    def __post_init__(self):
        object.__setattr__(self, "p", qvec(self.p))
        object.__setattr__(self, "d", to_q(self.d))
        if self.d <= 0:
            raise ValueError("the ample degree d must be positive")

    @classmethod
    def at(cls, point) -> "LinearizationClass":
        return cls(qvec(point), Fraction(1))

    @property
    def normalized(self) -> QVector:
        return tuple(x / self.d for x in self.p)

    def __add__(self, other: "LinearizationClass") -> "LinearizationClass":
        return LinearizationClass(linalg.add(self.p, other.p), self.d + other.d)

    def scaled(self, alpha) -> "LinearizationClass":
        return LinearizationClass(linalg.scale(to_q(alpha), self.p), to_q(alpha) * self.d)


@dataclass(frozen=True)
class OneParamSubgroup:
    """Primitive nonzero cocharacter lambda in Z^n."""

    lam: tuple

    def __post_init__(self):
        lam = tuple(int(x) for x in self.lam)
        if all(x == 0 for x in lam):
            raise ValueError("one-parameter subgroups are nonzero")
        g = 0
        for x in lam:
            g = gcd(g, x)
        if g != 1:
            raise ValueError(f"{lam} is not primitive")
        object.__setattr__(self, "lam", lam)

    @classmethod
    def from_direction(cls, v) -> "OneParamSubgroup":
        return cls(linalg.primitive_integer(v))

    def pairing(self, chi) -> Fraction:
        return linalg.dot(self.lam, chi)

    def __neg__(self):
        return OneParamSubgroup(tuple(-x for x in self.lam))
