"""Crossing a codimension-one wall: adjacent chambers, flip data and inclusions."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import BoundaryCell, NotCodimOne, NotInClosure, NotTrulyFaithful
from .exactgeom import affine_dim, linalg
from .gitcore.chambers import (CellDesc, CellKind, ChamberComplex, chamber_complex, from_mask,
                               mask_key, to_mask)
from .gitcore.model import OneParamSubgroup, WeightConfiguration


@dataclass(frozen=True)
class FlipComponent:
    lam: OneParamSubgroup
    c: Fraction
    pivotal_states: tuple  # minimal state sets on the level set whose hull contains the cell
    level_set: frozenset  # all weight indices with pairing c
    plus_weights: tuple
    minus_weights: tuple
    d_plus: int
    d_minus: int
    codim: int


@dataclass(frozen=True)
class InclusionReport:
    """Families at a cell F in the closure of a chamber C.

    ``lost_semistable`` are the state sets semistable at F but not at C;
    ``gained_stable`` are stable at C but not at F.
    """

    cell: CellDesc
    chamber: CellDesc
    ss_inclusion: bool
    stable_inclusion: bool
    lost_semistable: tuple
    gained_stable: tuple


@dataclass(frozen=True)
class WallCrossing:
    cell: CellDesc
    C_plus: CellDesc
    C_minus: CellDesc
    segment: tuple  # (l_minus, l_0, l_plus) normalized points
    components: tuple
    plus_report: InclusionReport
    minus_report: InclusionReport


def _sets(masks) -> tuple:
    return tuple(from_mask(s) for s in sorted(masks, key=mask_key))


def _cx(W, cx) -> ChamberComplex:
    return cx if cx is not None else chamber_complex(W)


def _wall_of(F: CellDesc, cx: ChamberComplex) -> int:
    if F.kind is CellKind.CHAMBER:
        raise NotCodimOne("a chamber has no wall to cross")
    if F.dim != cx.W.n - 1 or len(F.walls) != 1:
        raise NotCodimOne(f"cell of dimension {F.dim} is not an open piece of a single wall")
    j = F.walls[0]
    if cx.walls[j].is_boundary:
        raise BoundaryCell("cell lies on the boundary of the G-ample cone")
    return j


def _toward(cx: ChamberComplex, f, target) -> tuple:
    """A point of the open segment (f, target) near f, before any other hyperplane."""
    d = linalg.sub(target, f)
    tmin = Fraction(1)
    for h in cx.faces.hyperplanes:
        v, s = h.value(f), linalg.dot(h.normal, d)
        if v != 0 and s != 0 and (v > 0) != (s > 0):
            tmin = min(tmin, -v / s)
    return tuple(a + tmin / 2 * b for a, b in zip(f, d))


def _in_closure(F: CellDesc, C: CellDesc, cx: ChamberComplex) -> tuple | None:
    """A point of C on a short segment from F's witness, or None if F is not in C's closure.

    C is convex when it is a chamber, so the witness of F is in the closure of C
    iff points of (f, c] near f lie in C.
    """
    if C.kind is not CellKind.CHAMBER:
        raise ValueError("closure tests are against chambers")
    f, c = F.point, C.point
    if f == c or F == C:
        return c
    q = _toward(cx, f, c)
    return q if cx.locate(q) == cx.cells.index(C) else None


def relevant_chambers(F: CellDesc, W: WeightConfiguration, cx: ChamberComplex | None = None):
    """The chambers on both sides of a codimension-one cell, with a straight crossing segment.

    The step is a quarter of the distance (along the wall normal direction) to
    the nearest other hyperplane, so both ends stay in the adjacent regions.
    """
    cx = _cx(W, cx)
    j = _wall_of(F, cx)
    h = cx.walls[j].hyperplane
    u = W.gram.apply(h.normal)  # the character-space normal direction
    f = F.point
    tmin = None
    for g in cx.faces.hyperplanes:
        if g == h:
            continue
        v, s = g.value(f), linalg.dot(g.normal, u)
        if s != 0:
            t = abs(v / s)
            tmin = t if tmin is None else min(tmin, t)
    eps = tmin / 4 if tmin is not None else Fraction(1, 4)
    lp = tuple(a + eps * b for a, b in zip(f, u))
    lm = tuple(a - eps * b for a, b in zip(f, u))
    cp, cm = cx.cells[cx.locate(lp)], cx.cells[cx.locate(lm)]
    if cp.kind is not CellKind.CHAMBER or cm.kind is not CellKind.CHAMBER:
        raise ArithmeticError("crossing segment does not end in chambers")
    return cp, cm, (lm, f, lp)


def ss_inclusions(F: CellDesc, C: CellDesc, W: WeightConfiguration,
                  cx: ChamberComplex | None = None) -> InclusionReport:
    cx = _cx(W, cx)
    if _in_closure(F, C, cx) is None:
        raise NotInClosure("the cell is not in the closure of the chamber")
    ssF, ssC = cx.semistable_family(F.point), cx.semistable_family(C.point)
    sF, sC = cx.stable_family(F.point), cx.stable_family(C.point)
    return InclusionReport(F, C, ssC <= ssF, sF <= sC, _sets(ssF - ssC), _sets(sC - sF))


def _orbit_dim(S: int, W: WeightConfiguration) -> int:
    """Dimension of the quotient of the stratum of points with state set S."""
    pts = [W.qweights[i] for i in from_mask(S)]
    return (bin(S).count("1") - 1) - affine_dim(pts)


def counted_codim(F: CellDesc, cx: ChamberComplex, level: int) -> int:
    """codim of the pivotal locus in the quotient at F, by dimension counting over state sets.

    The quotient at F has dimension max over stable S of (|S| - 1) - dim conv(S);
    the pivotal locus is the image of points whose state set lies in the level
    set with the cell point in its hull.
    """
    W = cx.W
    stable = cx.stable_family(F.point)
    dim_q = max(_orbit_dim(S, W) for S in stable)
    sig = cx.signature_at(F.point)
    piv = [S for S in range(1, 1 << W.m) if S & level == S and S in sig]
    dim_p = max(_orbit_dim(S, W) for S in piv)
    return dim_q - dim_p


def fiber_dim(F: CellDesc, C: CellDesc, level: int, far: int, cx: ChamberComplex) -> int:
    """Fiber dimension of the quotient map at C over a pivotal point, by counting.

    A point stable at C maps to the pivotal locus iff its state set avoids the
    weights beyond the wall (``far``), so that the subgroup normal to the wall
    contracts it onto its level-set part; the fiber dimension is the family
    dimension of such state sets minus that of their level-set part.
    """
    W = cx.W
    sig = cx.signature_at(F.point)
    best = -1
    for S in cx.stable_family(C.point):
        Z = S & level
        if S & far or not Z or Z not in sig:
            continue
        best = max(best, _orbit_dim(S, W) - _orbit_dim(Z, W))
    return best


def cross_wall(F: CellDesc, C_plus: CellDesc, C_minus: CellDesc, W: WeightConfiguration,
               cx: ChamberComplex | None = None) -> WallCrossing:
    cx = _cx(W, cx)
    j = _wall_of(F, cx)
    h = cx.walls[j].hyperplane
    f = F.point
    qp, qm = _in_closure(F, C_plus, cx), _in_closure(F, C_minus, cx)
    if qp is None or qm is None:
        raise NotInClosure("the cell is not in the closure of both chambers")
    sp, sm = h.sign(qp), h.sign(qm)
    if sp == 0 or sp == sm:
        raise NotCodimOne("the chambers do not lie on opposite sides of the wall")
    lam = OneParamSubgroup(tuple(sp * x for x in h.normal))
    c = lam.pairing(f)
    vals = [lam.pairing(w) - c for w in W.qweights]
    level = frozenset(i for i, v in enumerate(vals) if v == 0)
    lm = to_mask(level)
    sig = cx.signature_at(f)
    pivotal = [t for t in sig.minimal if t & lm == t]
    for t in pivotal:
        if W.n - affine_dim([W.qweights[i] for i in from_mask(t)]) != 1:
            raise NotTrulyFaithful("a pivotal state set has stabilizer of dimension other than one")
    plus = tuple(sorted(v for v in vals if v > 0))
    minus = tuple(sorted(-v for v in vals if v < 0))
    d_plus, d_minus = len(plus) - 1, len(minus) - 1
    pm = to_mask(i for i, v in enumerate(vals) if v > 0)
    mm = to_mask(i for i, v in enumerate(vals) if v < 0)
    if (fiber_dim(F, C_plus, lm, mm, cx), fiber_dim(F, C_minus, lm, pm, cx)) != (d_plus, d_minus):
        raise ArithmeticError("fiber dimensions disagree with the orbit-family count")
    codim = counted_codim(F, cx, lm)
    if d_plus + d_minus + 1 != codim:
        raise ArithmeticError(f"flip identity fails: {d_plus} + {d_minus} + 1 != {codim}")
    comp = FlipComponent(lam, c, _sets(pivotal), level, plus, minus, d_plus, d_minus, codim)

    rp, rm = ss_inclusions(F, C_plus, W, cx), ss_inclusions(F, C_minus, W, cx)
    sF = cx.stable_family(f)
    sP, sM = cx.stable_family(C_plus.point), cx.stable_family(C_minus.point)
    if sF != sP & sM or not (sP | sM) <= cx.semistable_family(f):
        raise ArithmeticError("stable families at the wall do not match the adjacent chambers")
    if not (rp.ss_inclusion and rp.stable_inclusion and rm.ss_inclusion and rm.stable_inclusion):
        raise ArithmeticError("semistable loci are not nested across the wall")
    _, _, seg = relevant_chambers(F, W, cx)
    if linalg.dot(lam.lam, linalg.sub(seg[2], seg[0])) < 0:
        seg = (seg[2], seg[1], seg[0])
    return WallCrossing(F, C_plus, C_minus, seg, (comp,), rp, rm)
