"""SVG pictures of a chamber decomposition, cut along a rational 2-plane.

All geometry is exact; coordinates become decimals only when written out.
"""
from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction

from .errors import SectionMissesCone
from .exactgeom import (Membership, QHyperplane, QPolytope, enumerate_regions, hull_membership,
                        linalg, qvec)
from .gitcore import CellKind, ChamberComplex

SIZE = 480
PAD = 40


@dataclass(frozen=True)
class Section:
    """The affine plane origin + s*u + t*v in slice coordinates."""

    origin: tuple
    u: tuple
    v: tuple

    def __post_init__(self):
        for f in ("origin", "u", "v"):
            object.__setattr__(self, f, qvec(getattr(self, f)))
        if not (len(self.origin) == len(self.u) == len(self.v)):
            raise ValueError("section vectors must share one dimension")
        if linalg.rank([self.u, self.v]) != 2:
            raise ValueError("section directions must be independent")

    @classmethod
    def plane(cls) -> "Section":
        return cls((0, 0), (1, 0), (0, 1))

    def lift(self, st) -> tuple:
        s, t = st
        return tuple(o + s * a + t * b for o, a, b in zip(self.origin, self.u, self.v))

    def pull(self, h: QHyperplane):
        """The trace of h as a line a.(s,t) = b, or None if h is parallel or contains the plane."""
        a = (linalg.dot(h.normal, self.u), linalg.dot(h.normal, self.v))
        b = h.offset - linalg.dot(h.normal, self.origin)
        if a == (0, 0):
            return "contains" if b == 0 else None
        return QHyperplane(a, b)


def _section_polygon(P: QPolytope, sec: Section) -> list:
    """Vertices of P cut by the section, in counterclockwise order, as (s, t) points."""
    lines = []
    for f in P.facets:
        a = (linalg.dot(f.a, sec.u), linalg.dot(f.a, sec.v))
        b = f.b - linalg.dot(f.a, sec.origin)
        lines.append((a, b))
    pts = set()
    for i in range(len(lines)):
        for j in range(i + 1, len(lines)):
            (a1, b1), (a2, b2) = lines[i], lines[j]
            x = linalg.solve([list(a1), list(a2)], [b1, b2])
            if x is not None and all(linalg.dot(a, x) <= b for a, b in lines):
                pts.add(tuple(x))
    if len(pts) < 3 or linalg.rank([linalg.sub(p, min(pts)) for p in pts]) < 2:
        raise SectionMissesCone("the section does not cut the slice polytope in a polygon")
    return _ccw(list(pts))


def _ccw(pts) -> list:
    c = tuple(sum(p[i] for p in pts) / len(pts) for i in range(2))

    def half(p):
        x, y = p[0] - c[0], p[1] - c[1]
        return 0 if (y > 0 or (y == 0 and x > 0)) else 1

    def cmp(p, q):
        hp, hq = half(p), half(q)
        if hp != hq:
            return hp - hq
        cr = (p[0] - c[0]) * (q[1] - c[1]) - (p[1] - c[1]) * (q[0] - c[0])
        return -1 if cr > 0 else (1 if cr < 0 else 0)

    return sorted(pts, key=functools.cmp_to_key(cmp))


def _clip(line: QHyperplane, poly: list):
    """Endpoints of line within the convex polygon, or None."""
    a, b = line.normal, line.offset
    d = (-a[1], a[0])
    p0 = linalg.solve_any([list(a)], [b])
    lo = hi = None
    k = len(poly)
    for i in range(k):
        p, q = poly[i], poly[(i + 1) % k]
        e = linalg.sub(q, p)
        nrm = (e[1], -e[0])  # outward for counterclockwise order
        val = linalg.dot(nrm, linalg.sub(p0, p))
        rate = linalg.dot(nrm, d)
        if rate == 0:
            if val > 0:
                return None
            continue
        t = -val / rate
        if rate > 0:
            hi = t if hi is None else min(hi, t)
        else:
            lo = t if lo is None else max(lo, t)
    if lo is None or hi is None or lo >= hi:
        return None
    return p0, d, lo, hi


def _fmt(x) -> str:
    return f"{float(x):.4f}".rstrip("0").rstrip(".")


class _Canvas:
    def __init__(self, pts):
        xs = [p[0] for p in pts]
        ys = [p[1] for p in pts]
        self.x0, self.y0 = min(xs), min(ys)
        span = max(max(xs) - self.x0, max(ys) - self.y0) or Fraction(1)
        self.k = Fraction(SIZE - 2 * PAD) / span
        self.items: list[str] = []

    def xy(self, p):
        return (PAD + (p[0] - self.x0) * self.k, SIZE - PAD - (p[1] - self.y0) * self.k)

    def add(self, s: str):
        self.items.append(s)

    def render(self, title: str) -> str:
        head = (f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SIZE}" height="{SIZE}" '
                f'viewBox="0 0 {SIZE} {SIZE}">')
        return "\n".join([head, f"<title>{title}</title>", *self.items, "</svg>"]) + "\n"


def plot_section(cx: ChamberComplex, sec: Section | None = None, title: str = "chambers") -> str:
    W = cx.W
    if W.n == 1:
        return plot_strip(cx, title)
    if sec is None:
        if W.n != 2:
            raise ValueError("a section plane is needed when the torus rank exceeds 2")
        sec = Section.plane()
    if len(sec.origin) != W.n:
        raise ValueError("section dimension differs from the torus rank")
    poly = _section_polygon(W.slice, sec)
    cv = _Canvas(poly)
    pts = " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in map(cv.xy, poly))
    cv.add(f'<polygon points="{pts}" fill="#f4f1e8" stroke="#333" stroke-width="1.5"/>')

    traces = []
    for j, w in enumerate(cx.walls):
        line = sec.pull(w.hyperplane)
        if line is None:
            continue
        if line == "contains":
            continue
        traces.append((j, line))
    lines2d = [ln for _, ln in traces]
    drawn = {}
    for j, line in traces:
        for seg in _covered(cx, j, line, lines2d, poly, sec):
            key = tuple(sorted(seg))
            # an interior wall wins over a boundary one drawn along the same segment
            drawn[key] = drawn.get(key, True) and cx.walls[j].is_boundary
    for seg in sorted(drawn):
        (x1, y1), (x2, y2) = cv.xy(seg[0]), cv.xy(seg[1])
        colour = "#999" if drawn[seg] else "#b22"
        cv.add(f'<line x1="{_fmt(x1)}" y1="{_fmt(y1)}" x2="{_fmt(x2)}" y2="{_fmt(y2)}" '
                   f'stroke="{colour}" stroke-width="2"/>')

    bound = QPolytope(tuple(poly))
    rc = enumerate_regions(sorted(set(lines2d), key=QHyperplane.sort_key), bound)
    marked = set()
    for r in rc.regions:
        k = cx.locate(sec.lift(r.witness))
        if k in marked:
            continue
        marked.add(k)
        x, y = cv.xy(r.witness)
        if cx.cells[k].kind is CellKind.CHAMBER:
            cv.add(f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="4" fill="#226"/>')
            cv.add(f'<text x="{_fmt(x + 6)}" y="{_fmt(y - 6)}" font-size="12">C{k}</text>')
        else:
            # the section runs inside a wall here
            cv.add(f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="4" fill="none" stroke="#b22"/>')
            cv.add(f'<text x="{_fmt(x + 6)}" y="{_fmt(y - 6)}" font-size="12">F{k}</text>')
    for k, cell in enumerate(cx.cells):
        if cell.kind is CellKind.WALL_CELL and cell.dim == 0 and W.n == 2 and sec == Section.plane():
            x, y = cv.xy(cell.point)
            cv.add(f'<rect x="{_fmt(x - 3)}" y="{_fmt(y - 3)}" width="6" height="6" fill="#b22"/>')
    return cv.render(title)


def _covered(cx: ChamberComplex, j: int, line: QHyperplane, others, poly, sec: Section):
    """Pieces of the trace of wall j lying in conv(weights on the wall)."""
    clip = _clip(line, poly)
    if clip is None:
        return []
    p0, d, lo, hi = clip
    ts = {lo, hi}
    for o in others:
        rate = linalg.dot(o.normal, d)
        if rate != 0:
            t = (o.offset - linalg.dot(o.normal, p0)) / rate
            if lo < t < hi:
                ts.add(t)
    ts = sorted(ts)
    piece = cx.W.polytope(cx.walls[j].state_set)
    out = []
    for a, b in zip(ts, ts[1:]):
        mid = tuple(x + (a + b) / 2 * y for x, y in zip(p0, d))
        if hull_membership(sec.lift(mid), piece) is not Membership.OUTSIDE:
            pa = tuple(x + a * y for x, y in zip(p0, d))
            pb = tuple(x + b * y for x, y in zip(p0, d))
            if out and out[-1][1] == pa:
                out[-1] = (out[-1][0], pb)
            else:
                out.append((pa, pb))
    return out


def plot_strip(cx: ChamberComplex, title: str = "chambers") -> str:
    """Rank-one picture: the slice interval with wall ticks and chamber markers."""
    lo, hi = min(w[0] for w in cx.W.qweights), max(w[0] for w in cx.W.qweights)
    cv = _Canvas([(lo, Fraction(0)), (hi, hi - lo)])
    y = Fraction(SIZE, 2)

    def X(v):
        return cv.xy((v, 0))[0]

    cv.add(f'<line x1="{_fmt(X(lo))}" y1="{_fmt(y)}" x2="{_fmt(X(hi))}" y2="{_fmt(y)}" '
           f'stroke="#333" stroke-width="3"/>')
    for w in cx.walls:
        x = X(w.hyperplane.offset / w.hyperplane.normal[0])
        tall = 8 if w.is_boundary else 16
        colour = "#999" if w.is_boundary else "#b22"
        cv.add(f'<line x1="{_fmt(x)}" y1="{_fmt(y - tall)}" x2="{_fmt(x)}" y2="{_fmt(y + tall)}" '
               f'stroke="{colour}" stroke-width="2"/>')
    for k in cx.chamber_indices:
        x = X(cx.cells[k].point[0])
        cv.add(f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="4" fill="#226"/>')
        cv.add(f'<text x="{_fmt(x - 6)}" y="{_fmt(y - 12)}" font-size="12">C{k}</text>')
    return cv.render(title)
