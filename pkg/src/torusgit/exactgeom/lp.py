"""Exact two-phase simplex over the rationals (Bland's rule, dense tableau).

Solves ``max c.x  s.t.  A_eq x = b_eq,  A_ub x <= b_ub,  x >= 0``.
Bland's rule guarantees termination; exact arithmetic makes every answer a
certificate rather than an estimate.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LPResult:
    status: str
    x: tuple[Fraction, ...] | None = None
    value: Fraction | None = None


class _Tableau:
    def __init__(self, rows, rhs, basis):
        self.T = rows
        self.rhs = rhs
        self.basis = basis

    def pivot(self, r: int, c: int) -> None:
        T, rhs = self.T, self.rhs
        inv = 1 / T[r][c]
        T[r] = [x * inv for x in T[r]]
        rhs[r] *= inv
        for i in range(len(T)):
            if i != r:
                f = T[i][c]
                if f != 0:
                    Ti, Tr = T[i], T[r]
                    T[i] = [a - f * b for a, b in zip(Ti, Tr)]
                    rhs[i] -= f * rhs[r]
        self.basis[r] = c

    def run(self, obj: Sequence[Fraction], allowed: Sequence[bool]) -> bool:
        """Maximize ``obj``; returns False when unbounded."""
        T, rhs, basis = self.T, self.rhs, self.basis
        ncols = len(obj)
        while True:
            entering = -1
            for j in range(ncols):
                if not allowed[j] or j in basis:
                    continue
                red = obj[j] - sum((obj[basis[i]] * T[i][j] for i in range(len(T))), Fraction(0))
                if red > 0:
                    entering = j
                    break
            if entering < 0:
                return True
            best_r = -1
            best_ratio = None
            for i in range(len(T)):
                a = T[i][entering]
                if a > 0:
                    ratio = rhs[i] / a
                    if (best_ratio is None or ratio < best_ratio
                            or (ratio == best_ratio and basis[i] < basis[best_r])):
                        best_ratio, best_r = ratio, i
            if best_r < 0:
                return False
            self.pivot(best_r, entering)


def linprog(c, A_ub=(), b_ub=(), A_eq=(), b_eq=()) -> LPResult:
    """Maximize ``c.x`` over the polyhedron; all data exact rationals."""
    c = [Fraction(x) for x in c]
    n = len(c)
    n_ub, n_eq = len(A_ub), len(A_eq)
    m = n_ub + n_eq
    ncols = n + n_ub + m
    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    for k, (a, b) in enumerate(zip(A_ub, b_ub)):
        row = [Fraction(x) for x in a] + [Fraction(0)] * (n_ub + m)
        row[n + k] = Fraction(1)
        rows.append(row)
        rhs.append(Fraction(b))
    for a, b in zip(A_eq, b_eq):
        rows.append([Fraction(x) for x in a] + [Fraction(0)] * (n_ub + m))
        rhs.append(Fraction(b))
    for i in range(m):
        if rhs[i] < 0:
            rows[i] = [-x for x in rows[i]]
            rhs[i] = -rhs[i]
        rows[i][n + n_ub + i] = Fraction(1)
    tab = _Tableau(rows, rhs, [n + n_ub + i for i in range(m)])

    art = [j >= n + n_ub for j in range(ncols)]
    phase1 = [Fraction(-1) if art[j] else Fraction(0) for j in range(ncols)]
    tab.run(phase1, [True] * ncols)
    if any(tab.rhs[i] != 0 for i in range(len(tab.T)) if art[tab.basis[i]]):
        return LPResult(INFEASIBLE)
    # drive zero-level artificials out; drop redundant rows
    i = 0
    while i < len(tab.T):
        if art[tab.basis[i]]:
            col = next((j for j in range(n + n_ub) if tab.T[i][j] != 0), None)
            if col is None:
                del tab.T[i], tab.rhs[i], tab.basis[i]
                continue
            tab.pivot(i, col)
        i += 1
    obj = c + [Fraction(0)] * (n_ub + m)
    if not tab.run(obj, [not a for a in art]):
        return LPResult(UNBOUNDED)
    x = [Fraction(0)] * ncols
    for r, b in enumerate(tab.basis):
        x[b] = tab.rhs[r]
    xs = tuple(x[:n])
    return LPResult(OPTIMAL, xs, sum((ci * xi for ci, xi in zip(c, xs)), Fraction(0)))
