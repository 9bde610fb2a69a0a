"""Exact rational simplex for small packing LPs, with Bland's anti-cycling rule."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence


class UnboundedLP(ArithmeticError):
    pass


@dataclass
class LPSolution:
    value: Fraction
    x: list[Fraction]
    duals: list[Fraction]
    pivots: int


def maximize(c: Sequence, A: Sequence[Sequence], b: Sequence) -> LPSolution:
    """Solve ``max c.x  s.t.  A x <= b, x >= 0`` exactly, for ``b >= 0``.

    The slack basis is feasible because ``b >= 0``, so no phase one is
    needed.  ``duals`` are the optimal multipliers of the rows of ``A``
    (read from the slack columns of the final objective row).
    """
    m, n = len(A), len(c)
    b = [Fraction(v) for v in b]
    if any(v < 0 for v in b):
        raise ValueError("right-hand side must be nonnegative")
    if any(len(row) != n for row in A):
        raise ValueError("constraint rows must have one entry per variable")
    width = n + m
    rows = []
    for i, row in enumerate(A):
        r = [Fraction(v) for v in row] + [Fraction(0)] * m
        r[n + i] = Fraction(1)
        rows.append(r)
    obj = [-Fraction(v) for v in c] + [Fraction(0)] * m
    obj_val = Fraction(0)
    basis = list(range(n, n + m))
    pivots = 0

    while True:
        enter = next((j for j in range(width) if obj[j] < 0), None)
        if enter is None:
            break
        leave = None
        best = None
        for i in range(m):
            a = rows[i][enter]
            if a > 0:
                ratio = b[i] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave is None:
            raise UnboundedLP(f"objective unbounded along variable {enter}")
        piv = rows[leave][enter]
        prow = [v / piv for v in rows[leave]]
        rows[leave] = prow
        b[leave] = b[leave] / piv
        for i in range(m):
            if i != leave:
                f = rows[i][enter]
                if f:
                    rows[i] = [v - f * p for v, p in zip(rows[i], prow)]
                    b[i] -= f * b[leave]
        f = obj[enter]
        obj = [v - f * p for v, p in zip(obj, prow)]
        obj_val -= f * b[leave]
        basis[leave] = enter
        pivots += 1

    x = [Fraction(0)] * n
    for i, j in enumerate(basis):
        if j < n:
            x[j] = b[i]
    return LPSolution(obj_val, x, obj[n:], pivots)
