"""Exact rational linear algebra for global-section problems.

Everything here works on dense ``Fraction`` matrices; instances are small.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import InstanceTooLarge

Matrix = list[list[Fraction]]


@dataclass
class PhaseOneResult:
    feasible: bool
    solution: list[Fraction] | None = None
    # y with y.A >= 0 and y.b < 0 when infeasible
    certificate: list[Fraction] | None = None
    pivots: int = 0


def verify_farkas(a: Sequence[Sequence], b: Sequence, y: Sequence) -> bool:
    """True iff y proves that A x = b has no solution with x >= 0."""
    m = len(a)
    n = len(a[0]) if m else 0
    if len(y) != m:
        return False
    if sum(Fraction(y[i]) * b[i] for i in range(m)) >= 0:
        return False
    return all(sum(Fraction(y[i]) * a[i][j] for i in range(m)) >= 0 for j in range(n))


def phase_one(a: Sequence[Sequence], b: Sequence) -> PhaseOneResult:
    """Decide whether A x = b, x >= 0 is feasible.

    Phase-one simplex on the auxiliary problem min 1.r s.t. A x + r = b,
    with Bland's smallest-index rule for both entering and leaving variables.
    """
    m = len(a)
    n = len(a[0]) if m else 0
    flip = [Fraction(b[i]) < 0 for i in range(m)]
    t: Matrix = []
    for i in range(m):
        sign = -1 if flip[i] else 1
        row = [sign * Fraction(v) for v in a[i]]
        row += [Fraction(int(k == i)) for k in range(m)]
        row.append(sign * Fraction(b[i]))
        t.append(row)
    width = n + m
    basis = list(range(n, n + m))
    # reduced costs of the auxiliary objective
    cost = [Fraction(0)] * n + [Fraction(1)] * m
    reduced = [cost[j] - sum(t[i][j] for i in range(m)) for j in range(width)]

    pivots = 0
    while True:
        entering = next((j for j in range(width) if reduced[j] < 0), None)
        if entering is None:
            break
        best = None
        for i in range(m):
            if t[i][entering] > 0:
                ratio = t[i][-1] / t[i][entering]
                if best is None or (ratio, basis[i]) < best[:2]:
                    best = (ratio, basis[i], i)
        if best is None:  # cannot happen: the auxiliary objective is bounded below by 0
            raise AssertionError("phase-one problem reported unbounded")
        r = best[2]
        piv = t[r][entering]
        t[r] = [v / piv for v in t[r]]
        for i in range(m):
            if i != r and t[i][entering] != 0:
                f = t[i][entering]
                t[i] = [vi - f * vr for vi, vr in zip(t[i], t[r])]
        f = reduced[entering]
        reduced = [rc - f * vr for rc, vr in zip(reduced, t[r][:width])]
        basis[r] = entering
        pivots += 1

    objective = sum((t[i][-1] for i in range(m) if basis[i] >= n), Fraction(0))
    if objective == 0:
        x = [Fraction(0)] * n
        for i, j in enumerate(basis):
            if j < n:
                x[j] = t[i][-1]
        return PhaseOneResult(True, solution=x, pivots=pivots)
    # duals of the auxiliary problem: y_i = 1 - reduced cost of artificial i
    y = [-(1 - reduced[n + i]) for i in range(m)]
    y = [-v if flip[i] else v for i, v in enumerate(y)]
    return PhaseOneResult(False, certificate=y, pivots=pivots)


def row_reduce(a: Sequence[Sequence], b: Sequence):
    """Reduced row echelon form of [A | b].

    Returns (rows, pivot_columns, consistent) with zero rows removed.
    """
    m = len(a)
    n = len(a[0]) if m else 0
    rows = [[Fraction(v) for v in a[i]] + [Fraction(b[i])] for i in range(m)]
    pivots = []
    r = 0
    for col in range(n):
        p = next((i for i in range(r, m) if rows[i][col] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        pv = rows[r][col]
        rows[r] = [v / pv for v in rows[r]]
        for i in range(m):
            if i != r and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [vi - f * vr for vi, vr in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
        if r == m:
            break
    consistent = all(rows[i][-1] == 0 for i in range(r, m))
    return rows[:r], pivots, consistent


def solve_affine(a: Sequence[Sequence], b: Sequence) -> list[Fraction] | None:
    """Some rational x with A x = b (free variables set to 0), or None."""
    n = len(a[0]) if a else 0
    rows, pivots, consistent = row_reduce(a, b)
    if not consistent:
        return None
    x = [Fraction(0)] * n
    for row, col in zip(rows, pivots):
        x[col] = row[-1]
    return x


def _solve_square(cols: Sequence[Sequence[Fraction]], b: Sequence[Fraction]):
    # Gaussian elimination on the r x r system whose columns are `cols`
    r = len(b)
    rows = [[cols[j][i] for j in range(r)] + [b[i]] for i in range(r)]
    for col in range(r):
        p = next((i for i in range(col, r) if rows[i][col] != 0), None)
        if p is None:
            return None
        rows[col], rows[p] = rows[p], rows[col]
        pv = rows[col][col]
        for i in range(col + 1, r):
            if rows[i][col] != 0:
                f = rows[i][col] / pv
                rows[i] = [vi - f * vc for vi, vc in zip(rows[i], rows[col])]
    x = [Fraction(0)] * r
    for i in reversed(range(r)):
        acc = rows[i][-1] - sum(rows[i][k] * x[k] for k in range(i + 1, r))
        x[i] = acc / rows[i][i]
    return x


def enumerate_feasibility(a: Sequence[Sequence], b: Sequence,
                          max_bases: int = 200_000) -> list[Fraction] | None:
    """Brute-force feasibility of A x = b, x >= 0 by enumerating bases.

    The system is reduced to independent rows, then every choice of rank-many
    columns is solved by elimination; a feasible system has a basic feasible
    solution among them.  Returns a non-negative solution or None.
    """
    m = len(a)
    n = len(a[0]) if m else 0
    rows, _, consistent = row_reduce(a, b)
    if not consistent:
        return None
    rank = len(rows)
    if rank == 0:
        return [Fraction(0)] * n
    if math.comb(n, rank) > max_bases:
        raise InstanceTooLarge(f"C({n}, {rank}) bases exceeds {max_bases}")
    rhs = [row[-1] for row in rows]
    columns = [[row[j] for row in rows] for j in range(n)]
    for chosen in itertools.combinations(range(n), rank):
        xb = _solve_square([columns[j] for j in chosen], rhs)
        if xb is not None and all(v >= 0 for v in xb):
            x = [Fraction(0)] * n
            for j, v in zip(chosen, xb):
                x[j] = v
            return x
    return None
