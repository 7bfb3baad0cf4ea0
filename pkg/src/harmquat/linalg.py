"""Exact linear algebra over the rationals.

Forward elimination runs on integer rows (each row cleared of denominators)
and stays fraction-free: ``row_i <- p * row_i - a * row_piv`` followed by
removal of the row content. Only the final back-substitution to reduced
echelon form divides. Pivot columns are taken left to right and the pivot
row is the first available nonzero row, so results are deterministic.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

Matrix = list[list[Fraction]]


class InconsistentSystemError(ValueError):
    pass


def _integer_row(row: Sequence) -> list[int]:
    den = 1
    for c in row:
        den = lcm(den, Fraction(c).denominator)
    return [int(Fraction(c) * den) for c in row]


def _primitive_row(row: list[int]) -> list[int]:
    g = 0
    for c in row:
        g = gcd(g, c)
        if g == 1:
            return row
    return [c // g for c in row] if g > 1 else row


def echelon(rows: Sequence[Sequence]) -> tuple[list[list[int]], list[int]]:
    """Fraction-free row echelon form. Returns nonzero integer rows and pivots."""
    m = [_integer_row(r) for r in rows]
    m = [r for r in m if any(r)]
    ncols = len(rows[0]) if rows else 0
    pivots: list[int] = []
    top = 0
    for col in range(ncols):
        piv = next((i for i in range(top, len(m)) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[top], m[piv] = m[piv], m[top]
        p_row = m[top]
        p = p_row[col]
        for i in range(top + 1, len(m)):
            a = m[i][col]
            if a == 0:
                continue
            g = gcd(p, a)
            pp, aa = p // g, a // g
            m[i] = _primitive_row([pp * x - aa * y for x, y in zip(m[i], p_row)])
        pivots.append(col)
        top += 1
        if top == len(m):
            break
    return m[:top], pivots


def rref(rows: Sequence[Sequence]) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form with Fraction entries."""
    ech, pivots = echelon(rows)
    r = [[Fraction(x, row[c]) for x in row] for row, c in zip(ech, pivots)]
    for k in range(len(r) - 1, -1, -1):
        c = pivots[k]
        for i in range(k):
            f = r[i][c]
            if f:
                r[i] = [x - f * y for x, y in zip(r[i], r[k])]
    return r, pivots


def rank(rows: Sequence[Sequence]) -> int:
    if not rows:
        return 0
    return len(echelon(rows)[1])


def nullspace(rows: Sequence[Sequence], ncols: int | None = None) -> Matrix:
    """Basis of ``{x : A x = 0}``, one vector per free column in column order."""
    if ncols is None:
        ncols = len(rows[0])
    if not rows:
        return [[Fraction(int(i == j)) for j in range(ncols)] for i in range(ncols)]
    r, pivots = rref(rows)
    pivset = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, c in zip(r, pivots):
            v[c] = -row[f]
        basis.append(v)
    return basis


def solve(a: Sequence[Sequence], b: Sequence) -> list[Fraction]:
    """One solution of ``A x = b`` (free variables set to zero)."""
    ncols = len(a[0])
    aug = [list(row) + [bi] for row, bi in zip(a, b)]
    r, pivots = rref(aug)
    if pivots and pivots[-1] == ncols:
        raise InconsistentSystemError("right-hand side is not in the column space")
    x = [Fraction(0)] * ncols
    for row, c in zip(r, pivots):
        x[c] = row[ncols]
    return x


def transpose(a: Sequence[Sequence]) -> Matrix:
    return [list(col) for col in zip(*a)]


def matvec(a: Sequence[Sequence], x: Sequence) -> list[Fraction]:
    return [sum((Fraction(p) * q for p, q in zip(row, x)), Fraction(0)) for row in a]


def min_norm_solve(a: Sequence[Sequence], b: Sequence) -> list[Fraction]:
    """The solution of ``A x = b`` with least Euclidean norm, exactly.

    Takes any particular solution and removes its component in ``ker A``
    by solving the (small) Gram system of a nullspace basis.
    """
    x = solve(a, b)
    ker = nullspace(a, len(x))
    if not ker:
        return x
    gram = [[sum((p * q for p, q in zip(ki, kj)), Fraction(0)) for kj in ker] for ki in ker]
    rhs = [sum((p * q for p, q in zip(k, x)), Fraction(0)) for k in ker]
    t = solve(gram, rhs)
    return [xi - sum((tj * k[i] for tj, k in zip(t, ker)), Fraction(0)) for i, xi in enumerate(x)]
