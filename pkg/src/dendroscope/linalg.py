"""Exact integer linear algebra: fraction-free elimination and null spaces.

Matrices are lists of integer rows.  Reduction keeps every row integral and
primitive (content 1), so ranks and solution bases are exact; the null-space
basis of a homogeneous integer system is returned with integer entries.
"""

from __future__ import annotations

from math import gcd


def _primitive(row: list[int], lead: int) -> None:
    """Divide a row by its content in place; make the lead entry positive."""
    g = 0
    for v in row:
        g = gcd(g, v)
    if g > 1:
        for c in range(len(row)):
            row[c] //= g
    if row[lead] < 0:
        for c in range(len(row)):
            row[c] = -row[c]


def row_reduce(rows: list[list[int]], ncols: int):
    """Fraction-free Gauss-Jordan reduction.

    Returns (reduced_rows, pivot_columns): each reduced row is primitive with
    a positive pivot and zeros in every other pivot column.
    """
    pending = [r[:] for r in rows if any(r)]
    reduced: list[list[int]] = []
    pivots: list[int] = []
    for col in range(ncols):
        pivot_row = None
        for r in pending:
            if r[col] != 0:
                pivot_row = r
                break
        if pivot_row is None:
            continue
        pending.remove(pivot_row)
        _primitive(pivot_row, col)
        p = pivot_row[col]
        for other in pending + reduced:
            q = other[col]
            if q == 0:
                continue
            for c in range(ncols):
                other[c] = other[c] * p - pivot_row[c] * q
            if any(other):
                _primitive(other, next(i for i, v in enumerate(other) if v))
        pending = [r for r in pending if any(r)]
        reduced.append(pivot_row)
        pivots.append(col)
    return reduced, pivots


def rank(rows: list[list[int]], ncols: int) -> int:
    return len(row_reduce(rows, ncols)[1])


def null_space(rows: list[list[int]], ncols: int) -> list[list[int]]:
    """Primitive integer basis of the solution space of the homogeneous system."""
    reduced, pivots = row_reduce(rows, ncols)
    pivot_set = set(pivots)
    free_cols = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for f in free_cols:
        lcm = 1
        for row, c in zip(reduced, pivots):
            lcm = lcm * row[c] // gcd(lcm, row[c])
        vec = [0] * ncols
        vec[f] = lcm
        for row, c in zip(reduced, pivots):
            vec[c] = -row[f] * (lcm // row[c])
        g = 0
        for v in vec:
            g = gcd(g, v)
        basis.append([v // g for v in vec])
    return basis
