"""Exact row reduction over Q(i).

Rows are cleared to Gaussian-integer rows and eliminated fraction-free
(``row_i <- p*row_i - q*row_piv`` followed by removing the rational
integer content).  Only the final back substitution divides, producing
the reduced row echelon form.  Pivot columns are chosen left to right,
pivot rows top to bottom, so the output is deterministic.
"""

from __future__ import annotations

from math import gcd, lcm
from typing import Sequence

from .exactnum import ONE, ZERO, Scalar


def _gaussian_row(row: Sequence[Scalar]) -> list:
    den = 1
    for s in row:
        if s._d != 1:
            den = lcm(den, s._d)
    return [(s._a * (den // s._d), s._b * (den // s._d)) for s in row]


def _content_reduce(row: list) -> list:
    g = 0
    for a, b in row:
        g = gcd(g, a, b)
        if g == 1:
            return row
    if g <= 1:
        return row
    return [(a // g, b // g) for a, b in row]


def echelon(rows: Sequence[Sequence[Scalar]], ncols: int) -> tuple[list, list]:
    """Fraction-free forward elimination.

    Returns ``(rows, pivots)`` where ``rows`` are the nonzero echelon rows as
    Gaussian-integer pairs and ``pivots`` their pivot columns.
    """
    work = [_gaussian_row(r) for r in rows if any(r)]
    pivots: list = []
    out: list = []
    for col in range(ncols):
        idx = next((i for i, r in enumerate(work) if r[col] != (0, 0)), None)
        if idx is None:
            continue
        prow = work.pop(idx)
        pa, pb = prow[col]
        rest = []
        for r in work:
            qa, qb = r[col]
            if qa == 0 and qb == 0:
                rest.append(r)
                continue
            new = []
            for (xa, xb), (ya, yb) in zip(r, prow):
                # p*x - q*y over Z[i]
                new.append((pa * xa - pb * xb - (qa * ya - qb * yb), pa * xb + pb * xa - (qa * yb + qb * ya)))
            if any(a or b for a, b in new):
                rest.append(_content_reduce(new))
        work = rest
        out.append(prow)
        pivots.append(col)
        if not work:
            break
    return out, pivots


def rref(rows: Sequence[Sequence[Scalar]], ncols: int) -> tuple[list, list]:
    """Reduced row echelon form as Scalar rows, plus pivot columns."""
    ech, pivots = echelon(rows, ncols)
    srows = [[Scalar._make(a, b, 1) for a, b in r] for r in ech]
    for k in range(len(srows) - 1, -1, -1):
        pc = pivots[k]
        inv = srows[k][pc].inverse()
        srows[k] = [x * inv if x else ZERO for x in srows[k]]
        for j in range(k):
            q = srows[j][pc]
            if q:
                srows[j] = [x - q * y if y else x for x, y in zip(srows[j], srows[k])]
    return srows, pivots


def nullspace(rows: Sequence[Sequence[Scalar]], ncols: int) -> list:
    """Basis of {x : rows . x = 0}, one vector per free column in order."""
    r, pivots = rref(rows, ncols)
    pivset = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivset:
            continue
        v = [ZERO] * ncols
        v[free] = ONE
        for k, pc in enumerate(pivots):
            if r[k][free]:
                v[pc] = -r[k][free]
        basis.append(v)
    return basis


def rank(vectors: Sequence[Sequence[Scalar]]) -> int:
    if not vectors:
        return 0
    return len(echelon(vectors, len(vectors[0]))[1])


def in_span(basis: Sequence[Sequence[Scalar]], v: Sequence[Scalar]) -> bool:
    if not any(v):
        return True
    return rank(list(basis) + [v]) == rank(basis)
