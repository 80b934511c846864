"""Exact linear algebra over Q via fraction-free (Bareiss) elimination.

Matrices are lists of rows.  Entries may be ints or Fractions; each row is
scaled to integers before elimination, so no intermediate rational blow-up
happens in the forward pass.
"""

from __future__ import annotations

import math
from fractions import Fraction


def _integer_rows(rows):
    out = []
    for row in rows:
        den = 1
        for x in row:
            if isinstance(x, Fraction):
                den = den * x.denominator // math.gcd(den, x.denominator)
        out.append([int(Fraction(x) * den) for x in row])
    return out


def bareiss_echelon(rows):
    """Row echelon form by Bareiss' fraction-free elimination.

    Returns ``(E, pivots)`` where ``E`` is an integer matrix in echelon form
    (zero rows dropped) and ``pivots`` the pivot column of each row.  Pivot
    search is leftmost-column, first nonzero row, so the result is
    deterministic.
    """
    a = _integer_rows(rows)
    if not a:
        return [], []
    nrows, ncols = len(a), len(a[0])
    pivots = []
    prev = 1
    r = 0
    for c in range(ncols):
        if r >= nrows:
            break
        piv = next((i for i in range(r, nrows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        pr = a[r]
        for i in range(r + 1, nrows):
            ai = a[i]
            f = ai[c]
            for j in range(c + 1, ncols):
                # exact division is the Bareiss invariant
                ai[j] = (pr[c] * ai[j] - f * pr[j]) // prev
            ai[c] = 0
        # rows above r that skipped this column keep their scaling; Bareiss
        # divisor bookkeeping only needs the last pivot
        prev = pr[c]
        pivots.append(c)
        r += 1
    return a[:r], pivots


def rref(rows):
    """Reduced row echelon form over Q: ``(R, pivots)`` with unit pivots."""
    e, pivots = bareiss_echelon(rows)
    R = [[Fraction(x) for x in row] for row in e]
    for k in range(len(R) - 1, -1, -1):
        c = pivots[k]
        inv = 1 / R[k][c]
        R[k] = [x * inv for x in R[k]]
        for i in range(k):
            f = R[i][c]
            if f:
                R[i] = [x - f * y for x, y in zip(R[i], R[k])]
    return R, pivots


def rank(rows) -> int:
    return len(bareiss_echelon(rows)[1])


def nullspace(rows, ncols=None):
    """Basis of {x : A x = 0}, one vector per free column, in column order.

    Each basis vector has a 1 in its free column and 0 in every other free
    column, which makes the basis canonical.
    """
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    if not rows:
        return [[Fraction(int(i == j)) for i in range(ncols)] for j in range(ncols)]
    R, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for k, c in enumerate(pivots):
            x[c] = -R[k][f]
        basis.append(x)
    return basis


class InconsistentSystem(ValueError):
    pass


def solve(rows, rhs):
    """One solution of A x = b (free variables set to zero) plus the nullspace.

    Raises :class:`InconsistentSystem` when b is not in the column span.
    """
    ncols = len(rows[0]) if rows else 0
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    R, pivots = rref(aug)
    if ncols in pivots:
        raise InconsistentSystem("right-hand side is outside the column span")
    x = [Fraction(0)] * ncols
    for k, c in enumerate(pivots):
        x[c] = R[k][ncols]
    return x, nullspace(rows, ncols)


def mat_vec(rows, x):
    return [sum((a * b for a, b in zip(row, x)), Fraction(0)) for row in rows]
