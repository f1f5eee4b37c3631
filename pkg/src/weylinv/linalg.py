"""Exact rational linear algebra on small matrices.

All vectors are tuples; entries are Python ints or Fractions. Nothing here
ever touches floating point. Matrices are sequences of row tuples.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence, Tuple

Vector = Tuple
Matrix = Tuple[Vector, ...]


def rank(rows: Iterable[Sequence]) -> int:
    """Rank over the rationals via Gaussian elimination."""
    elim = Eliminator()
    for row in rows:
        elim.add(row)
    return len(elim.pivots)


class Eliminator:
    """Incremental Gaussian elimination over the rationals.

    Keeps an echelonized list of rows; `add` returns True when the new row
    increased the rank. `in_span` tests membership without mutating.
    """

    def __init__(self):
        self.rows = []      # echelon rows (lists of Fractions)
        self.pivots = []    # pivot column per row

    def _reduce(self, row):
        work = [Fraction(x) for x in row]
        for r, p in zip(self.rows, self.pivots):
            if work[p]:
                c = work[p] / r[p]
                for j in range(p, len(work)):
                    work[j] -= c * r[j]
        return work

    def add(self, row) -> bool:
        work = self._reduce(row)
        for j, x in enumerate(work):
            if x:
                self.rows.append(work)
                self.pivots.append(j)
                return True
        return False

    def in_span(self, row) -> bool:
        return not any(self._reduce(row))

    def copy(self) -> "Eliminator":
        other = Eliminator()
        other.rows = [r[:] for r in self.rows]
        other.pivots = self.pivots[:]
        return other


def rref(rows: Iterable[Sequence]) -> Matrix:
    """Reduced row echelon form, canonical for a given row space."""
    work = [[Fraction(x) for x in row] for row in rows]
    ncols = len(work[0]) if work else 0
    pivots = []
    r = 0
    for col in range(ncols):
        pivot = next((i for i in range(r, len(work)) if work[i][col]), None)
        if pivot is None:
            continue
        work[r], work[pivot] = work[pivot], work[r]
        c = work[r][col]
        work[r] = [x / c for x in work[r]]
        for i in range(len(work)):
            if i != r and work[i][col]:
                d = work[i][col]
                work[i] = [x - d * y for x, y in zip(work[i], work[r])]
        pivots.append(col)
        r += 1
        if r == len(work):
            break
    return tuple(tuple(row) for row in work[:r])


def kernel_basis(rows: Iterable[Sequence], ncols: int) -> Matrix:
    """Canonical basis of the right kernel {x : Mx = 0}, primitive integer rows."""
    R = rref(rows)
    pivots = []
    for row in R:
        pivots.append(next(j for j, x in enumerate(row) if x))
    free = [j for j in range(ncols) if j not in pivots]
    basis = []
    for f in free:
        vec = [Fraction(0)] * ncols
        vec[f] = Fraction(1)
        for row, p in zip(R, pivots):
            vec[p] = -row[f]
        basis.append(primitive(vec))
    return tuple(basis)


def primitive(vec: Sequence) -> Vector:
    """Clear denominators, divide by the gcd, make the first nonzero entry positive."""
    fracs = [Fraction(x) for x in vec]
    if not any(fracs):
        return tuple(0 for _ in fracs)
    denom = 1
    for x in fracs:
        denom = denom * x.denominator // gcd(denom, x.denominator)
    ints = [int(x * denom) for x in fracs]
    g = 0
    for x in ints:
        g = gcd(g, x)
    ints = [x // g for x in ints]
    lead = next(x for x in ints if x)
    if lead < 0:
        ints = [-x for x in ints]
    return tuple(ints)


def solve_coords(basis: Sequence[Sequence], vec: Sequence):
    """Coordinates of `vec` in terms of the rows of `basis`, or None."""
    n = len(basis)
    if n == 0:
        return () if not any(vec) else None
    ncols = len(vec)
    # augmented system: transpose(basis) * c = vec
    aug = []
    for j in range(ncols):
        aug.append([Fraction(basis[i][j]) for i in range(n)] + [Fraction(vec[j])])
    R = rref(aug)
    coords = [Fraction(0)] * n
    for row in R:
        p = next(j for j, x in enumerate(row) if x)
        if p == n:
            return None  # inconsistent
        coords[p] = row[n]
    return tuple(coords)


def invert_unimodular(cols: Sequence[Sequence]) -> Matrix:
    """Inverse of an integer matrix given by columns; returns columns of the inverse.

    The matrix must be invertible over Q (it is, for any group element matrix);
    entries of the inverse are integers whenever the determinant is a unit.
    """
    n = len(cols)
    aug = []
    for i in range(n):
        row = [Fraction(cols[j][i]) for j in range(n)] + [Fraction(int(i == j)) for j in range(n)]
        aug.append(row)
    R = rref(aug)
    inv_rows = [row[n:] for row in R]
    out_cols = []
    for j in range(n):
        col = tuple(_as_int(inv_rows[i][j]) for i in range(n))
        out_cols.append(col)
    return tuple(out_cols)


def _as_int(x: Fraction):
    return int(x) if x.denominator == 1 else x
