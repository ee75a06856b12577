"""Exact matrix algebra over a ``FieldTable``.

Vectors are rows.  Matrices are immutable tuples of row tuples; the canonical
representative of a subspace is the reduced row echelon basis of its rows.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .field import FieldTable


@dataclass(frozen=True)
class Matrix:
    field: FieldTable
    rows: tuple[tuple[int, ...], ...]
    ncols: int

    def __post_init__(self):
        q = self.field.q
        for r in self.rows:
            if len(r) != self.ncols:
                raise ValueError(f"row {r} does not have {self.ncols} entries")
            if any(not 0 <= x < q for x in r):
                raise ValueError(f"row {r} has entries outside {self.field}")

    @classmethod
    def of(cls, field: FieldTable, rows: Sequence[Sequence[int]], ncols: int | None = None) -> Matrix:
        rows = tuple(tuple(int(x) for x in r) for r in rows)
        if ncols is None:
            if not rows:
                raise ValueError("ncols is required for a matrix without rows")
            ncols = len(rows[0])
        return cls(field, rows, ncols)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def __iter__(self):
        return iter(self.rows)

    def __getitem__(self, i):
        return self.rows[i]

    def to_array(self) -> np.ndarray:
        return np.array(self.rows, dtype=np.int64).reshape(self.nrows, self.ncols)


def identity(field: FieldTable, n: int) -> Matrix:
    return Matrix(field, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)), n)


def zeros(field: FieldTable, nrows: int, ncols: int) -> Matrix:
    return Matrix(field, ((0,) * ncols,) * nrows, ncols)


def transpose(m: Matrix) -> Matrix:
    if m.nrows == 0:
        return Matrix(m.field, tuple(() for _ in range(m.ncols)), 0)
    return Matrix(m.field, tuple(zip(*m.rows)), m.nrows)


def matmul(a: Matrix, b: Matrix) -> Matrix:
    if a.ncols != b.nrows:
        raise ValueError(f"shape mismatch {a.shape} @ {b.shape}")
    add, mul = a.field.add, a.field.mul
    cols = list(zip(*b.rows)) if b.nrows else [()] * b.ncols
    out = []
    for r in a.rows:
        row = []
        for c in cols:
            acc = 0
            for x, y in zip(r, c):
                if x and y:
                    acc = add[acc][mul[x][y]]
            row.append(acc)
        out.append(tuple(row))
    return Matrix(a.field, tuple(out), b.ncols)


def mat_sub(a: Matrix, b: Matrix) -> Matrix:
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch {a.shape} - {b.shape}")
    sub = a.field.sub
    return Matrix(a.field, tuple(tuple(sub[x][y] for x, y in zip(r, s)) for r, s in zip(a.rows, b.rows)), a.ncols)


def apply_field_map(m: Matrix, table) -> Matrix:
    """Apply a map of scalars (e.g. a Frobenius table) entrywise."""
    return Matrix(m.field, tuple(tuple(int(table[x]) for x in r) for r in m.rows), m.ncols)


def _rref_rows(field: FieldTable, rows, ncols):
    """Reduced row echelon form of ``rows``; returns (nonzero rows, pivots)."""
    add, mul, neg, inv = field.add, field.mul, field.neg, field.inv
    work = [list(r) for r in rows]
    pivots = []
    r = 0
    nr = len(work)
    for c in range(ncols):
        if r == nr:
            break
        piv = next((i for i in range(r, nr) if work[i][c]), None)
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        row = work[r]
        lead = row[c]
        if lead != 1:
            il = inv[lead]
            row = [mul[il][x] for x in row]
            work[r] = row
        for i in range(nr):
            if i != r:
                f = work[i][c]
                if f:
                    nf = neg[f]
                    mrow = mul[nf]
                    work[i] = [add[x][mrow[y]] for x, y in zip(work[i], row)]
        pivots.append(c)
        r += 1
    return tuple(tuple(w) for w in work[:r]), tuple(pivots)


def rref(m: Matrix) -> tuple[Matrix, int, tuple[int, ...]]:
    """Reduced row echelon form, padded with zero rows to the input shape."""
    rows, pivots = _rref_rows(m.field, m.rows, m.ncols)
    rank = len(rows)
    padded = rows + ((0,) * m.ncols,) * (m.nrows - rank)
    return Matrix(m.field, padded, m.ncols), rank, pivots


def row_space(m: Matrix) -> Matrix:
    """Canonical basis (nonzero RREF rows) of the row space."""
    rows, _ = _rref_rows(m.field, m.rows, m.ncols)
    return Matrix(m.field, rows, m.ncols)


def rank(m: Matrix) -> int:
    return len(_rref_rows(m.field, m.rows, m.ncols)[0])


def kernel_basis(m: Matrix) -> Matrix:
    """Canonical basis of ``{x : m @ x^T = 0}``."""
    field = m.field
    rows, pivots = _rref_rows(field, m.rows, m.ncols)
    pivot_set = set(pivots)
    neg = field.neg
    basis = []
    for f in range(m.ncols):
        if f in pivot_set:
            continue
        x = [0] * m.ncols
        x[f] = 1
        for row, c in zip(rows, pivots):
            x[c] = neg[row[f]]
        basis.append(x)
    out, _ = _rref_rows(field, basis, m.ncols)
    return Matrix(field, out, m.ncols)


def _check_ambient(a: Matrix, b: Matrix):
    if a.ncols != b.ncols or a.field != b.field:
        raise ValueError(f"ambient mismatch: {a.ncols} columns over {a.field} vs {b.ncols} over {b.field}")


def subspace_sum(a: Matrix, b: Matrix) -> Matrix:
    _check_ambient(a, b)
    return row_space(Matrix(a.field, a.rows + b.rows, a.ncols))


def subspace_intersection(a: Matrix, b: Matrix) -> Matrix:
    """Intersection of row spaces via the left kernel of the stacked bases."""
    _check_ambient(a, b)
    field = a.field
    A = row_space(a)
    B = row_space(b)
    da, db = A.nrows, B.nrows
    if da == 0 or db == 0:
        return Matrix(field, (), a.ncols)
    # y @ [A; B] = 0  <=>  y[:da] @ A = -y[da:] @ B
    stacked = Matrix(field, A.rows + B.rows, a.ncols)
    coeffs = kernel_basis(transpose(stacked))
    add, mul = field.add, field.mul
    vecs = []
    for y in coeffs.rows:
        v = [0] * a.ncols
        for c, row in zip(y[:da], A.rows):
            if c:
                mc = mul[c]
                v = [add[x][mc[r]] for x, r in zip(v, row)]
        vecs.append(v)
    out = row_space(Matrix(field, tuple(tuple(v) for v in vecs), a.ncols))
    total = rank(Matrix(field, A.rows + B.rows, a.ncols))
    assert da + db == total + out.nrows, "dimension formula violated"
    return out


def annihilator(s: Matrix) -> Matrix:
    """Basis, in dual coordinates, of the functionals vanishing on the row space of ``s``."""
    if rank(s) != s.nrows:
        raise ValueError("annihilator expects linearly independent rows")
    return kernel_basis(s)


def inverse(m: Matrix) -> Matrix:
    n = m.nrows
    if m.ncols != n:
        raise ValueError("only square matrices are invertible")
    aug = [r + e for r, e in zip(m.rows, identity(m.field, n).rows)]
    rows, pivots = _rref_rows(m.field, aug, 2 * n)
    if len(rows) < n or pivots[n - 1] != n - 1:
        raise ValueError("matrix is singular")
    return Matrix(m.field, tuple(r[n:] for r in rows), n)


def is_invertible(m: Matrix) -> bool:
    return m.nrows == m.ncols and rank(m) == m.nrows
