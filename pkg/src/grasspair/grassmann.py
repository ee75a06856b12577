"""Subspaces of GF(q)^n: enumeration of Grassmannians and the basic relations.

Each subspace is stored by its canonical RREF basis.  For fast relation tests a
subspace also carries the bitmask of the projective points (1-dim subspaces) it
contains; intersections and inclusions then reduce to integer ``&``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

import numpy as np

from .field import FieldTable, field_of_order
from .linalg import Matrix, row_space, subspace_intersection, subspace_sum


def gaussian_binomial(n: int, i: int, q: int) -> int:
    """Number of ``i``-dimensional subspaces of GF(q)^n."""
    if i < 0 or i > n:
        return 0
    num = den = 1
    for j in range(i):
        num *= q ** (n - j) - 1
        den *= q ** (j + 1) - 1
    return num // den


@dataclass(frozen=True)
class Ambient:
    """The space V = GF(q)^n together with the fixed dimension ``k``."""

    n: int
    k: int
    q: int
    poly: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.n < 2:
            raise ValueError(f"ambient dimension must be >= 2, got n={self.n}")
        if not 1 <= self.k <= self.n - 1:
            raise ValueError(f"k must lie in [1, n-1] = [1, {self.n - 1}], got k={self.k}")
        if self.poly is not None:
            object.__setattr__(self, "poly", tuple(self.poly))
        self.field  # validates q and poly

    @cached_property
    def field(self) -> FieldTable:
        return field_of_order(self.q, self.poly)

    @property
    def params(self) -> dict:
        return {"n": self.n, "k": self.k, "q": self.q}

    def same_space(self, other: Ambient) -> bool:
        return self.n == other.n and self.field == other.field

    # --- vectors as integer codes (base-q digits, first coordinate most significant)

    @cached_property
    def vectors(self) -> np.ndarray:
        """All q**n vectors; row ``c`` is the vector with code ``c``."""
        return np.array(list(itertools.product(range(self.q), repeat=self.n)), dtype=np.int64)

    @cached_property
    def _weights(self) -> np.ndarray:
        return self.q ** np.arange(self.n - 1, -1, -1, dtype=np.int64)

    def encode(self, v: Sequence[int]) -> int:
        c = 0
        for x in v:
            c = c * self.q + int(x)
        return c

    @cached_property
    def vec_add(self) -> np.ndarray:
        V = self.vectors
        return self.field.add_table[V[:, None, :], V[None, :, :]] @ self._weights

    @cached_property
    def vec_scale(self) -> np.ndarray:
        """``vec_scale[c, v]`` is the code of ``c * v``."""
        scalars = np.arange(self.q)[:, None, None]
        return self.field.mul_table[scalars, self.vectors[None, :, :]] @ self._weights

    @cached_property
    def point_of_code(self) -> np.ndarray:
        """Point id (index in the enumerated 𝒢_1) of each nonzero vector; -1 for zero."""
        index = {S.basis[0]: S.id for S in self.grassmannian(1)}
        inv = self.field.inv
        mul = self.field.mul
        out = np.full(len(self.vectors), -1, dtype=np.int64)
        for code, v in enumerate(self.vectors.tolist()):
            lead = next((x for x in v if x), 0)
            if lead:
                il = inv[lead]
                out[code] = index[tuple(mul[il][x] for x in v)]
        return out

    @cached_property
    def point_codes(self) -> np.ndarray:
        """Code of the normalized spanning vector of each point."""
        return np.array([self.encode(S.basis[0]) for S in self.grassmannian(1)], dtype=np.int64)

    def span_codes(self, basis) -> np.ndarray:
        codes = np.zeros(1, dtype=np.int64)
        scale = self.vec_scale
        add = self.vec_add
        for row in basis:
            b = self.encode(row)
            multiples = scale[:, b]
            codes = add[codes[:, None], multiples[None, :]].ravel()
        return codes

    @cached_property
    def _npoints_to_dim(self) -> dict[int, int]:
        q = self.q
        return {(q**d - 1) // (q - 1): d for d in range(self.n + 1)}

    def dim_of_mask(self, mask: int) -> int:
        return self._npoints_to_dim[mask.bit_count()]

    # --- Grassmannians

    @cached_property
    def _grass_cache(self) -> dict:
        return {}

    def grassmannian(self, i: int) -> tuple[Subspace, ...]:
        return enumerate_grassmannian(self, i)

    def lookup(self, basis: tuple[tuple[int, ...], ...]) -> Subspace:
        dim = len(basis)
        self.grassmannian(dim)
        return self._grass_cache[dim][1][basis]

    def subspace(self, rows) -> Subspace:
        """Canonical enumerated subspace spanned by ``rows``."""
        rows = tuple(tuple(int(x) for x in r) for r in rows)
        basis = row_space(Matrix(self.field, rows, self.n)).rows if rows else ()
        return self.lookup(basis)

    @property
    def zero(self) -> Subspace:
        return self.grassmannian(0)[0]

    @property
    def whole(self) -> Subspace:
        return self.grassmannian(self.n)[0]

    def point(self, pid: int) -> Subspace:
        return self.grassmannian(1)[pid]


@dataclass(frozen=True)
class Subspace:
    basis: tuple[tuple[int, ...], ...]
    n: int
    id: int = field(compare=False)
    ambient: Ambient = field(compare=False, repr=False)

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def matrix(self) -> Matrix:
        return Matrix(self.ambient.field, self.basis, self.n)

    @cached_property
    def codes(self) -> np.ndarray:
        return self.ambient.span_codes(self.basis)

    @cached_property
    def point_ids(self) -> tuple[int, ...]:
        pts = self.ambient.point_of_code[self.codes]
        return tuple(sorted(set(int(p) for p in pts if p >= 0)))

    @cached_property
    def mask(self) -> int:
        m = 0
        for p in self.point_ids:
            m |= 1 << p
        return m

    def contains_vector(self, v) -> bool:
        return self.ambient.encode(v) in set(self.codes.tolist())

    def __le__(self, other: Subspace) -> bool:
        _check_same(self, other)
        return self.mask & other.mask == self.mask

    def __lt__(self, other: Subspace) -> bool:
        return self <= other and self.dim < other.dim


def _check_same(P: Subspace, T: Subspace):
    if not P.ambient.same_space(T.ambient):
        raise ValueError(f"ambient mismatch: n={P.n} over {P.ambient.field} vs n={T.n} over {T.ambient.field}")


def _pivot_sets_colex(n: int, i: int):
    return sorted(itertools.combinations(range(n), i), key=lambda c: c[::-1])


def enumerate_grassmannian(ambient: Ambient, i: int) -> tuple[Subspace, ...]:
    """All ``i``-dim subspaces in canonical RREF form.

    Ordered by pivot set (colex), then by the free entries read row-major as a
    base-q counter whose last position is least significant.
    """
    n, q = ambient.n, ambient.q
    if not 0 <= i <= n:
        raise ValueError(f"dimension must lie in [0, {n}], got {i}")
    cache = ambient._grass_cache
    if i in cache:
        return cache[i][0]
    out = []
    for pivots in _pivot_sets_colex(n, i):
        pset = set(pivots)
        free = [(r, j) for r, c in enumerate(pivots) for j in range(c + 1, n) if j not in pset]
        for values in itertools.product(range(q), repeat=len(free)):
            rows = [[0] * n for _ in range(i)]
            for r, c in enumerate(pivots):
                rows[r][c] = 1
            for (r, j), x in zip(free, values):
                rows[r][j] = x
            out.append(Subspace(tuple(tuple(r) for r in rows), n, len(out), ambient))
    subspaces = tuple(out)
    cache[i] = (subspaces, {S.basis: S for S in subspaces})
    return subspaces


def intersection(P: Subspace, T: Subspace) -> Subspace:
    _check_same(P, T)
    return P.ambient.lookup(subspace_intersection(P.matrix, T.matrix).rows)


def span(P: Subspace, T: Subspace) -> Subspace:
    _check_same(P, T)
    return P.ambient.lookup(subspace_sum(P.matrix, T.matrix).rows)


def intersection_dim(P: Subspace, T: Subspace) -> int:
    _check_same(P, T)
    return P.ambient.dim_of_mask(P.mask & T.mask)


def adjacent(P: Subspace, T: Subspace) -> bool:
    """``dim P == dim T == dim(P ∩ T) + 1``."""
    _check_same(P, T)
    return P.dim == T.dim and P.ambient.dim_of_mask(P.mask & T.mask) == P.dim - 1


def incident(P: Subspace, T: Subspace) -> bool:
    """One of the two subspaces contains the other."""
    _check_same(P, T)
    m = P.mask & T.mask
    return m == P.mask or m == T.mask


def complementary(S: Subspace, U: Subspace) -> bool:
    """``S + U = V`` with ``S ∩ U = 0``."""
    _check_same(S, U)
    return S.dim + U.dim == S.n and not (S.mask & U.mask)


def pencil(P: Subspace, T: Subspace) -> list[Subspace]:
    """All X with ``P ⊂ X ⊂ T`` and ``dim X = dim P + 1``."""
    _check_same(P, T)
    if T.dim != P.dim + 2 or not P <= T:
        raise ValueError("pencil needs P ⊂ T with dim T = dim P + 2")
    amb = P.ambient
    found = {}
    rest = T.mask & ~P.mask
    while rest:
        pid = (rest & -rest).bit_length() - 1
        X = amb.subspace(P.basis + amb.point(pid).basis)
        found[X.id] = X
        rest &= ~X.mask
    return [found[i] for i in sorted(found)]
