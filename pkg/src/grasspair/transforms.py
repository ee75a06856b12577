"""Semilinear maps, dualities and the maps they induce on pair spaces.

All induced maps are materialized as action tables on enumerated
Grassmannians (arrays of subspace ids), so two maps are equal exactly when
their tables are equal.
"""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass, field
from functools import cached_property, lru_cache

import numpy as np

from .errors import CeilingExceeded
from .grassmann import Ambient, Subspace
from .linalg import (
    Matrix,
    apply_field_map,
    identity,
    inverse,
    is_invertible,
    kernel_basis,
    mat_sub,
    matmul,
    rank,
    transpose,
)
from .pairs import Kind, PairPoint, PairSpace, enumerate_pairs, pair_adjacent

DEFAULT_CATALOG_CEILING = 200_000
DEFAULT_GROUP_CEILING = 500_000


class Shape(str, enum.Enum):
    PRODUCT = "product"  # (S, U) -> (f'(S), f''(U))
    SWAP = "swap"  # (S, U) -> (g''(U), g'(S))


@dataclass(frozen=True)
class SemilinearMap:
    """``v -> sigma(v) @ matrix`` on row vectors."""

    matrix: Matrix
    sigma: int = 0

    def __post_init__(self):
        if not is_invertible(self.matrix):
            raise ValueError("semilinear map needs an invertible matrix")
        if not 0 <= self.sigma < self.matrix.field.e:
            raise ValueError(f"Frobenius power {self.sigma} out of range")

    @property
    def field(self):
        return self.matrix.field

    def __call__(self, v):
        frob = self.field.frobenius_tables[self.sigma]
        row = Matrix(self.field, (tuple(int(frob[x]) for x in v),), self.matrix.ncols)
        return matmul(row, self.matrix).rows[0]

    def compose(self, other: SemilinearMap) -> SemilinearMap:
        """``self ∘ other``."""
        frob = self.field.frobenius_tables[self.sigma]
        m = matmul(apply_field_map(other.matrix, frob), self.matrix)
        return SemilinearMap(m, (self.sigma + other.sigma) % self.field.e)

    def inverse(self) -> SemilinearMap:
        back = (-self.sigma) % self.field.e
        frob = self.field.frobenius_tables[back]
        return SemilinearMap(apply_field_map(inverse(self.matrix), frob), back)


@dataclass(frozen=True)
class DualityMap:
    """``v -> sigma(v) @ matrix``, the image read in dual coordinates."""

    matrix: Matrix
    sigma: int = 0

    def __post_init__(self):
        if not is_invertible(self.matrix):
            raise ValueError("duality needs an invertible matrix")

    def as_semilinear(self) -> SemilinearMap:
        return SemilinearMap(self.matrix, self.sigma)


def induce_grassmannian(l: SemilinearMap, S: Subspace) -> Subspace:
    return S.ambient.subspace([l(v) for v in S.basis])


def induce_duality(s: DualityMap, S: Subspace) -> Subspace:
    """Annihilator of the image of S."""
    l = s.as_semilinear()
    image = Matrix(S.ambient.field, tuple(l(v) for v in S.basis), S.n)
    return S.ambient.lookup(kernel_basis(image).rows)


def perp_table(ambient: Ambient, i: int) -> np.ndarray:
    """Table of S -> annihilator of S (under the standard pairing), 𝒢_i -> 𝒢_{n-i}."""
    return _perp_table(ambient, i)


@lru_cache(maxsize=None)
def _perp_table(ambient: Ambient, i: int) -> np.ndarray:
    return np.array([ambient.lookup(kernel_basis(S.matrix).rows).id for S in ambient.grassmannian(i)], dtype=np.int64)


# --- batched action tables --------------------------------------------------


def group_order(ambient: Ambient) -> int:
    n, q = ambient.n, ambient.q
    return math.prod(q**n - q**i for i in range(n))


def general_linear_rows(ambient: Ambient, ceiling: int = DEFAULT_GROUP_CEILING) -> np.ndarray:
    """Every invertible matrix, as an (m, n) array of row codes, in lexicographic order."""
    order = group_order(ambient)
    if order > ceiling:
        raise CeilingExceeded(f"|GL({ambient.n},{ambient.q})| = {order} exceeds ceiling {ceiling}")
    n, q = ambient.n, ambient.q
    Q = q**n
    add, scale = ambient.vec_add, ambient.vec_scale
    out = np.zeros((order, n), dtype=np.int64)
    pos = 0

    def extend(prefix, span):
        nonlocal pos
        if len(prefix) == n:
            out[pos] = prefix
            pos += 1
            return
        inside = np.zeros(Q, dtype=bool)
        inside[span] = True
        for v in range(1, Q):
            if not inside[v]:
                new_span = np.unique(add[span[:, None], scale[:, v][None, :]].ravel())
                extend(prefix + [v], new_span)

    extend([], np.zeros(1, dtype=np.int64))
    assert pos == order
    return out


def vector_images(ambient: Ambient, rows: np.ndarray, sigma: int) -> np.ndarray:
    """(B, q^n) codes of ``sigma(v) @ M`` for each matrix ``M`` given by row codes."""
    vs = ambient.field.frobenius_tables[sigma][ambient.vectors]
    add, scale = ambient.vec_add, ambient.vec_scale
    acc = np.zeros((rows.shape[0], len(ambient.vectors)), dtype=np.int64)
    for t in range(ambient.n):
        acc = add[acc, scale[vs[None, :, t], rows[:, t, None]]]
    return acc


class _SubspaceKeys:
    """Lookup of subspaces in 𝒢_i from their sets of point ids."""

    def __init__(self, ambient: Ambient, i: int):
        subs = ambient.grassmannian(i)
        self.points = np.array([S.point_ids for S in subs], dtype=np.int64).reshape(len(subs), -1)
        self.npoints = len(ambient.grassmannian(1))
        if self.npoints <= 62:
            keys = np.array([S.mask for S in subs], dtype=np.int64)
            self.order = np.argsort(keys)
            self.sorted_keys = keys[self.order]
        else:
            self.index = {S.point_ids: S.id for S in subs}

    def lookup(self, point_perm: np.ndarray) -> np.ndarray:
        """Subspace-id tables (B, |𝒢_i|) from point permutations (B, #points)."""
        img = point_perm[:, self.points]
        if self.npoints <= 62:
            keys = (np.int64(1) << img).sum(axis=2)
            pos = np.searchsorted(self.sorted_keys, keys)
            assert (self.sorted_keys[pos] == keys).all()
            return self.order[pos]
        img = np.sort(img, axis=2)
        return np.array([[self.index[tuple(r)] for r in b] for b in img.tolist()], dtype=np.int64)


@lru_cache(maxsize=None)
def _subspace_keys(ambient: Ambient, i: int) -> _SubspaceKeys:
    return _SubspaceKeys(ambient, i)


def induced_tables(ambient: Ambient, rows: np.ndarray, sigma: int, dims) -> dict[int, np.ndarray]:
    """Action tables of G_i(l) for each dim in ``dims`` and each matrix in ``rows``."""
    images = vector_images(ambient, rows, sigma)
    point_perm = ambient.point_of_code[images[:, ambient.point_codes]]
    out = {}
    for i in dims:
        if i == 0 or i == ambient.n:
            out[i] = np.zeros((len(rows), 1), dtype=np.int64)
        elif i == 1:
            out[i] = point_perm
        else:
            out[i] = _subspace_keys(ambient, i).lookup(point_perm)
    return out


@dataclass
class GroupTables:
    """Induced tables for every element (matrix, field automorphism) of the semilinear group."""

    rows: np.ndarray  # (m, n) row codes
    sigmas: np.ndarray  # (m,)
    tables: dict[int, np.ndarray]  # dim -> (m, |𝒢_dim|)

    def __len__(self):
        return len(self.rows)

    def source(self, idx: int, ambient: Ambient, duality: bool = False):
        m = Matrix(ambient.field, tuple(tuple(int(x) for x in ambient.vectors[c]) for c in self.rows[idx]), ambient.n)
        cls = DualityMap if duality else SemilinearMap
        return cls(m, int(self.sigmas[idx]))


def group_tables(ambient: Ambient, dims, ceiling: int = DEFAULT_GROUP_CEILING, chunk: int = 4096) -> GroupTables:
    return _group_tables(ambient, tuple(sorted(set(dims))), ceiling, chunk)


@lru_cache(maxsize=8)
def _group_tables(ambient, dims, ceiling, chunk):
    e = ambient.field.e
    gl = general_linear_rows(ambient, max(1, ceiling // e))
    rows, sigmas = [], []
    tables = {i: [] for i in dims}
    for sigma in range(e):
        for start in range(0, len(gl), chunk):
            block = gl[start:start + chunk]
            t = induced_tables(ambient, block, sigma, dims)
            for i in dims:
                tables[i].append(t[i])
            rows.append(block)
            sigmas.append(np.full(len(block), sigma, dtype=np.int64))
    return GroupTables(
        np.concatenate(rows), np.concatenate(sigmas), {i: np.concatenate(v) for i, v in tables.items()}
    )


def unique_rows(a: np.ndarray) -> np.ndarray:
    """Indices of the first occurrence of each distinct row, in original order."""
    if len(a) == 0:
        return np.zeros(0, dtype=np.int64)
    _, first = np.unique(a, axis=0, return_index=True)
    return np.sort(first)


# --- pair transformations and the catalog --------------------------------


@dataclass(eq=False)
class PairTransformation:
    shape: Shape
    first: np.ndarray
    second: np.ndarray
    domain: PairSpace
    label: str = ""
    source: object = field(default=None, repr=False)

    def __post_init__(self):
        amb = self.domain.ambient
        n, k = amb.n, amb.k
        sizes = {i: len(amb.grassmannian(i)) for i in (k, n - k)}
        self.first = np.asarray(self.first, dtype=np.int64)
        self.second = np.asarray(self.second, dtype=np.int64)
        if len(self.first) != sizes[k] or len(self.second) != sizes[n - k]:
            raise ValueError("component tables have the wrong domain sizes")
        for t in (self.first, self.second):
            if len(set(t.tolist())) != len(t):
                raise ValueError("component tables must be bijections")

    @cached_property
    def perm(self) -> np.ndarray:
        return _pair_perm(self.domain, self.shape, self.first[None, :], self.second[None, :])[0]

    def __call__(self, p: PairPoint) -> PairPoint:
        return apply_pair_transformation(self, p)


def _pair_perm(space: PairSpace, shape: Shape, first: np.ndarray, second: np.ndarray) -> np.ndarray:
    """Point-id images for batches of component tables; -1 where the image leaves ``space``."""
    ids = space.id_table
    s, u = space.s_ids, space.u_ids
    if shape is Shape.PRODUCT:
        return ids[first[:, s], second[:, u]]
    return ids[second[:, u], first[:, s]]


def apply_pair_transformation(t: PairTransformation, p: PairPoint) -> PairPoint:
    amb = t.domain.ambient
    gk, gnk = amb.grassmannian(amb.k), amb.grassmannian(amb.n - amb.k)
    if t.shape is Shape.PRODUCT:
        s, u = gk[t.first[p.s.id]], gnk[t.second[p.u.id]]
    else:
        s, u = gk[t.second[p.u.id]], gnk[t.first[p.s.id]]
    image = t.domain.find(s, u)
    if image is None:
        raise ValueError(f"image of {p} is not in the domain pair space")
    return image


@dataclass(eq=False)
class Catalog:
    space: PairSpace
    maps: list[PairTransformation]
    perms: np.ndarray  # (len(maps), len(space))

    def __len__(self):
        return len(self.maps)

    def __iter__(self):
        return iter(self.maps)

    @cached_property
    def perm_set(self) -> set[bytes]:
        return {r.tobytes() for r in self.perms}

    def contains_perm(self, perm) -> bool:
        return np.asarray(perm, dtype=self.perms.dtype).tobytes() in self.perm_set


def _perm_dtype(n):
    return np.int16 if n < 2**15 else np.int32


def _all_bijections(m: int, ceiling: int) -> np.ndarray:
    if math.factorial(m) > ceiling:
        raise CeilingExceeded(f"{m}! bijections exceed ceiling {ceiling}")
    return np.array(list(itertools.permutations(range(m))), dtype=np.int64).reshape(-1, m)


def component_maps(ambient: Ambient, ceiling: int = DEFAULT_GROUP_CEILING):
    """Distinct induced tables on 𝒢_k and 𝒢_{n-k}.

    Returns ``{"G": (Gk, Gnk), "D": (Dk, Dnk), "src": (idx_G, idx_D), "group": GroupTables}``
    where ``Gk[j]`` is G_k(l) and ``Dk[j]`` is D_k(s) (a table 𝒢_k -> 𝒢_{n-k}).
    Rows of G (resp. D) stay paired: row j of both entries comes from one group element.
    """
    n, k = ambient.n, ambient.k
    gt = group_tables(ambient, (k, n - k), ceiling)
    Gk, Gnk = gt.tables[k], gt.tables[n - k]
    Dk = perp_table(ambient, k)[Gk]
    Dnk = perp_table(ambient, n - k)[Gnk]
    keep_g = unique_rows(np.concatenate([Gk, Gnk], axis=1))
    keep_d = unique_rows(np.concatenate([Dk, Dnk], axis=1))
    return {
        "G": (Gk[keep_g], Gnk[keep_g]),
        "D": (Dk[keep_d], Dnk[keep_d]),
        "src": (keep_g, keep_d),
        "group": gt,
    }


def _candidates(ambient: Ambient, kind: Kind, ceiling: int):
    """Yield (shape, first_tables, second_tables, label, sources) blocks in catalog order."""
    n, k = ambient.n, ambient.k
    kind = Kind(kind)
    if kind is Kind.COMPLEMENTARY and n == 2:
        f = _all_bijections(len(ambient.grassmannian(1)), ceiling)
        yield Shape.PRODUCT, f, f, "f×f", None
        yield Shape.SWAP, f, f, "f⋈f", None
        return
    if kind is Kind.FULL_PRODUCT and k in (1, n - 1):
        f = _all_bijections(len(ambient.grassmannian(k)), ceiling)
        m = len(f)
        if 2 * m * m > ceiling:
            raise CeilingExceeded(f"{2 * m * m} bijection pairs exceed ceiling {ceiling}")
        a = np.repeat(np.arange(m), m)
        b = np.tile(np.arange(m), m)
        yield Shape.PRODUCT, f[a], f[b], "f'×f''", None
        yield Shape.SWAP, f[a], f[b], "g'⋈g''", None
        return
    comp = component_maps(ambient)
    gk, gnk = comp["G"]
    dk, dnk = comp["D"]
    src_g, src_d = comp["src"]
    gt = comp["group"]
    if kind is Kind.COMPLEMENTARY:
        yield Shape.PRODUCT, gk, gnk, "G×G", ("G", src_g, gt)
        yield Shape.SWAP, dk, dnk, "D⋈D", ("D", src_d, gt)
        if n == 2 * k:
            yield Shape.SWAP, gk, gnk, "G⋈G", ("G", src_g, gt)
            yield Shape.PRODUCT, dk, dnk, "D×D", ("D", src_d, gt)
        return
    # full product, 1 < k < n-1: independent adjacency-preserving components
    if n == 2 * k:
        auto = np.concatenate([gk, dk])
        keep = unique_rows(auto)
        auto_k = auto_nk = swap_k = swap_nk = auto[keep]
    else:
        auto_k, auto_nk = gk, gnk
        swap_k, swap_nk = dk, dnk
    total = len(auto_k) * len(auto_nk) + len(swap_k) * len(swap_nk)
    if total > ceiling:
        raise CeilingExceeded(f"{total} product-space maps exceed ceiling {ceiling}")
    a, b = np.divmod(np.arange(len(auto_k) * len(auto_nk)), len(auto_nk))
    yield Shape.PRODUCT, auto_k[a], auto_nk[b], "f'×f''", None
    a, b = np.divmod(np.arange(len(swap_k) * len(swap_nk)), len(swap_nk))
    yield Shape.SWAP, swap_k[a], swap_nk[b], "g'⋈g''", None


def catalog_size(ambient: Ambient, kind: Kind) -> int:
    """Number of distinct catalog maps, without materializing product-space catalogs."""
    kind = Kind(kind)
    n, k = ambient.n, ambient.k
    if kind is Kind.COMPLEMENTARY:
        return len(catalog(ambient, kind))
    if k in (1, n - 1):
        return 2 * math.factorial(len(ambient.grassmannian(k))) ** 2
    comp = component_maps(ambient)
    gk, gnk = comp["G"]
    dk, dnk = comp["D"]
    if n == 2 * k:
        a = len(unique_rows(np.concatenate([gk, dk])))
        return 2 * a * a
    return len(gk) * len(gnk) + len(dk) * len(dnk)


def catalog(ambient: Ambient, kind: Kind = Kind.COMPLEMENTARY, ceiling: int = DEFAULT_CATALOG_CEILING) -> Catalog:
    """Deduplicated list of the known transformations of the pair space."""
    return _catalog(ambient, Kind(kind), ceiling)


@lru_cache(maxsize=8)
def _catalog(ambient, kind, ceiling):
    space = enumerate_pairs(ambient, kind)
    dtype = _perm_dtype(len(space))
    blocks = []
    for shape, first, second, label, sources in _candidates(ambient, kind, ceiling):
        perms = _pair_perm(space, shape, first, second)
        if (perms < 0).any():
            raise AssertionError(f"catalog family {label} does not stabilize the pair space")
        blocks.append((shape, first, second, label, sources, perms.astype(dtype)))
    all_perms = np.concatenate([b[5] for b in blocks])
    keep = unique_rows(all_perms)
    if len(keep) > ceiling:
        raise CeilingExceeded(f"catalog of size {len(keep)} exceeds ceiling {ceiling}")
    offsets = np.cumsum([0] + [len(b[5]) for b in blocks])
    maps = []
    for idx in keep.tolist():
        bi = int(np.searchsorted(offsets, idx, side="right") - 1)
        shape, first, second, label, sources, _ = blocks[bi]
        j = idx - offsets[bi]
        src = None
        if sources is not None:
            tag, rows_idx, gt = sources
            src = (tag, int(rows_idx[j]))
        maps.append(PairTransformation(shape, first[j], second[j], space, label, src))
    return Catalog(space, maps, all_perms[keep])


def map_source(t: PairTransformation, ambient: Ambient):
    """The semilinear map or duality a catalog entry was induced from (None for bare bijections)."""
    if t.source is None:
        return None
    tag, idx = t.source
    gt = group_tables(ambient, (ambient.k, ambient.n - ambient.k))
    return gt.source(idx, ambient, duality=(tag == "D"))


def compose_perms(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Permutation ``a ∘ b`` (apply b first)."""
    return a[b]


def invert_perm(a: np.ndarray) -> np.ndarray:
    inv = np.empty_like(a)
    inv[a] = np.arange(len(a), dtype=a.dtype)
    return inv


# --- involutions ------------------------------------------------------------


@dataclass(frozen=True)
class Involution:
    matrix: Matrix
    r: int

    def __post_init__(self):
        m = self.matrix
        if m.field.p == 2:
            raise ValueError("involutions are only considered in odd characteristic")
        if matmul(m, m) != identity(m.field, m.nrows):
            raise ValueError("matrix does not square to the identity")


def eigenspaces(u: Matrix, ambient: Ambient) -> tuple[Subspace, Subspace]:
    """(U+, U-) for the action ``v -> v @ u``."""
    one = identity(u.field, u.nrows)
    minus_one = Matrix(u.field, tuple(tuple(u.field.neg[x] for x in r) for r in one.rows), u.nrows)
    plus = kernel_basis(transpose(mat_sub(u, one)))
    minus = kernel_basis(transpose(mat_sub(u, minus_one)))
    return ambient.lookup(plus.rows), ambient.lookup(minus.rows)


def batch_matmul(field, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Products of stacked square matrices over a field, via lookup tables."""
    add, mul = field.add_table, field.mul_table
    out = np.zeros(A.shape[:-1] + (B.shape[-1],), dtype=np.int64)
    for t in range(A.shape[-1]):
        out = add[out, mul[A[..., :, t, None], B[..., None, t, :]]]
    return out


def enumerate_involutions(ambient: Ambient, k: int | None = None, ceiling: int = 2_000_000) -> list[Involution]:
    """All matrices u with u² = 1 and dim U+(u) = k, found by brute force over all matrices."""
    field = ambient.field
    if field.p == 2:
        raise ValueError("characteristic 2: involutions do not split into eigenspaces")
    k = ambient.k if k is None else k
    n, q = ambient.n, ambient.q
    total = q ** (n * n)
    if total > ceiling:
        raise CeilingExceeded(f"{total} matrices exceed ceiling {ceiling}")
    eye = np.eye(n, dtype=np.int64)
    found = []
    chunk = 65536
    for start in range(0, total, chunk):
        codes = np.arange(start, min(total, start + chunk), dtype=np.int64)
        digits = (codes[:, None] // q ** np.arange(n * n - 1, -1, -1)) % q
        mats = digits.reshape(-1, n, n)
        sq = batch_matmul(field, mats, mats)
        found.extend(mats[(sq == eye).all(axis=(1, 2))].tolist())
    out = []
    for m in found:
        u = Matrix.of(field, m)
        plus, minus = eigenspaces(u, ambient)
        assert plus.dim + minus.dim == n and not (plus.mask & minus.mask)
        if plus.dim == k:
            out.append(Involution(u, k))
    return out


def gamma(u: Involution, space: PairSpace) -> PairPoint:
    plus, minus = eigenspaces(u.matrix, space.ambient)
    p = space.find(plus, minus)
    if p is None:
        raise ValueError("eigenspace pair is not a point of the given pair space")
    return p


def _eigen_point(u: Involution, ambient: Ambient) -> PairPoint:
    plus, minus = eigenspaces(u.matrix, ambient)
    return PairPoint(plus, minus, True)


def involutions_adjacent(u: Involution, v: Involution, ambient: Ambient) -> bool:
    if ambient.field.p == 2:
        raise ValueError("characteristic 2")
    return pair_adjacent(_eigen_point(u, ambient), _eigen_point(v, ambient))


def is_transvection(w: Matrix) -> bool:
    """``w - 1`` has rank one and squares to zero."""
    d = mat_sub(w, identity(w.field, w.nrows))
    return rank(d) == 1 and all(x == 0 for r in matmul(d, d).rows for x in r)
