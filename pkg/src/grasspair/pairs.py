"""Pairs (S, U) of a k-space and an (n-k)-space, and the relations between them."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import CeilingExceeded
from .grassmann import (
    Ambient,
    Subspace,
    adjacent,
    complementary,
    gaussian_binomial,
    incident,
    intersection,
    pencil,
    span,
)
from .linalg import Matrix, rank

DEFAULT_PAIR_CEILING = 250_000


class Kind(str, enum.Enum):
    COMPLEMENTARY = "g"
    FULL_PRODUCT = "full"


class Relation(str, enum.Enum):
    ADJACENCY = "adj"
    CLOSENESS = "close"


@dataclass(frozen=True)
class PairPoint:
    s: Subspace
    u: Subspace
    complementary: bool = field(compare=False)
    id: int = field(compare=False, default=-1)

    def __repr__(self):
        return f"PairPoint(id={self.id}, s={self.s.id}, u={self.u.id})"


def space_size(ambient: Ambient, kind: Kind) -> int:
    n, k, q = ambient.n, ambient.k, ambient.q
    gk = gaussian_binomial(n, k, q)
    if Kind(kind) is Kind.COMPLEMENTARY:
        return gk * q ** (k * (n - k))
    return gk * gaussian_binomial(n, n - k, q)


class PairSpace:
    """Enumerated point set, ordered by first component id then second."""

    def __init__(self, ambient: Ambient, kind: Kind, points):
        self.ambient = ambient
        self.kind = Kind(kind)
        self.points = tuple(points)
        self.index = {(p.s.id, p.u.id): p for p in self.points}

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __getitem__(self, i) -> PairPoint:
        return self.points[i]

    def __repr__(self):
        return f"PairSpace({self.ambient.params}, kind={self.kind.value}, size={len(self)})"

    def find(self, s: Subspace, u: Subspace) -> PairPoint | None:
        return self.index.get((s.id, u.id))

    def __contains__(self, p) -> bool:
        return isinstance(p, PairPoint) and self.index.get((p.s.id, p.u.id)) == p

    @cached_property
    def s_ids(self) -> np.ndarray:
        return np.array([p.s.id for p in self.points], dtype=np.int64)

    @cached_property
    def u_ids(self) -> np.ndarray:
        return np.array([p.u.id for p in self.points], dtype=np.int64)

    @cached_property
    def id_table(self) -> np.ndarray:
        """``id_table[s_id, u_id]`` is the point id, or -1 if the pair is absent."""
        amb = self.ambient
        t = np.full(
            (len(amb.grassmannian(amb.k)), len(amb.grassmannian(amb.n - amb.k))), -1, dtype=np.int64
        )
        t[self.s_ids, self.u_ids] = np.arange(len(self))
        return t

    def by_first(self) -> dict[int, list[PairPoint]]:
        groups: dict[int, list[PairPoint]] = {}
        for p in self.points:
            groups.setdefault(p.s.id, []).append(p)
        return groups

    def by_second(self) -> dict[int, list[PairPoint]]:
        groups: dict[int, list[PairPoint]] = {}
        for p in self.points:
            groups.setdefault(p.u.id, []).append(p)
        return groups


def count_complementary(ambient: Ambient) -> int:
    """|𝒢| by testing every (S, U) for a common point, without building the pair space."""
    seconds = [U.mask for U in ambient.grassmannian(ambient.n - ambient.k)]
    return sum(1 for S in ambient.grassmannian(ambient.k) for um in seconds if not S.mask & um)


def enumerate_pairs(ambient: Ambient, kind: Kind = Kind.COMPLEMENTARY, ceiling: int = DEFAULT_PAIR_CEILING) -> PairSpace:
    kind = Kind(kind)
    size = space_size(ambient, kind)
    if size > ceiling:
        raise CeilingExceeded(f"pair space of size {size} exceeds ceiling {ceiling}")
    n, k = ambient.n, ambient.k
    firsts = ambient.grassmannian(k)
    seconds = ambient.grassmannian(n - k)
    points = []
    for S in firsts:
        sm = S.mask
        for U in seconds:
            comp = not (sm & U.mask)
            if comp or kind is Kind.FULL_PRODUCT:
                points.append(PairPoint(S, U, comp, len(points)))
    assert len(points) == size
    return PairSpace(ambient, kind, points)


def _check_pair(a: PairPoint, b: PairPoint):
    if not a.s.ambient.same_space(b.s.ambient) or a.s.dim != b.s.dim or a.u.dim != b.u.dim:
        raise ValueError("points belong to different pair spaces")


def pair_adjacent(a: PairPoint, b: PairPoint) -> bool:
    """Equal in one component and adjacent in the other."""
    _check_pair(a, b)
    if a.s == b.s:
        return adjacent(a.u, b.u)
    if a.u == b.u:
        return adjacent(a.s, b.s)
    return False


def pair_close(a: PairPoint, b: PairPoint) -> bool:
    """Agree in exactly one component (Hamming distance 1)."""
    _check_pair(a, b)
    return (a.s == b.s) != (a.u == b.u)


def sub_g(P: Subspace, T: Subspace, space: PairSpace) -> list[PairPoint]:
    """Points (S, U) of ``space`` with S incident to P and U incident to T."""
    pm, tm = P.mask, T.mask
    out = []
    for pt in space:
        sm, um = pt.s.mask, pt.u.mask
        x, y = sm & pm, um & tm
        if (x == sm or x == pm) and (y == um or y == tm):
            out.append(pt)
    return out


def adjacency_matrix(ambient: Ambient, i: int) -> np.ndarray:
    """Boolean adjacency of the subspaces in 𝒢_i, indexed by id."""
    subs = ambient.grassmannian(i)
    npts = len(ambient.grassmannian(1))
    inc = np.zeros((len(subs), npts), dtype=np.int64)
    for S in subs:
        inc[S.id, list(S.point_ids)] = 1
    meet = inc @ inc.T
    q = ambient.q
    if i == 0:
        return np.zeros((len(subs), len(subs)), dtype=bool)
    target = (q ** (i - 1) - 1) // (q - 1)
    return meet == target


class RelationGraph:
    """Undirected graph on the point ids of a pair space, rows stored as int bitsets."""

    def __init__(self, nvertices: int, rows: list[int], space: PairSpace | None = None, relation: Relation | None = None):
        self.nvertices = nvertices
        self.rows = rows
        self.space = space
        self.relation = relation

    @classmethod
    def from_edges(cls, nvertices: int, edges, space=None, relation=None) -> RelationGraph:
        rows = [0] * nvertices
        for a, b in edges:
            if a == b:
                raise ValueError("self-loops are not allowed")
            rows[a] |= 1 << b
            rows[b] |= 1 << a
        return cls(nvertices, rows, space, relation)

    def __len__(self):
        return self.nvertices

    def neighbors(self, v: int) -> list[int]:
        r, out = self.rows[v], []
        while r:
            low = r & -r
            out.append(low.bit_length() - 1)
            r ^= low
        return out

    def has_edge(self, a: int, b: int) -> bool:
        return bool(self.rows[a] >> b & 1)

    def degree(self, v: int) -> int:
        return self.rows[v].bit_count()

    @cached_property
    def edges(self) -> list[tuple[int, int]]:
        return [(a, b) for a in range(self.nvertices) for b in self.neighbors(a) if a < b]

    @property
    def edge_count(self) -> int:
        return sum(r.bit_count() for r in self.rows) // 2

    @cached_property
    def edge_array(self) -> np.ndarray:
        return np.array(self.edges, dtype=np.int64).reshape(-1, 2)

    @cached_property
    def matrix(self) -> np.ndarray:
        m = np.zeros((self.nvertices, self.nvertices), dtype=bool)
        e = self.edge_array
        m[e[:, 0], e[:, 1]] = True
        m[e[:, 1], e[:, 0]] = True
        return m


def build_graph(space: PairSpace, relation: Relation) -> RelationGraph:
    relation = Relation(relation)
    amb = space.ambient
    n, k = amb.n, amb.k
    if relation is Relation.ADJACENCY:
        adj_first = adjacency_matrix(amb, k)
        adj_second = adjacency_matrix(amb, n - k)
    rows = [0] * len(space)
    for groups, other in ((space.by_first(), "u"), (space.by_second(), "s")):
        for members in groups.values():
            if relation is Relation.CLOSENESS:
                full = 0
                for p in members:
                    full |= 1 << p.id
                for p in members:
                    rows[p.id] |= full & ~(1 << p.id)
                continue
            adj = adj_second if other == "u" else adj_first
            for i, p in enumerate(members):
                pi = getattr(p, other).id
                for r in members[i + 1:]:
                    if adj[pi, getattr(r, other).id]:
                        rows[p.id] |= 1 << r.id
                        rows[r.id] |= 1 << p.id
    return RelationGraph(len(space), rows, space, relation)


# --- connecting sequences -------------------------------------------------


def _step_towards(F: Subspace, X: Subspace, Y: Subspace) -> Subspace:
    """One step from complement X of F towards complement Y of F.

    W: a hyperplane of X through X∩Y; H = W + F; P' a point of Y off H;
    the result P' + W is a complement of F adjacent to X and meeting Y
    in one more dimension.
    """
    amb = F.ambient
    field = amb.field
    m = X.dim
    rows = list(intersection(X, Y).basis)
    for v in X.basis:
        if len(rows) == m - 1:
            break
        if rank(Matrix(field, tuple(rows) + (v,), amb.n)) > len(rows):
            rows.append(v)
    W = amb.subspace(rows)
    H = span(W, F)
    assert H.dim == amb.n - 1
    P = next(amb.subspace([v]) for v in Y.basis if not amb.subspace([v]) <= H)
    return amb.subspace(W.basis + P.basis)


def _move(F: Subspace, X: Subspace, Y: Subspace) -> list[Subspace]:
    """Complements X = X_0, X_1, ..., X_d = Y of F, consecutive ones adjacent; X_0 omitted."""
    out = []
    while X != Y:
        X = _step_towards(F, X, Y)
        out.append(X)
    return out


def connect_path(a: PairPoint, b: PairPoint, space: PairSpace) -> list[PairPoint]:
    """Adjacent steps leading from ``a`` to ``b`` inside 𝒢.

    Returns the points after ``a`` (so ``a == b`` gives ``[]``).  When the
    endpoints share a component, that component stays fixed along the path.
    """
    if space.kind is not Kind.COMPLEMENTARY:
        raise ValueError("connect_path works inside the complementary pair space")
    for p in (a, b):
        if not complementary(p.s, p.u):
            raise ValueError(f"{p} is not a complementary pair")
    S, U, S2, U2 = a.s, a.u, b.s, b.u
    if S == S2:
        return [space.find(S, X) for X in _move(S, U, U2)]
    if U == U2:
        return [space.find(X, U) for X in _move(U, S, S2)]
    amb = space.ambient
    common = next(X for X in amb.grassmannian(amb.n - amb.k) if complementary(S, X) and complementary(S2, X))
    path = [space.find(S, X) for X in _move(S, U, common)]
    path += [space.find(X, common) for X in _move(common, S, S2)]
    path += [space.find(S2, X) for X in _move(S2, common, U2)]
    return path


# --- product-space lines --------------------------------------------------


def perp_set(points, space: PairSpace) -> list[PairPoint]:
    """Points adjacent or equal to every given point."""
    points = list(points)
    return [p for p in space if all(p == x or pair_adjacent(p, x) for x in points)]


def double_perp(a: PairPoint, b: PairPoint, space: PairSpace) -> list[PairPoint]:
    if not pair_adjacent(a, b):
        raise ValueError("double_perp needs two adjacent points")
    return perp_set(perp_set([a, b], space), space)


def grassmann_lines(ambient: Ambient, i: int) -> list[list[Subspace]]:
    """All pencils of 𝒢_i: X with P ⊂ X ⊂ T for P ∈ 𝒢_{i-1}, T ∈ 𝒢_{i+1}."""
    lines = []
    for P in ambient.grassmannian(i - 1):
        for T in ambient.grassmannian(i + 1):
            if P <= T:
                lines.append(pencil(P, T))
    return lines


def segre_lines(space: PairSpace) -> list[list[PairPoint]]:
    """Lines {S} x pencil and pencil x {U} of the product space."""
    amb = space.ambient
    n, k = amb.n, amb.k
    lines = []
    for S in amb.grassmannian(k):
        for line in grassmann_lines(amb, n - k):
            pts = [space.find(S, U) for U in line]
            if all(p is not None for p in pts):
                lines.append(pts)
    for line in grassmann_lines(amb, k):
        for U in amb.grassmannian(n - k):
            pts = [space.find(S, U) for S in line]
            if all(p is not None for p in pts):
                lines.append(pts)
    return lines
