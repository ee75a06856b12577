"""Maximal clique enumeration (Bron–Kerbosch with pivoting) on bitset graphs."""

from __future__ import annotations

from .errors import CeilingExceeded
from .pairs import RelationGraph

DEFAULT_CLIQUE_CEILING = 20_000


def _bits(x: int):
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def degeneracy_order(graph: RelationGraph) -> list[int]:
    """Vertices in smallest-last order (repeatedly remove a vertex of minimum degree)."""
    rows = graph.rows
    alive = (1 << len(graph)) - 1
    deg = [r.bit_count() for r in rows]
    order = []
    for _ in range(len(graph)):
        v = min(_bits(alive), key=lambda x: (deg[x], x))
        order.append(v)
        alive &= ~(1 << v)
        for u in _bits(rows[v] & alive):
            deg[u] -= 1
    return order


def maximal_cliques(graph: RelationGraph, ceiling: int = DEFAULT_CLIQUE_CEILING) -> list[tuple[int, ...]]:
    """All maximal cliques as sorted id tuples, the list itself sorted."""
    if len(graph) > ceiling:
        raise CeilingExceeded(f"{len(graph)} vertices exceed clique ceiling {ceiling}")
    rows = graph.rows
    out = []

    def expand(R, P, X):
        if not P:
            if not X:
                out.append(tuple(sorted(R)))
            return
        pivot = max(_bits(P | X), key=lambda u: (P & rows[u]).bit_count())
        for v in list(_bits(P & ~rows[pivot])):
            bit = 1 << v
            expand(R + [v], P & rows[v], X & rows[v])
            P &= ~bit
            X |= bit

    later = (1 << len(graph)) - 1
    for v in degeneracy_order(graph):
        later &= ~(1 << v)
        earlier = ((1 << len(graph)) - 1) & ~later & ~(1 << v)
        expand([v], rows[v] & later, rows[v] & earlier)
    return sorted(out)


def is_clique(graph: RelationGraph, vertices) -> bool:
    vs = list(vertices)
    return all(graph.has_edge(a, b) for i, a in enumerate(vs) for b in vs[i + 1:])
