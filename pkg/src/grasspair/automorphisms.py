"""Graph automorphisms by colour refinement, individualization and backtracking."""

from __future__ import annotations

import itertools
from collections import Counter

from .errors import CeilingExceeded
from .pairs import RelationGraph

DEFAULT_VERTEX_CEILING = 64


def refine(nbrs: list[list[int]], colors: list[int]) -> tuple[list[int], tuple]:
    """Coarsest equitable refinement of ``colors``.

    New colours are ranks of (old colour, neighbour colour counts) signatures, so
    isomorphic inputs produce matching colours and identical traces.
    """
    trace = []
    ncolors = len(set(colors))
    while True:
        sigs = [(colors[v], tuple(sorted(Counter(colors[u] for u in nbrs[v]).items()))) for v in range(len(colors))]
        ranked = sorted(set(sigs))
        rank = {s: i for i, s in enumerate(ranked)}
        colors = [rank[s] for s in sigs]
        counts = Counter(colors)
        trace.append(tuple((s, counts[rank[s]]) for s in ranked))
        if len(ranked) == ncolors:
            return colors, tuple(trace)
        ncolors = len(ranked)


def _individualize(colors: list[int], v: int) -> list[int]:
    out = [2 * c for c in colors]
    out[v] += 1
    return out


def is_automorphism(graph: RelationGraph, perm) -> bool:
    rows = graph.rows
    for a in range(len(graph)):
        image = 0
        r = rows[a]
        while r:
            low = r & -r
            image |= 1 << perm[low.bit_length() - 1]
            r ^= low
        if image != rows[perm[a]]:
            return False
    return True


def graph_automorphisms(graph: RelationGraph, vertex_ceiling: int = DEFAULT_VERTEX_CEILING, limit: int | None = None) -> list[tuple[int, ...]]:
    """The full automorphism group as a sorted list of permutations (``perm[v]`` = image of v).

    Every leaf of the search tree is a discrete pair of colourings; the
    induced bijection is kept when it maps edges onto edges.
    """
    n = len(graph)
    if n > vertex_ceiling:
        raise CeilingExceeded(f"{n} vertices exceed automorphism ceiling {vertex_ceiling}")
    nbrs = [graph.neighbors(v) for v in range(n)]
    found = []

    def search(left, right):
        if limit is not None and len(found) > limit:
            raise CeilingExceeded(f"more than {limit} automorphisms")
        cells = Counter(left)
        target = next((c for c in sorted(cells) if cells[c] > 1), None)
        if target is None:
            where = {c: w for w, c in enumerate(right)}
            perm = tuple(where[left[v]] for v in range(n))
            if is_automorphism(graph, perm):
                found.append(perm)
            return
        v = min(x for x in range(n) if left[x] == target)
        left2, lt = refine(nbrs, _individualize(left, v))
        for w in range(n):
            if right[w] != target:
                continue
            right2, rt = refine(nbrs, _individualize(right, w))
            if rt == lt:
                search(left2, right2)

    if n:
        base, _ = refine(nbrs, [0] * n)
        search(base, list(base))
    else:
        found.append(())
    return sorted(found)


def brute_force_automorphisms(graph: RelationGraph, max_vertices: int = 9) -> list[tuple[int, ...]]:
    """Check every permutation; only for tiny graphs."""
    n = len(graph)
    if n > max_vertices:
        raise CeilingExceeded(f"{n}! permutations is too many for brute force")
    return [p for p in itertools.permutations(range(n)) if is_automorphism(graph, p)]


def is_group(perms) -> bool:
    """Closed under composition and inverses, contains the identity."""
    perms = [tuple(p) for p in perms]
    if not perms:
        return False
    pool = set(perms)
    n = len(perms[0])
    if tuple(range(n)) not in pool:
        return False
    for a in perms:
        inv = [0] * n
        for i, x in enumerate(a):
            inv[x] = i
        if tuple(inv) not in pool:
            return False
        for b in perms:
            if tuple(a[x] for x in b) not in pool:
                return False
    return True

