import itertools
import math
import random

import pytest

from grasspair.automorphisms import brute_force_automorphisms, graph_automorphisms, is_automorphism, is_group
from grasspair.cliques import degeneracy_order, is_clique, maximal_cliques
from grasspair.errors import CeilingExceeded
from grasspair.grassmann import Ambient
from grasspair.pairs import Relation, RelationGraph, build_graph, enumerate_pairs


def random_graph(n, p, rng):
    return RelationGraph.from_edges(n, [e for e in itertools.combinations(range(n), 2) if rng.random() < p])


def brute_maximal_cliques(g):
    cliques = [s for r in range(1, len(g) + 1) for s in itertools.combinations(range(len(g)), r) if is_clique(g, s)]
    sets = [set(c) for c in cliques]
    return sorted(c for c, s in zip(cliques, sets) if not any(s < t for t in sets))


@pytest.mark.parametrize("seed", range(12))
def test_cliques_match_subset_enumeration(seed):
    rng = random.Random(seed)
    g = random_graph(rng.randint(1, 10), rng.choice([0.2, 0.5, 0.8]), rng)
    assert maximal_cliques(g) == brute_maximal_cliques(g)


def test_clique_edge_cases():
    assert maximal_cliques(RelationGraph(1, [0])) == [(0,)]
    assert maximal_cliques(RelationGraph(3, [0, 0, 0])) == [(0,), (1,), (2,)]
    with pytest.raises(CeilingExceeded):
        maximal_cliques(RelationGraph(3, [0, 0, 0]), ceiling=2)


def test_degeneracy_order_is_a_permutation():
    g = random_graph(15, 0.3, random.Random(0))
    assert sorted(degeneracy_order(g)) == list(range(15))


def test_pair_space_clique_counts():
    g = build_graph(enumerate_pairs(Ambient(3, 1, 2)), Relation.CLOSENESS)
    cl = maximal_cliques(g)
    assert len(cl) == 14 and {len(c) for c in cl} == {4}


@pytest.mark.parametrize("m", range(1, 6))
def test_edgeless_graph_has_full_symmetric_group(m):
    assert len(graph_automorphisms(RelationGraph(m, [0] * m))) == math.factorial(m)


@pytest.mark.parametrize("n", [3, 4, 5, 7])
def test_cycle_has_dihedral_group(n):
    g = RelationGraph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])
    auts = graph_automorphisms(g)
    assert len(auts) == 2 * n and is_group(auts)


@pytest.mark.parametrize("seed", range(15))
def test_refinement_matches_brute_force(seed):
    rng = random.Random(100 + seed)
    g = random_graph(rng.randint(2, 7), rng.choice([0.3, 0.5, 0.7]), rng)
    assert graph_automorphisms(g) == brute_force_automorphisms(g)


def test_vertex_transitive_graph_against_brute_force():
    # the 3-cube: 8 vertices, adjacent when codes differ in one bit
    g = RelationGraph.from_edges(8, [(a, b) for a, b in itertools.combinations(range(8), 2) if (a ^ b).bit_count() == 1])
    assert graph_automorphisms(g) == brute_force_automorphisms(g, max_vertices=8)


def test_pair_space_automorphism_groups():
    g6 = build_graph(enumerate_pairs(Ambient(2, 1, 2)), Relation.CLOSENESS)
    auts = graph_automorphisms(g6)
    assert len(auts) == 12 == len(brute_force_automorphisms(g6))
    g28 = build_graph(enumerate_pairs(Ambient(3, 1, 2)), Relation.CLOSENESS)
    auts = graph_automorphisms(g28)
    assert len(auts) == 336 and is_group(auts)
    assert all(is_automorphism(g28, p) for p in auts[::10])


def test_automorphism_ceilings():
    g = RelationGraph(10, [0] * 10)
    with pytest.raises(CeilingExceeded):
        graph_automorphisms(g, vertex_ceiling=5)
    with pytest.raises(CeilingExceeded):
        graph_automorphisms(g, limit=100)
    with pytest.raises(CeilingExceeded):
        brute_force_automorphisms(g)


def test_is_group_rejects_non_groups():
    assert not is_group([(1, 0, 2)])
    assert not is_group([(0, 1, 2), (1, 2, 0)])
    assert is_group([(0, 1, 2), (1, 2, 0), (2, 0, 1)])
