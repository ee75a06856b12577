import itertools
import math
import random

import numpy as np
import pytest

from grasspair.errors import CeilingExceeded
from grasspair.grassmann import Ambient, complementary
from grasspair.linalg import Matrix, identity, matmul
from grasspair.pairs import Kind, PairPoint, enumerate_pairs
from grasspair.transforms import (
    DualityMap,
    Involution,
    PairTransformation,
    SemilinearMap,
    Shape,
    apply_pair_transformation,
    catalog,
    catalog_size,
    compose_perms,
    eigenspaces,
    enumerate_involutions,
    gamma,
    group_tables,
    induce_duality,
    induce_grassmannian,
    invert_perm,
    is_transvection,
    map_source,
    perp_table,
)
from grasspair.verify import alternating_duality, check_lemma1


def pgaml_order(n, q):
    """|PΓL(n, q)| from |GL(n, q)|, the scalars, and the Frobenius group."""
    p = next(d for d in range(2, q + 1) if q % d == 0)
    e = round(math.log(q, p))
    gl = math.prod(q**n - q**i for i in range(n))
    return gl // (q - 1) * e


def expected_catalog_size(n, k, q):
    if n == 2:
        return 2 * math.factorial(q + 1)
    return pgaml_order(n, q) * (4 if n == 2 * k else 2)


def random_semilinear(amb, rng):
    F = amb.field
    while True:
        rows = [[rng.randrange(F.q) for _ in range(amb.n)] for _ in range(amb.n)]
        try:
            return SemilinearMap(Matrix.of(F, rows), rng.randrange(F.e))
        except ValueError:
            continue


@pytest.mark.parametrize("params", [(2, 1, 2), (2, 1, 3), (2, 1, 4), (3, 1, 2), (3, 2, 2), (3, 1, 3), (4, 1, 2)])
def test_catalog_sizes(params):
    amb = Ambient(*params)
    cat = catalog(amb)
    assert len(cat) == expected_catalog_size(*params) == catalog_size(amb, Kind.COMPLEMENTARY)
    assert len(cat.perm_set) == len(cat)


def test_catalog_size_422():
    amb = Ambient(4, 2, 2)
    assert catalog_size(amb, Kind.COMPLEMENTARY) == expected_catalog_size(4, 2, 2) == 80640


def test_catalog_ceiling():
    with pytest.raises(CeilingExceeded):
        catalog(Ambient(3, 1, 4), ceiling=1000)


@pytest.mark.parametrize("params", [(2, 1, 2), (3, 1, 2), (3, 2, 2)])
def test_catalog_is_a_group(params):
    cat = catalog(Ambient(*params))
    P = cat.perms.astype(np.int64)
    assert cat.contains_perm(np.arange(P.shape[1]))
    for row in P:
        assert cat.contains_perm(invert_perm(row))
        comp = row[P]  # row ∘ every element
        assert all(cat.contains_perm(c) for c in comp)


def test_full_product_catalog_sizes():
    assert len(catalog(Ambient(2, 1, 2), Kind.FULL_PRODUCT)) == 2 * math.factorial(3) ** 2
    assert catalog_size(Ambient(3, 1, 2), Kind.FULL_PRODUCT) == 2 * math.factorial(7) ** 2


def test_semilinear_composition_and_inverse():
    amb = Ambient(3, 1, 4)
    rng = random.Random(1)
    for _ in range(20):
        a, b = random_semilinear(amb, rng), random_semilinear(amb, rng)
        ab = a.compose(b)
        for v in itertools.islice(itertools.product(range(4), repeat=3), 0, 64, 5):
            assert ab(v) == a(b(v))
            assert a.inverse()(a(v)) == tuple(v)


def test_semilinear_map_is_additive_and_twisted():
    amb = Ambient(2, 1, 4)
    F = amb.field
    l = SemilinearMap(identity(F, 2), 1)
    frob = F.frobenius_tables[1]
    for c, x in itertools.product(range(4), repeat=2):
        v = (x, 1)
        cv = tuple(F.mul[c][t] for t in v)
        assert l(cv) == tuple(F.mul[int(frob[c])][t] for t in l(v))


def test_group_tables_match_direct_induction():
    amb = Ambient(3, 1, 4)
    gt = group_tables(amb, (1, 2))
    rng = random.Random(3)
    for idx in rng.sample(range(len(gt)), 25):
        l = gt.source(idx, amb)
        for i in (1, 2):
            for S in amb.grassmannian(i)[::3]:
                assert gt.tables[i][idx, S.id] == induce_grassmannian(l, S).id


def test_duality_tables_are_perp_of_induced():
    amb = Ambient(4, 2, 2)
    gt = group_tables(amb, (2,))
    perp = perp_table(amb, 2)
    for idx in range(0, len(gt), 997):
        s = gt.source(idx, amb, duality=True)
        for S in amb.grassmannian(2)[::4]:
            assert perp[gt.tables[2][idx, S.id]] == induce_duality(s, S).id


def test_catalog_entries_come_from_their_sources():
    amb = Ambient(3, 1, 2)
    cat = catalog(amb)
    space = cat.space
    for t in cat.maps[::17]:
        src = map_source(t, amb)
        induce = induce_duality if isinstance(src, DualityMap) else induce_grassmannian
        for p in space.points[::5]:
            img = t(p)
            if t.shape is Shape.PRODUCT:
                assert (img.s, img.u) == (induce(src, p.s), induce(src, p.u))
            else:
                assert (img.s, img.u) == (induce(src, p.u), induce(src, p.s))


@pytest.mark.parametrize("params", [(3, 1, 2), (4, 2, 2), (3, 1, 3)])
def test_lemma1(params):
    assert check_lemma1(Ambient(*params)).status == "PASS"


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_alternating_duality_is_identity_on_projective_line(q):
    amb = Ambient(2, 1, q)
    s = alternating_duality(amb)
    assert all(induce_duality(s, P) == P for P in amb.grassmannian(1))


def test_pair_transformation_validation():
    amb = Ambient(2, 1, 2)
    space = enumerate_pairs(amb)
    with pytest.raises(ValueError):
        PairTransformation(Shape.PRODUCT, [0, 0, 1], [0, 1, 2], space)
    with pytest.raises(ValueError):
        PairTransformation(Shape.PRODUCT, [0, 1], [0, 1, 2], space)
    # f' != f'' does not stabilize the complementary pairs on a projective line
    t = PairTransformation(Shape.PRODUCT, [0, 1, 2], [1, 0, 2], space)
    with pytest.raises(ValueError):
        for p in space:
            apply_pair_transformation(t, p)


def test_compose_and_invert_perms():
    a = np.array([2, 0, 1])
    b = np.array([1, 2, 0])
    assert compose_perms(a, b).tolist() == [0, 1, 2]
    assert invert_perm(a).tolist() == b.tolist()


@pytest.mark.parametrize("params", [(2, 1, 3), (3, 1, 3), (3, 2, 3), (2, 1, 5)])
def test_involutions_biject_onto_pairs(params):
    amb = Ambient(*params)
    space = enumerate_pairs(amb)
    J = enumerate_involutions(amb)
    assert len(J) == len(space)
    images = {gamma(u, space).id for u in J}
    assert images == set(range(len(space)))
    for u in J[:10]:
        plus, minus = eigenspaces(u.matrix, amb)
        assert plus.dim == amb.k and complementary(plus, minus)


def test_involution_validation():
    F2 = Ambient(2, 1, 2).field
    with pytest.raises(ValueError):
        Involution(identity(F2, 2), 2)
    F3 = Ambient(2, 1, 3).field
    with pytest.raises(ValueError):
        Involution(Matrix.of(F3, [[1, 1], [0, 1]]), 1)
    with pytest.raises(ValueError):
        enumerate_involutions(Ambient(3, 1, 2))


def test_transvection_examples():
    F = Ambient(3, 1, 3).field
    assert is_transvection(Matrix.of(F, [[1, 1, 0], [0, 1, 0], [0, 0, 1]]))
    assert not is_transvection(identity(F, 3))
    # rank-one difference that does not square to zero
    assert not is_transvection(Matrix.of(F, [[2, 0, 0], [0, 1, 0], [0, 0, 1]]))
    sq = Matrix.of(F, [[1, 1, 0], [0, 1, 1], [0, 0, 1]])
    assert not is_transvection(sq)
    a = Matrix.of(F, [[1, 0, 0], [2, 1, 0], [0, 0, 1]])
    assert is_transvection(matmul(a, a))


def test_pair_point_helpers_are_plain_data():
    amb = Ambient(2, 1, 3)
    space = enumerate_pairs(amb)
    p = space[3]
    assert isinstance(p, PairPoint) and space.find(p.s, p.u) is p
