import itertools

import numpy as np
import pytest

from grasspair.field import (
    FieldAutomorphism,
    build_field,
    field_of_order,
    is_irreducible,
    least_irreducible,
    prime_power,
)


def naive_mul(x, y, p, e, poly):
    """Schoolbook polynomial product reduced by repeated subtraction of the modulus."""
    dx = [(x // p**i) % p for i in range(e)]
    dy = [(y // p**i) % p for i in range(e)]
    prod = [0] * (2 * e)
    for i, j in itertools.product(range(e), repeat=2):
        prod[i + j] = (prod[i + j] + dx[i] * dy[j]) % p
    for deg in range(2 * e - 1, e - 1, -1):
        c = prod[deg]
        if c:
            for t in range(e + 1):
                prod[deg - e + t] = (prod[deg - e + t] - c * poly[t]) % p
    return sum(prod[i] * p**i for i in range(e))


@pytest.mark.parametrize("p", [2, 3, 5, 7, 13])
def test_prime_fields_are_modular_arithmetic(p):
    F = build_field(p)
    a = np.arange(p)
    assert (F.add_table == (a[:, None] + a[None, :]) % p).all()
    assert (F.mul_table == (a[:, None] * a[None, :]) % p).all()
    assert all((x * F.inv[x]) % p == 1 for x in range(1, p))


def test_gf4_by_hand():
    # x^2 + x + 1 over GF(2): elements 0, 1, x=2, x+1=3
    F = field_of_order(4)
    assert F.reduction_polynomial == (1, 1, 1)
    assert F.mul[2][2] == 3
    assert F.mul[2][3] == 1
    assert F.add[2][3] == 1
    assert F.inv[2] == 3
    assert F.frobenius_tables[1].tolist() == [0, 1, 3, 2]


@pytest.mark.parametrize("q", [4, 8, 9, 16, 25, 27])
def test_extension_fields_match_naive_multiplication(q):
    F = field_of_order(q)
    p, e = F.p, F.e
    for x, y in itertools.product(range(q), repeat=2):
        assert F.mul[x][y] == naive_mul(x, y, p, e, F.reduction_polynomial)


@pytest.mark.parametrize("q", [2, 3, 4, 8, 9, 27])
def test_multiplicative_group_is_cyclic(q):
    F = field_of_order(q)
    g, seen, x = F.generator, set(), 1
    for _ in range(q - 1):
        x = F.mul[x][g]
        seen.add(x)
    assert seen == set(range(1, q))


def test_frobenius_is_automorphism_of_expected_order():
    F = field_of_order(8)
    t = FieldAutomorphism(F, 1).table
    assert sorted(t.tolist()) == list(range(8))
    for x, y in itertools.product(range(8), repeat=2):
        assert t[F.mul[x][y]] == F.mul[t[x]][t[y]]
        assert t[F.add[x][y]] == F.add[t[x]][t[y]]
    cube = t[t[t]]
    assert cube.tolist() == list(range(8))
    assert len(F.automorphisms()) == 3


def test_least_irreducible_reads_highest_degree_first():
    # degree-2 irreducibles over GF(3), monic: x^2+1, x^2+x+2, x^2+2x+2
    assert least_irreducible(3, 2) == (1, 0, 1)
    assert least_irreducible(2, 3) == (1, 1, 0, 1)


def test_irreducibility_against_root_search():
    for p in (2, 3, 5):
        for c0, c1 in itertools.product(range(p), repeat=2):
            poly = (c0, c1, 1)
            has_root = any((c0 + c1 * x + x * x) % p == 0 for x in range(p))
            assert is_irreducible(poly, p) == (not has_root)


def test_custom_polynomial_gives_isomorphic_field():
    F = build_field(3, 2, (2, 2, 1))
    assert F.reduction_polynomial == (2, 2, 1)
    assert F.q == 9 and F != field_of_order(9)


@pytest.mark.parametrize(
    "call",
    [
        lambda: field_of_order(6),
        lambda: field_of_order(1),
        lambda: build_field(4),
        lambda: build_field(2, 2, (1, 0, 1)),  # x^2+1 = (x+1)^2 over GF(2)
        lambda: field_of_order(512),
    ],
)
def test_rejections(call):
    with pytest.raises(ValueError):
        call()


def test_prime_power():
    assert prime_power(27) == (3, 3)
    assert prime_power(2) == (2, 1)
    with pytest.raises(ValueError):
        prime_power(12)


def test_field_table_is_read_only():
    F = field_of_order(5)
    with pytest.raises(ValueError):
        F.mul_table[1, 1] = 0
