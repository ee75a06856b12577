"""Table-driven arithmetic in small finite fields GF(p^e).

Elements are the integers ``0 .. q-1``.  An element with index ``x`` stands
for the polynomial ``sum(c_i * t**i)`` where ``c_i`` are the base-``p`` digits
of ``x``; so 0 and 1 are always the additive and multiplicative identities.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property, lru_cache

import numpy as np

MAX_ORDER = 256


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def prime_power(q: int) -> tuple[int, int]:
    """Split ``q`` into ``(p, e)`` with ``q == p**e``; raise if not a prime power."""
    if q < 2:
        raise ValueError(f"field order must be a prime power, got {q}")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    e, r = 0, q
    while r % p == 0:
        r //= p
        e += 1
    if r != 1:
        raise ValueError(f"field order must be a prime power, got {q}")
    return p, e


# --- polynomials over GF(p), coefficient lists, lowest degree first ---------

def _poly_trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a, m, p):
    a = _poly_trim(a)
    m = _poly_trim(m)
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) >= len(m):
        c = a[-1] * inv_lead % p
        shift = len(a) - len(m)
        for i, mc in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mc) % p
        a = _poly_trim(a)
    return a


def is_irreducible(poly, p: int) -> bool:
    """Brute-force irreducibility test: no monic factor of degree <= deg/2."""
    poly = _poly_trim(poly)
    deg = len(poly) - 1
    if deg < 1:
        return False
    for d in range(1, deg // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            if _poly_mod(poly, list(low) + [1], p) == []:
                return False
    return True


def least_irreducible(p: int, e: int) -> tuple[int, ...]:
    """Monic irreducible of degree ``e`` whose coefficient string, read from the
    highest degree down, is least (equivalently: least integer value in base p)."""
    for value in range(p**e):
        low = [(value // p**i) % p for i in range(e)]
        cand = low + [1]
        if is_irreducible(cand, p):
            return tuple(cand)
    raise ValueError(f"no irreducible polynomial of degree {e} over GF({p})")


@dataclass(frozen=True, eq=False)
class FieldTable:
    p: int
    e: int
    reduction_polynomial: tuple[int, ...]
    add_table: np.ndarray = field(repr=False)
    mul_table: np.ndarray = field(repr=False)
    neg_table: np.ndarray = field(repr=False)
    inv_table: np.ndarray = field(repr=False)
    generator: int = 0

    @property
    def q(self) -> int:
        return self.p**self.e

    @property
    def key(self) -> tuple:
        return (self.p, self.e, self.reduction_polynomial)

    def __eq__(self, other):
        return isinstance(other, FieldTable) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    # Plain nested lists: scalar indexing on these is far cheaper than on arrays.
    @cached_property
    def add(self) -> list[list[int]]:
        return self.add_table.tolist()

    @cached_property
    def mul(self) -> list[list[int]]:
        return self.mul_table.tolist()

    @cached_property
    def neg(self) -> list[int]:
        return self.neg_table.tolist()

    @cached_property
    def inv(self) -> list[int]:
        return self.inv_table.tolist()

    @cached_property
    def sub(self) -> list[list[int]]:
        return self.add_table[:, self.neg_table].tolist()

    def elements(self) -> range:
        return range(self.q)

    def automorphisms(self) -> list[FieldAutomorphism]:
        return [FieldAutomorphism(self, j) for j in range(self.e)]

    @cached_property
    def frobenius_tables(self) -> np.ndarray:
        """Row ``j`` is the table of ``x -> x**(p**j)``."""
        rows = [np.arange(self.q)]
        for _ in range(1, self.e):
            prev = rows[-1]
            cur = prev.copy()
            for _ in range(self.p - 1):
                cur = self.mul_table[cur, prev]
            rows.append(cur)
        return np.array(rows, dtype=np.int64)

    def __repr__(self):
        if self.e == 1:
            return f"GF({self.q})"
        return f"GF({self.q}, poly={list(self.reduction_polynomial)})"


@dataclass(frozen=True)
class FieldAutomorphism:
    field: FieldTable
    frobenius_power: int = 0

    def __post_init__(self):
        if not 0 <= self.frobenius_power < self.field.e:
            raise ValueError(
                f"Frobenius power must lie in [0, {self.field.e}), got {self.frobenius_power}"
            )

    def __call__(self, x: int) -> int:
        return apply_automorphism(self, x)

    @property
    def table(self) -> np.ndarray:
        return self.field.frobenius_tables[self.frobenius_power]


def apply_automorphism(sigma: FieldAutomorphism, x: int) -> int:
    if not 0 <= x < sigma.field.q:
        raise ValueError(f"{x} is not an element of {sigma.field}")
    return int(sigma.table[x])


def _check_axioms(add, mul, inv, q):
    add, mul = add.astype(np.int16), mul.astype(np.int16)
    a = np.arange(q)
    assert (add == add.T).all() and (mul == mul.T).all(), "commutativity"
    assert (add[0] == a).all() and (mul[1] == a).all(), "identities"
    assert (add[add, :] == add[:, add]).all(), "additive associativity"
    assert (mul[mul, :] == mul[:, mul]).all(), "multiplicative associativity"
    lhs = mul[:, add]
    rhs = add[mul[:, :, None], mul[:, None, :]]
    assert (lhs == rhs).all(), "distributivity"
    assert (mul[a[1:], inv[1:]] == 1).all(), "inverses"
    assert ((add == 0).sum(axis=1) == 1).all(), "additive inverses"


@lru_cache(maxsize=None)
def _build(p: int, e: int, poly: tuple[int, ...]) -> FieldTable:
    q = p**e
    digits = [[(x // p**i) % p for i in range(e)] for x in range(q)]

    def encode(coeffs):
        coeffs = list(coeffs) + [0] * (e - len(coeffs))
        return sum(c * p**i for i, c in enumerate(coeffs[:e]))

    add = np.zeros((q, q), dtype=np.int64)
    mul = np.zeros((q, q), dtype=np.int64)
    for x in range(q):
        for y in range(q):
            add[x, y] = encode([(a + b) % p for a, b in zip(digits[x], digits[y])])
            prod = [0] * (2 * e - 1)
            for i, a in enumerate(digits[x]):
                if a:
                    for j, b in enumerate(digits[y]):
                        prod[i + j] = (prod[i + j] + a * b) % p
            mul[x, y] = encode(_poly_mod(prod, poly, p) if e > 1 else prod)
    neg = np.argmin(add, axis=1)
    inv = np.zeros(q, dtype=np.int64)
    for x in range(1, q):
        inv[x] = int(np.flatnonzero(mul[x] == 1)[0])
    _check_axioms(add, mul, inv, q)

    generator = 0
    for g in range(1, q):
        x, order = g, 1
        while x != 1:
            x = mul[x, g]
            order += 1
        if order == q - 1:
            generator = g
            break
    for t in (add, mul, neg, inv):
        t.setflags(write=False)
    return FieldTable(p, e, poly, add, mul, neg, inv, generator)


def build_field(p: int, e: int = 1, reduction_polynomial=None, ceiling: int = MAX_ORDER) -> FieldTable:
    """Construct GF(p^e) with lookup tables, checking the field axioms exhaustively."""
    if not is_prime(p):
        raise ValueError(f"characteristic must be prime, got {p}")
    if e < 1:
        raise ValueError(f"extension degree must be >= 1, got {e}")
    if p**e > ceiling:
        raise ValueError(f"field order {p**e} exceeds ceiling {ceiling}")
    if e == 1:
        poly = (0, 1)
    elif reduction_polynomial is None:
        poly = least_irreducible(p, e)
    else:
        poly = tuple(int(c) % p for c in reduction_polynomial)
        if len(_poly_trim(poly)) != e + 1 or poly[-1] != 1:
            raise ValueError(f"reduction polynomial must be monic of degree {e}")
        if not is_irreducible(poly, p):
            raise ValueError(f"polynomial {list(poly)} is reducible over GF({p})")
    return _build(p, e, poly)


def field_of_order(q: int, reduction_polynomial=None, ceiling: int = MAX_ORDER) -> FieldTable:
    p, e = prime_power(q)
    if q > ceiling:
        raise ValueError(f"field order {q} exceeds ceiling {ceiling}")
    return build_field(p, e, reduction_polynomial, ceiling)
