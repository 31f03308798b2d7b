import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from constacyclic.code import field_for_q
from constacyclic.field import (ExtField, fix_root, make_extension, make_field, parse_element)

FIELDS = [2, 3, 4, 5, 7, 8, 9, 16, 25, 27]


def slow_mul(F, a, b):
    """Schoolbook product of digit vectors reduced by the field modulus."""
    p, m = F.p, F.m
    da = [(a // p**i) % p for i in range(m)]
    db = [(b // p**i) % p for i in range(m)]
    prod = [0] * (2 * m - 1)
    for i, x in enumerate(da):
        for j, y in enumerate(db):
            prod[i + j] = (prod[i + j] + x * y) % p
    mod = list(F.modulus)  # low-first, monic of degree m
    for d in range(len(prod) - 1, m - 1, -1):
        c = prod[d]
        if c:
            for i in range(m + 1):
                prod[d - m + i] = (prod[d - m + i] - c * mod[i]) % p
    return sum(prod[i] * p**i for i in range(m))


@pytest.mark.parametrize("q", FIELDS)
def test_mul_matches_schoolbook(q):
    F = field_for_q(q)
    for a, b in itertools.product(range(q), repeat=2):
        assert F.mul(a, b) == slow_mul(F, a, b)


@pytest.mark.parametrize("q", FIELDS)
def test_field_axioms(q):
    F = field_for_q(q)
    for a in range(1, q):
        assert F.mul(a, F.inv(a)) == 1
        assert F.add(a, F.neg(a)) == 0
    assert F.order(F.xi) == q - 1
    assert sorted(F.xi_pow(e) for e in range(q - 1)) == list(range(1, q))


def test_canonical_choices():
    assert make_field(2, 2).modulus == (1, 1, 1)
    assert make_field(2, 2).xi == 2
    assert make_field(5).xi == 2
    assert make_field(7).xi == 3
    assert make_field(3, 2).modulus == (1, 0, 1)
    assert make_field(2, 3).modulus == (1, 1, 0, 1)


def test_format_and_parse():
    F4 = field_for_q(4)
    assert [F4.format_element(a) for a in range(4)] == ["0", "1", "w", "w^2"]
    assert parse_element(F4, "w") == 2
    assert parse_element(F4, "w^2") == 3
    F5 = field_for_q(5)
    assert parse_element(F5, "x^2") == 4
    assert parse_element(F5, "7") == 2


@pytest.mark.parametrize("q", [6, 10, 12, 1])
def test_not_prime_power(q):
    with pytest.raises(ValueError):
        field_for_q(q)


@given(st.sampled_from(FIELDS), st.data())
@settings(max_examples=60, deadline=None)
def test_vector_ops_agree_with_scalar(q, data):
    F = field_for_q(q)
    a = np.array(data.draw(st.lists(st.integers(0, q - 1), min_size=5, max_size=5)))
    b = np.array(data.draw(st.lists(st.integers(0, q - 1), min_size=5, max_size=5)))
    assert list(F.vadd(a, b)) == [F.add(int(x), int(y)) for x, y in zip(a, b)]
    assert list(F.vmul(a, b)) == [F.mul(int(x), int(y)) for x, y in zip(a, b)]


@given(st.sampled_from([3, 4, 5, 7, 8, 9]), st.integers(0, 200), st.integers(0, 200))
@settings(max_examples=60, deadline=None)
def test_log_homomorphism(q, e1, e2):
    F = field_for_q(q)
    x, y = F.xi_pow(e1), F.xi_pow(e2)
    assert F.log(F.mul(x, y)) == (e1 + e2) % (q - 1)
    assert F.pow(x, -1) == F.inv(x)


def test_field_elem_operators():
    F = field_for_q(9)
    x = F(F.xi)
    assert (x ** 8).value == 1
    assert (x * x / x) == x
    assert (x - x).value == 0


@pytest.mark.parametrize("q,order", [(3, 20), (4, 117), (2, 7), (5, 28)])
def test_extension_has_root_of_unity(q, order):
    F = field_for_q(q)
    E, alpha0 = make_extension(F, order)
    assert isinstance(E, ExtField)
    assert E.order(alpha0) == order
    assert E.pow(alpha0, order) == E.one


@pytest.mark.parametrize("q,n,a", [(3, 10, 2), (4, 39, 2), (5, 12, 2), (7, 8, 6), (5, 14, 4)])
def test_fixed_root(q, n, a):
    F = field_for_q(q)
    R = fix_root(F, n, a)
    E = R.ext
    assert E.pow(R.alpha, n) == E.embed(a)
    assert E.order(R.alpha) == R.tn
    assert R.tn == n * F.order(a)
