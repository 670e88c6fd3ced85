import pytest
from hypothesis import given, strategies as st

from cayley7.perm import (Permutation, compose, conj, cycle_type, format_cycles, from_cycles,
                          identity, inv, is_two_element, mul, order, parse_permutation, power,
                          sign)
from conftest import perms


def two_line_product(p, q):
    """Oracle: apply p then q, written out as two-line form pairs."""
    top = list(range(len(p)))
    first = dict(zip(top, p))
    second = dict(zip(top, q))
    return tuple(second[first[x]] for x in top)


def test_parse_three_cycle():
    p = parse_permutation("(0 1 2)", 5)
    assert tuple(p) == (1, 2, 0, 3, 4)


def test_parse_identity_token():
    assert tuple(parse_permutation("id", 4)) == (0, 1, 2, 3)


def test_parse_involution():
    assert tuple(parse_permutation("(0 4)(1 2)", 5)) == (4, 2, 1, 3, 0)


@pytest.mark.parametrize("text", ["(0 1)(1 2)", "(0 5)", "(0 1", "0 1)", "(a b)", "(0 0)"])
def test_parse_rejects_bad_input(text):
    with pytest.raises(ValueError):
        parse_permutation(text, 5)


def test_three_cycle_squared():
    c = parse_permutation("(0 1 2)", 3)
    assert compose(c, c) == parse_permutation("(0 2 1)", 3)


def test_transposition_product_matches_two_line_oracle():
    a, b = parse_permutation("(0 1)", 3), parse_permutation("(1 2)", 3)
    got = compose(a, b)
    assert tuple(got) == two_line_product(a, b)
    # 0 -> 1 -> 2, 1 -> 0, 2 -> 1
    assert got == parse_permutation("(0 2 1)", 3)


def test_compose_degree_mismatch():
    with pytest.raises(ValueError):
        compose((0, 1), (0, 1, 2))


@given(perms(7), perms(7))
def test_mul_matches_two_line_oracle(p, q):
    assert mul(p, q) == two_line_product(p, q)


@given(perms(6), perms(6), perms(6))
def test_associative(p, q, r):
    assert mul(mul(p, q), r) == mul(p, mul(q, r))


@given(perms(8))
def test_inverse(p):
    assert mul(p, inv(p)) == identity(8) == mul(inv(p), p)


@given(perms(8))
def test_format_parse_roundtrip(p):
    assert tuple(parse_permutation(format_cycles(p), 8)) == p


@given(perms(7), perms(7))
def test_conjugation_is_g_inverse_p_g(p, g):
    assert conj(p, g) == mul(mul(inv(g), p), g)
    assert cycle_type(conj(p, g)) == cycle_type(p)


@given(perms(7), st.integers(-20, 20))
def test_power_matches_repeated_product(p, k):
    expect = identity(7)
    base = p if k >= 0 else inv(p)
    for _ in range(abs(k)):
        expect = mul(expect, base)
    assert power(p, k) == expect


@given(perms(8))
def test_order_and_two_elements(p):
    o = order(p)
    assert power(p, o) == identity(8)
    assert all(power(p, k) != identity(8) for k in range(1, o))
    assert is_two_element(p) == (o & (o - 1) == 0)


@given(perms(6), perms(6))
def test_sign_is_multiplicative(p, q):
    assert sign(mul(p, q)) == sign(p) * sign(q)


def test_permutation_class_operators():
    p = Permutation(from_cycles([(0, 1, 2)], 4))
    assert p * p == Permutation(from_cycles([(0, 2, 1)], 4))
    assert (~p) * p == Permutation(identity(4))
    assert p ** 3 == Permutation(identity(4))
    assert p(0) == 1 and p.order() == 3


def test_permutation_rejects_non_bijection():
    with pytest.raises(ValueError):
        Permutation((0, 0, 1))
