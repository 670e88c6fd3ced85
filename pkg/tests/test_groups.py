import random

import pytest
from hypothesis import given, strategies as st

from cayley7 import oracles
from cayley7.atlas import builtin_group, load_witness
from cayley7.chain import StabilizerChain
from cayley7.groups import (PermGroup, center, conjugacy_classes, derived_series, is_simple,
                            membership_test, normal_closure, orbit, point_stabilizer)
from cayley7.perm import conj, from_cycles, mul, parse_permutation
from conftest import perms

CATALOG = ["S:4", "A:4", "A:5", "S:5", "C:7", "A:6", "PSL32@7", "PSL32@8", "S:6", "A:7",
           "PSL28@9", "AGL32"]


@pytest.mark.parametrize("name", CATALOG)
def test_chain_order_matches_element_count(name):
    G = builtin_group(name)
    assert G.order() == len(oracles.closure(G.generators, G.degree))


def test_known_orders(witness_dir):
    assert builtin_group("A:8").order() == 20160
    assert PermGroup([from_cycles([tuple(range(7))], 7)]).order() == 7
    assert load_witness(witness_dir / "M24.wit").order() == 244823040


def test_chain_product_of_orbits():
    G = builtin_group("A:8")
    ch = G.chain
    size = 1
    for s in ch.orbit_sizes():
        size *= s
    assert size == G.order()


def test_base_prefix_is_respected():
    ch = StabilizerChain(8, builtin_group("A:8").generators, base_prefix=(5, 3))
    assert tuple(ch.base[:2]) == (5, 3)
    assert ch.order() == 20160


def test_membership_a4():
    A4 = builtin_group("A:4")
    assert membership_test(A4, parse_permutation("(0 1)(2 3)", 4))
    assert not membership_test(A4, parse_permutation("(0 1)", 4))


@pytest.mark.parametrize("name", ["A:5", "PSL32@7", "S:4", "A:7"])
def test_membership_matches_enumeration(name):
    G = builtin_group(name)
    elems = oracles.closure(G.generators, G.degree)
    rng = random.Random(7)
    inside = list(elems)
    for _ in range(500):
        p = tuple(rng.sample(range(G.degree), G.degree))
        assert G.contains(p) == (p in elems)
        q = rng.choice(inside)
        assert G.contains(q)


def test_sifting_random_words():
    G = builtin_group("PSL28@9")
    rng = random.Random(3)
    for _ in range(50):
        x = G.identity()
        for _ in range(rng.randint(1, 50)):
            x = mul(x, rng.choice(G.generators))
        assert G.contains(x)


def test_orbits():
    assert orbit(builtin_group("A:5"), 0) == {0, 1, 2, 3, 4}
    assert orbit(PermGroup([from_cycles([(0, 1)], 4)]), 2) == {2}
    G = PermGroup([from_cycles([(0, 1, 2)], 5), from_cycles([(3, 4)], 5)])
    assert orbit(G, 3) == {3, 4}


def test_point_stabilizers():
    assert point_stabilizer(builtin_group("A:8"), 0).order() == 2520
    assert point_stabilizer(builtin_group("C:7"), 0).order() == 1


def test_orbit_stabilizer_random_subgroups(S7):
    rng = random.Random(11)
    for _ in range(50):
        H = PermGroup([S7.random_element(rng) for _ in range(rng.randint(1, 3))], degree=7)
        for v in range(7):
            assert len(H.orbit(v)) * H.point_stabilizer(v).order() == H.order()


def normal_closure_oracle(G, gens):
    elems = oracles.closure(G.generators, G.degree)
    conjs = {conj(tuple(h), g) for h in gens for g in elems}
    return oracles.closure(conjs, G.degree)


def test_normal_closure_examples():
    S5, A5 = builtin_group("S:5"), builtin_group("A:5")
    c = [from_cycles([(0, 1, 2)], 5)]
    assert normal_closure(S5, c).order() == 60 == len(normal_closure_oracle(S5, c))
    assert normal_closure(A5, c).order() == 60
    assert normal_closure(S5, S5).order() == 120


def test_normal_closure_rejects_outside():
    with pytest.raises(ValueError):
        normal_closure(builtin_group("A:5"), [from_cycles([(0, 1)], 5)])


def test_derived_series():
    assert [H.order() for H in derived_series(builtin_group("S:5"))] == [120, 60, 60]
    assert [H.order() for H in derived_series(builtin_group("A:5"))] == [60, 60]
    assert [H.order() for H in derived_series(PermGroup([], degree=3))] == [1]


def test_center():
    assert center(builtin_group("S:3")).order() == 1
    assert center(builtin_group("C:6")).order() == 6


def test_center_of_covers(witness_dir):
    assert center(load_witness(witness_dir / "3A7.wit")).order() == 3
    assert center(load_witness(witness_dir / "2A7.wit")).order() == 2


def class_sizes(G, **kw):
    return sorted(size for _, size in conjugacy_classes(G, **kw))


def test_conjugacy_classes_examples():
    # frozen from oracles.conjugacy_class_sizes
    assert class_sizes(builtin_group("A:5")) == [1, 12, 12, 15, 20]
    assert class_sizes(builtin_group("C:7")) == [1] * 7
    assert class_sizes(builtin_group("PSL32@7")) == [1, 21, 24, 24, 42, 56]


@pytest.mark.parametrize("name", ["A:5", "S:5", "PSL32@7", "A:6", "S:4"])
def test_class_sizes_match_oracle(name):
    G = builtin_group(name)
    got = class_sizes(G)
    assert got == oracles.conjugacy_class_sizes(oracles.closure(G.generators, G.degree))
    assert sum(got) == G.order() and all(G.order() % s == 0 for s in got)


def test_sampled_classes_m11(witness_dir):
    M11 = load_witness(witness_dir / "M11.wit")
    sizes = class_sizes(M11)
    assert sum(sizes) == 7920 and len(sizes) == 10


@pytest.mark.parametrize("name,simple", [("A:5", True), ("S:5", False), ("A:4", False),
                                         ("PSL32@7", True), ("A:6", True), ("PSL28@9", True)])
def test_is_simple(name, simple):
    assert is_simple(builtin_group(name)) == simple


def test_is_simple_rejects_trivial():
    with pytest.raises(ValueError):
        is_simple(PermGroup([], degree=3))


@given(st.lists(perms(6), min_size=1, max_size=3))
def test_chain_order_property(gens):
    G = PermGroup(gens, degree=6)
    assert G.order() == len(oracles.closure(gens, 6))
