import pytest

from cayley7 import oracles
from cayley7.atlas import builtin_group
from cayley7.cosets import (CosetLimitExceeded, commutator_word, coset_index, enumerate_cosets,
                            evaluate_word, power_word)
from cayley7.groups import PermGroup


def test_cyclic_and_dihedral():
    assert coset_index(1, [[1] * 7]) == 7
    # D8 = <a,b | a^4, b^2, (ab)^2>
    assert coset_index(2, [[1] * 4, [2, 2], [1, 2, 1, 2]]) == 8
    assert coset_index(2, [[1] * 4, [2, 2], [1, 2, 1, 2]], subgroup=[[1]]) == 2


@pytest.mark.parametrize("rels,order", [
    ([[1, 1], [2, 2, 2], power_word([1, 2], 5)], 60),   # A5
    ([[1, 1], [2, 2, 2], power_word([1, 2], 4)], 24),   # S4
    ([[1, 1], [2, 2, 2], power_word([1, 2], 7), power_word(commutator_word([1], [2]), 4)], 168),
])
def test_triangle_presentations(rels, order):
    assert coset_index(2, rels) == order


def test_action_is_faithful_representation():
    rels = [[1, 1], [2, 2, 2], power_word([1, 2], 5)]
    images = enumerate_cosets(2, rels)
    G = PermGroup(images)
    assert G.order() == 60
    for r in rels:
        assert evaluate_word(r, images) == tuple(range(60))


def test_subgroup_action_matches_a5_on_points():
    rels = [[1, 1], [2, 2, 2], power_word([1, 2], 5)]
    images = enumerate_cosets(2, rels, subgroup=[[2], [1, 2, 1, -2, 1]])
    G = PermGroup(images)
    assert len(images[0]) == G.degree
    assert G.order() == 60 and G.is_transitive()


def test_limit():
    with pytest.raises(CosetLimitExceeded):
        coset_index(2, [[1, 1], [2, 2, 2], power_word([1, 2], 5)], max_cosets=10)


def test_words():
    assert commutator_word([1], [2]) == [-1, -2, 1, 2]
    a, b = (1, 0, 2), (0, 2, 1)
    assert evaluate_word([1, -1], [a, b]) == (0, 1, 2)
    from cayley7.perm import mul
    assert evaluate_word([1, 2], [a, b]) == mul(a, b)
