from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hyperelliptic.finite_group import (FiniteGroup, GroupError, QmodZCharacter, abelian_group,
                                        character_from_generator_values, character_group,
                                        cyclic_group, is_homomorphism, is_real_valued,
                                        trivial_group)


def s3():
    perms = [(0, 1, 2), (1, 0, 2), (0, 2, 1), (2, 1, 0), (1, 2, 0), (2, 0, 1)]
    index = {p: i for i, p in enumerate(perms)}
    table = [[index[tuple(p[q[k]] for k in range(3))] for q in perms] for p in perms]
    return FiniteGroup(tuple(map(tuple, table)))


def test_cyclic_and_abelian():
    G = cyclic_group(6)
    assert G.order == 6 and G.is_cyclic() and G.is_abelian() and G.exponent() == 6
    assert G.element_order(G.generators[0]) == 6
    K = abelian_group([2, 2])
    assert K.order == 4 and not K.is_cyclic() and K.exponent() == 2
    assert K.coords[3] == (1, 1)
    assert trivial_group().order == 1


def test_nonabelian():
    G = s3()
    assert not G.is_abelian() and G.exponent() == 6
    with pytest.raises(GroupError):
        character_group(G)


def test_table_validation():
    with pytest.raises(GroupError, match="permutations"):
        FiniteGroup(((0, 0), (1, 0)))
    with pytest.raises(GroupError, match="identity"):
        FiniteGroup(((0, 1), (0, 1)))
    with pytest.raises(GroupError, match="associativity"):
        # a Latin square with identity 0 that is not associative
        FiniteGroup(((0, 1, 2, 3, 4), (1, 0, 3, 4, 2), (2, 4, 0, 1, 3),
                     (3, 2, 4, 0, 1), (4, 3, 1, 2, 0)))
    with pytest.raises(GroupError, match="do not generate"):
        FiniteGroup(cyclic_group(4).mul, generators=(2,))


def test_order_bound():
    with pytest.raises(GroupError, match="exceeds"):
        abelian_group([5, 13])
    assert abelian_group([4, 4, 4]).order == 64


@pytest.mark.parametrize("factors", [[2], [3], [6], [2, 2], [2, 4], [3, 3], [2, 6]])
def test_character_group(factors):
    G = abelian_group(factors)
    chars = character_group(G)
    assert len(chars) == G.order
    assert chars[0].is_trivial()
    for chi in chars:
        assert is_homomorphism(G, chi.values)
    # closed under addition
    keys = {chi.values for chi in chars}
    for a in chars:
        for b in chars:
            assert (a + b).values in keys


def test_character_from_generators():
    G = abelian_group([2, 2])
    chi = character_from_generator_values(G, ["1/2", "0"])
    assert chi.on_generators(G) == (Fraction(1, 2), 0)
    assert chi.order() == 2 and is_real_valued(chi)
    with pytest.raises(GroupError):
        character_from_generator_values(G, ["1/3", "0"])
    Z3 = cyclic_group(3)
    w = character_from_generator_values(Z3, ["1/3"])
    assert not is_real_valued(w) and (w * 3).is_trivial()


@given(st.integers(2, 12), st.integers(0, 11))
def test_character_values_mod_one(m, k):
    G = cyclic_group(m)
    chi = character_from_generator_values(G, [Fraction(k, m)])
    assert all(0 <= v < 1 for v in chi.values)
    assert (chi - chi).is_trivial()
    assert QmodZCharacter(tuple(v + 1 for v in chi.values)) == chi
