"""
Unit Tests for the Inverse Semigroup S(G)

Tests standard forms, products and the structural sweeps:
- Enumeration sizes 2^(n-1) + (n-1)2^(n-2)
- Closed-form product, involution and the natural partial order
- Universal property against a map into partial bijections

Author: excross Team
"""

import pytest
import sys
import os

# Add src to path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))

from src.errors import GroupMismatch, GroupTooLarge, IndexOutOfRange
from src.semigroup import (
    SElem,
    check_associativity,
    check_closure,
    check_epsilon_commutation,
    check_gamma_homomorphism,
    check_idempotents_commute,
    check_inverse_uniqueness,
    check_leq_characterization,
    check_order_compatibility,
    check_star_involution,
    check_universal_relations,
    check_word_evaluation,
    element_to_word,
    group_semigroup,
    multiplication_table,
    s_enumerate,
    s_epsilon,
    s_generator,
    s_leq,
    s_multiply,
    s_star,
    semigroup_size,
    universal_extension,
    word_to_element,
)
from src.groups import PartialBijection, cyclic_group, klein_four_group, symmetric_group_3


class TestStandardForms:
    """Test suite for elements, products and the involution."""

    @pytest.fixture
    def z2(self):
        return cyclic_group(2)

    @pytest.fixture
    def z3(self):
        return cyclic_group(3)

    def test_z2_elements(self, z2):
        S = group_semigroup(z2)
        assert [S.render(x) for x in S] == ["[e]", "e_{a}[e]", "[a]"]

    @pytest.mark.parametrize("group, expected", [
        (cyclic_group(1), 1),
        (cyclic_group(2), 3),
        (cyclic_group(3), 8),
        (klein_four_group(), 20),
        (cyclic_group(4), 20),
        (symmetric_group_3(), 112),
    ])
    def test_enumeration_size(self, group, expected):
        assert semigroup_size(group.order) == expected
        assert len(s_enumerate(group)) == expected

    def test_generator_squared_in_z2(self, z2):
        a = s_generator(z2, 1)
        assert s_multiply(z2, a, a) == SElem((1,), 0)

    def test_generator_is_self_adjoint_in_z2(self, z2):
        a = s_generator(z2, 1)
        assert s_star(z2, a) == a
        assert s_multiply(z2, s_multiply(z2, a, a), a) == a

    def test_epsilon_of_identity_is_unit(self, z3):
        assert s_epsilon(z3, 0) == s_generator(z3, 0)

    def test_epsilon_commutation_orientation(self, z3):
        # [h] e_g = e_{hg} [h]
        h, g = 1, 1
        lhs = s_multiply(z3, s_generator(z3, h), s_epsilon(z3, g))
        rhs = s_multiply(z3, s_epsilon(z3, z3.multiply(h, g)), s_generator(z3, h))
        assert lhs == rhs == SElem((2,), 1)

    def test_defining_relations_hold(self, z3):
        gen = lambda g: s_generator(z3, g)
        mul = lambda x, y: s_multiply(z3, x, y)
        for g in z3.elements:
            for h in z3.elements:
                g_inv = z3.inverse(g)
                assert mul(mul(gen(g_inv), gen(g)), gen(h)) == mul(gen(g_inv), gen(z3.multiply(g, h)))
                h_inv = z3.inverse(h)
                assert mul(mul(gen(g), gen(h)), gen(h_inv)) == mul(gen(z3.multiply(g, h)), gen(h_inv))
            assert mul(gen(g), gen(0)) == gen(g)

    def test_leq(self, z2):
        unit = SElem((), 0)
        e_a = SElem((1,), 0)
        assert s_leq(e_a, unit)
        assert not s_leq(unit, e_a)
        assert not s_leq(SElem((), 1), unit)

    def test_word_round_trip(self, z3):
        S = group_semigroup(z3)
        for x in S:
            word = element_to_word(z3, x)
            assert len(word) == len(x.eps) + 1
            assert word_to_element(z3, word) == x

    def test_empty_word_rejected(self, z2):
        with pytest.raises(IndexOutOfRange):
            word_to_element(z2, [])

    def test_foreign_element_rejected(self, z2):
        with pytest.raises(GroupMismatch):
            s_multiply(z2, SElem((), 2), SElem((), 0))

    def test_group_too_large(self):
        with pytest.raises(GroupTooLarge):
            s_enumerate(cyclic_group(5), max_order=4)

    def test_multiplication_table_shape(self, z2):
        table = multiplication_table(z2)
        assert table["elements"] == ["[e]", "e_{a}[e]", "[a]"]
        # [a][a] = e_{a}[e]
        assert table["table"][2][2] == 1


class TestStructuralSweeps:
    """Every structural sweep passes on the small groups."""

    @pytest.fixture(params=["z2", "z3", "klein4", "sym3"])
    def semigroup(self, request):
        group = {
            "z2": cyclic_group(2),
            "z3": cyclic_group(3),
            "klein4": klein_four_group(),
            "sym3": symmetric_group_3(),
        }[request.param]
        return group_semigroup(group)

    def test_closure(self, semigroup):
        assert check_closure(semigroup).passed

    def test_associativity(self, semigroup):
        samples = 2000 if len(semigroup) > 50 else None
        assert check_associativity(semigroup, samples=samples, seed=7).passed

    def test_inverses_and_involution(self, semigroup):
        assert check_inverse_uniqueness(semigroup).passed
        assert check_star_involution(semigroup).passed

    def test_order(self, semigroup):
        samples = 2000 if len(semigroup) > 50 else None
        assert check_order_compatibility(semigroup, samples=samples).passed
        assert check_leq_characterization(semigroup).passed

    def test_idempotents_and_gamma(self, semigroup):
        assert check_idempotents_commute(semigroup).passed
        assert check_gamma_homomorphism(semigroup).passed
        assert check_epsilon_commutation(semigroup).passed
        assert check_word_evaluation(semigroup).passed

    def test_idempotent_count(self, semigroup):
        # idempotents are the subsets of G \ {e}
        assert len(semigroup.idempotent_positions) == 2 ** (semigroup.group.order - 1)


class TestUniversalProperty:
    """A partial action into partial bijections factors through S(G)."""

    @pytest.fixture
    def theta(self):
        # Z2 acting on {0, 1}: the generator fixes 0 and is undefined on 1
        maps = {0: PartialBijection.identity(2), 1: PartialBijection(2, frozenset({(0, 0)}))}
        return cyclic_group(2), maps

    def test_relations_hold(self, theta):
        G, maps = theta
        results = check_universal_relations(G, maps.__getitem__, lambda f, g: f.compose(g), label="theta")
        assert all(r.passed for r in results)

    def test_extension_is_multiplicative(self, theta):
        G, maps = theta
        compose = lambda f, g: f.compose(g)
        ext = universal_extension(G, maps.__getitem__, compose)
        S = group_semigroup(G)
        for x in S:
            for y in S:
                assert ext[S.multiply(x, y)] == compose(ext[x], ext[y])

    def test_group_map_violating_relations(self):
        # a non-homomorphic assignment into a group fails a cancellation relation
        G = cyclic_group(3)
        f = {0: 0, 1: 1, 2: 1}.__getitem__
        results = check_universal_relations(G, f, lambda a, b: (a + b) % 3)
        assert not all(r.passed for r in results)
