"""
Unit Tests for Partial Actions and Actions of S(G)

Tests the set level, the algebra level and the S(G)-action built from them:
- Axiom checks with witnesses on valid and invalid actions
- Induced function-algebra actions and the zero-product action
- E_s / beta_s from standard forms, the bijection with partial actions

Author: excross Team
"""

import pytest
import sys
import os

from hypothesis import given, settings as hypothesis_settings, strategies as st

# Add src to path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))

from src.algebra import ideals_idempotent_check
from src.errors import InvalidAction
from src.semigroup import SElem, group_semigroup
from src.fixtures import STANDARD_FIXTURES, get_fixture, restricted_action
from src.groups import cyclic_group
from src.linalg import Subspace, arrays_equal, matrix, unit_vector, vector
from src.partial_action import (
    algebra_action,
    check_bijection,
    check_bracket_intersections,
    check_e_monotone,
    check_set_sg_action,
    check_set_universal,
    check_sg_action,
    check_star_compatibility,
    check_word_form,
    induce_algebra_action,
    restrict_to_group,
    set_action,
    to_set_sg_action,
    to_sg_action,
    validate_algebra_action,
    validate_set_action,
)


def all_passed(results):
    return all(r.passed for r in results)


class TestSetLevel:
    """Test suite for set-level partial actions."""

    @pytest.mark.parametrize("name", STANDARD_FIXTURES)
    def test_standard_fixtures_are_valid(self, name):
        P = get_fixture(name).set_action
        assert all_passed(validate_set_action(P))
        assert all_passed(check_set_universal(P))

    def test_missing_inverse_map_is_the_converse(self):
        G = cyclic_group(3)
        P = set_action(G, 2, {1: [(0, 1)]})
        assert sorted(P.theta[2].pairs) == [(1, 0)]
        assert P.domain(1) == frozenset({1})
        assert P.source(1) == frozenset({0})

    def test_broken_z4_is_rejected_with_witness(self):
        P = get_fixture("broken_z4").set_action
        results = validate_set_action(P)
        failed = [r for r in results if not r.passed]
        assert failed
        assert failed[0].name == "theta_g(X_{g^-1} ∩ X_h) = X_g ∩ X_{gh}"
        assert failed[0].witness == {"g": "a", "h": "a", "x": 0}
        with pytest.raises(InvalidAction):
            induce_algebra_action(P)

    def test_sg_action_on_sets(self):
        P = get_fixture("swap").set_action
        assert all_passed(check_set_sg_action(P))
        B = to_set_sg_action(P)
        # e_a[e] acts as the identity of X_a
        assert sorted(B.theta[SElem((1,), 0)].pairs) == [(0, 0), (1, 1)]

    @hypothesis_settings(max_examples=25, deadline=None)
    @given(st.sets(st.integers(0, 3), min_size=0, max_size=4))
    def test_restricted_global_actions_are_partial_actions(self, subset):
        G = cyclic_group(4)
        rotations = {g: tuple((x + g) % 4 for x in range(4)) for g in G.elements}
        P = restricted_action(G, rotations, sorted(subset)) if subset else set_action(G, 1, {})
        assert all_passed(validate_set_action(P))
        assert all_passed(check_set_sg_action(P))


class TestAlgebraLevel:
    """Test suite for algebra-level partial actions."""

    @pytest.fixture
    def p1_alpha(self):
        return get_fixture("p1").algebra_action()

    def test_induced_ideals(self, p1_alpha):
        assert p1_alpha.algebra.dim == 2
        assert p1_alpha.ideal(0) == Subspace.full(2)
        assert p1_alpha.ideal(1) == Subspace.span([unit_vector(2, 0)], 2)
        assert arrays_equal(p1_alpha.apply(1, unit_vector(2, 0)), unit_vector(2, 0))

    @pytest.mark.parametrize("name", STANDARD_FIXTURES)
    def test_induced_actions_validate(self, name):
        alpha = get_fixture(name).algebra_action()
        assert all_passed(validate_algebra_action(alpha))
        assert all_passed(ideals_idempotent_check(alpha))

    def test_zero_product_action(self):
        alpha = get_fixture("zero_product").algebra_action()
        assert all_passed(validate_algebra_action(alpha))
        # D_a · D_a = 0, so D_a is not idempotent
        idempotent = ideals_idempotent_check(alpha)
        assert idempotent[0].passed
        assert not idempotent[1].passed
        image = alpha.apply(1, vector([0, 1, 0]))
        assert alpha.algebra.render(image) == "x + y"
        assert alpha.algebra.render(alpha.apply(1, vector([0, 0, 1]))) == "-y"

    def test_wrong_matrix_shape(self):
        G = cyclic_group(2)
        A = get_fixture("zero_product").algebra_action().algebra
        with pytest.raises(InvalidAction):
            algebra_action(G, A, {1: [vector([0, 1, 0])]}, {1: matrix([[1, 0]])})

    def test_singular_alpha(self):
        G = cyclic_group(2)
        A = get_fixture("zero_product").algebra_action().algebra
        alpha = algebra_action(G, A, {1: [vector([0, 1, 0]), vector([0, 0, 1])]}, {1: matrix([[1, 1], [1, 1]])})
        failed = {r.name for r in validate_algebra_action(alpha) if not r.passed}
        assert "alpha_g is a linear bijection D_{g^-1} -> D_g" in failed

    def test_dependent_ideal_basis(self):
        G = cyclic_group(2)
        A = get_fixture("zero_product").algebra_action().algebra
        with pytest.raises(InvalidAction):
            algebra_action(G, A, {1: [vector([0, 1, 0]), vector([0, 2, 0])]}, {})

    def test_non_multiplicative_alpha(self):
        # alpha_a(e1) = e0 + e1 breaks e0 e1 = 0
        G = cyclic_group(2)
        A = get_fixture("p1").algebra_action().algebra
        alpha = algebra_action(G, A, {1: [unit_vector(2, 0), unit_vector(2, 1)]},
                               {1: matrix([[1, 1], [0, 1]])})
        results = validate_algebra_action(alpha)
        failed = {r.name for r in results if not r.passed}
        assert "alpha_g is multiplicative" in failed


class TestSgAction:
    """Test suite for the action of S(G) built from standard forms."""

    @pytest.fixture
    def p1_sg(self):
        return to_sg_action(get_fixture("p1").algebra_action())

    def test_p1_ideals(self, p1_sg):
        S = p1_sg.semigroup
        dims = {S.render(s): p1_sg.E[s].rank for s in S}
        assert dims == {"[e]": 2, "e_{a}[e]": 1, "[a]": 1}

    def test_p1_checks(self, p1_sg):
        assert all_passed(check_sg_action(p1_sg))
        assert check_e_monotone(p1_sg).passed
        assert check_bracket_intersections(p1_sg).passed
        assert check_word_form(p1_sg, seed=3, samples=100).passed
        assert check_star_compatibility(p1_sg).passed

    def test_restriction_round_trip(self, p1_sg):
        alpha = p1_sg.source
        assert restrict_to_group(p1_sg) == alpha
        assert all_passed(check_bijection(alpha))

    @pytest.mark.parametrize("name", ["swap", "z3_rotation", "global_z2", "degenerate", "zero_product"])
    def test_sg_action_axioms(self, name):
        B = to_sg_action(get_fixture(name).algebra_action())
        assert all_passed(check_sg_action(B))
        assert check_e_monotone(B).passed
        assert check_bracket_intersections(B).passed

    def test_sym3_partial_has_112_elements(self):
        B = to_sg_action(get_fixture("sym3_partial").algebra_action())
        assert len(B.E) == len(group_semigroup(B.group)) == 112
        assert check_bracket_intersections(B).passed
