"""
Unit Tests for Covariant Representations

Tests the natural representation of a set-level action on Q^X:
- Partial-isometry and adjoint laws of nu
- Covariance, initial and final spaces, pi x nu on L and on N
- Recovery of (pi, nu) from a representation of L
- Operator norms and the contractivity spot-check

Author: excross Team
"""

import pytest
import sys
import os

import numpy as np

# Add src to path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))

from src.covariant import (
    check_covariant_rep,
    column_space,
    contractivity_spot_check,
    is_partial_isometry,
    natural_covariant_rep,
    operator_norm,
    pi_times_nu,
    recover_covariant_rep,
)
from src.crossed_product import build_sg_cp
from src.errors import NotSquare, NotWellDefined, SourceMismatch
from src.semigroup import SElem
from src.fixtures import get_fixture
from src.linalg import arrays_equal, matrix, zero_matrix
from src.partial_action import to_sg_action


def natural(name):
    fixture = get_fixture(name)
    B = to_sg_action(fixture.algebra_action())
    scp = build_sg_cp(B)
    return fixture.set_action, B, scp, natural_covariant_rep(fixture.set_action, B)


class TestNaturalRepresentation:
    """Test suite for diag(a) and the partial permutation matrices."""

    @pytest.fixture
    def p1(self):
        return natural("p1")

    def test_nu_of_generator(self, p1):
        _, _, _, rep = p1
        assert arrays_equal(rep.nu[SElem((), 1)], matrix([[1, 0], [0, 0]]))

    def test_pi_is_diagonal(self, p1):
        _, _, _, rep = p1
        assert arrays_equal(rep.pi[1], matrix([[0, 0], [0, 1]]))

    @pytest.mark.parametrize("name", ["p1", "swap", "z3_rotation", "global_z2", "degenerate"])
    def test_covariance_checks(self, name):
        _, _, scp, rep = natural(name)
        results = check_covariant_rep(rep, scp)
        assert len(results) == 9
        assert all(r.passed for r in results), [r for r in results if not r.passed]

    def test_pi_times_nu_on_generator_of_n(self, p1):
        _, _, scp, rep = p1
        for v in scp.generators:
            assert all(x == 0 for x in pi_times_nu(rep, scp.L, v).flat)

    def test_mismatched_action(self):
        P = get_fixture("p1").set_action
        B = to_sg_action(get_fixture("swap").algebra_action())
        with pytest.raises(SourceMismatch):
            natural_covariant_rep(P, B)


class TestPartialIsometry:
    """Test suite for the partial-isometry predicate."""

    def test_partial_permutation(self):
        assert is_partial_isometry(matrix([[0, 1, 0], [0, 0, 0], [0, 0, 0]]))

    def test_scaled_matrix_is_not(self):
        assert not is_partial_isometry(matrix([[2, 0], [0, 0]]))

    def test_non_square(self):
        with pytest.raises(NotSquare):
            is_partial_isometry(zero_matrix(2, 3))

    def test_column_space(self):
        assert column_space(matrix([[1, 1], [0, 0]])).rank == 1


class TestRecovery:
    """A representation of L killing N comes from a covariant pair."""

    def test_recovers_natural_representation(self):
        _, B, scp, rep = natural("swap")
        images = [pi_times_nu(rep, scp.L, scp.L.algebra.basis_vector(k)) for k in range(scp.L.dim)]
        recovered, results = recover_covariant_rep(images, scp)
        assert all(r.passed for r in results)
        for s in B.semigroup:
            assert arrays_equal(recovered.nu[s], rep.nu[s])
        for i in range(B.algebra.dim):
            assert arrays_equal(recovered.pi[i], rep.pi[i])

    def test_rejects_representation_not_killing_n(self):
        _, _, scp, rep = natural("p1")
        # keep only the [e]-grade: multiplicative fails or N survives
        images = [pi_times_nu(rep, scp.L, scp.L.algebra.basis_vector(k)) for k in range(scp.L.dim)]
        images[2] = zero_matrix(2, 2)
        with pytest.raises(NotWellDefined):
            recover_covariant_rep(images, scp)

    def test_wrong_number_of_images(self):
        _, _, scp, _ = natural("p1")
        with pytest.raises(SourceMismatch):
            recover_covariant_rep([zero_matrix(2, 2)], scp)


class TestContractivity:
    """Test suite for the operator-norm bound."""

    def test_operator_norm_of_diagonal(self):
        assert operator_norm(matrix([[3, 0], [0, -1]])) == pytest.approx(3.0, rel=1e-9)

    def test_operator_norm_of_zero(self):
        assert operator_norm(zero_matrix(2, 2)) == 0.0

    def test_operator_norm_of_float_matrix(self):
        M = np.array([[1.0, 1.0], [0.0, 1.0]])
        assert operator_norm(M) == pytest.approx((1 + 5 ** 0.5) / 2, rel=1e-6)

    @pytest.mark.parametrize("name", ["p1", "swap", "global_z2"])
    def test_spot_check(self, name):
        _, _, scp, rep = natural(name)
        result = contractivity_spot_check(rep, scp, samples=20, seed=1)
        assert result.passed
        assert "max ratio" in result.detail
