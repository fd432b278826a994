"""
Unit Tests for Partial Crossed Products

Tests A⋊G, L, N and L/N and the isomorphism between A⋊G and L/N:
- Dimensions on the fixture catalog
- Products, labels and the involution on small crossed products
- The zero-product action: non-associative crossed products with witnesses
- phi / psi mutually inverse *-isomorphisms and the identities in L/N

Author: excross Team
"""

import pytest
import sys
import os

import numpy as np

# Add src to path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))

from src.algebra import check_associativity
from src.crossed_product import (
    build_group_cp,
    build_sg_cp,
    check_isomorphism,
    check_quotient_identities,
    check_n_star_closed,
    check_star_algebra,
    iso_phi,
    iso_psi,
    psi_on_l,
    random_element,
)
from src.errors import NonAssociativeL, SourceMismatch
from src.semigroup import SElem
from src.fixtures import STANDARD_FIXTURES, get_fixture
from src.linalg import arrays_equal, identity_matrix, matmul, unit_vector, vector
from src.partial_action import to_sg_action


def all_passed(results):
    return all(r.passed for r in results)


def build(name):
    alpha = get_fixture(name).algebra_action()
    return alpha, build_group_cp(alpha), build_sg_cp(to_sg_action(alpha))


class TestGroupCrossedProduct:
    """Test suite for A⋊G."""

    @pytest.fixture
    def p1(self):
        return build_group_cp(get_fixture("p1").algebra_action())

    def test_p1_basis(self, p1):
        assert p1.dim == 3
        assert p1.algebra.labels == ["e0δ_e", "e1δ_e", "e0δ_a"]

    def test_p1_generator_squares_to_projection(self, p1):
        # (e0 δ_a)(e0 δ_a) = alpha_a(alpha_a^-1(e0) e0) δ_e = e0 δ_e
        assert arrays_equal(p1.algebra.product(2, 2), p1.embed(0, unit_vector(2, 0)))

    def test_p1_is_associative_star_algebra(self, p1):
        assert check_associativity(p1.algebra).passed
        assert check_star_algebra(p1.algebra).passed
        assert all_passed(p1.algebra.check_structure())

    def test_components_and_one_norm(self, p1):
        x = p1.embed(0, vector([2, -5])) + p1.embed(1, vector([3, 0]))
        parts = p1.components(x)
        assert set(parts) == {0, 1}
        assert arrays_equal(parts[0], vector([2, -5]))
        assert p1.one_norm(x) == 8

    def test_swap_generator_is_unitary_on_its_corner(self):
        cp = build_group_cp(get_fixture("swap").algebra_action())
        # D_a = span{e0, e1}, so A⋊G has dim 3 + 2
        assert cp.dim == 5
        assert check_associativity(cp.algebra).passed

    def test_zero_product_group_cp_is_not_associative(self):
        cp = build_group_cp(get_fixture("zero_product").algebra_action())
        assert cp.algebra.labels == ["pδ_e", "xδ_e", "yδ_e", "xδ_a", "yδ_a"]
        result = check_associativity(cp.algebra)
        assert not result.passed
        assert result.witness == {"triple": ["pδ_e", "xδ_a", "pδ_e"], "(xy)z": "-yδ_a", "x(yz)": "0"}


class TestSemigroupCrossedProduct:
    """Test suite for L, N and L/N."""

    @pytest.mark.parametrize("name, dim_cp, dim_l, dim_n", [
        ("p1", 3, 4, 1),
        ("global_z2", 4, 6, 2),
        ("degenerate", 2, 2, 0),
        ("z3_rotation", 4, None, None),
    ])
    def test_dimensions(self, name, dim_cp, dim_l, dim_n):
        _, cp, scp = build(name)
        assert cp.dim == dim_cp
        assert scp.quotient.dim == dim_cp
        assert scp.L.dim - scp.N.rank == dim_cp
        if dim_l is not None:
            assert scp.dimensions == {"L": dim_l, "N": dim_n, "L/N": dim_cp}

    def test_p1_l_labels(self):
        _, _, scp = build("p1")
        assert scp.L.algebra.labels == ["e0δ_[e]", "e1δ_[e]", "e0δ_e_{a}[e]", "e0δ_[a]"]
        assert len(scp.generators) == 1
        assert scp.N.rank == 1
        assert scp.quotient.labels == ["e1δ_[e]", "e0δ_e_{a}[e]", "e0δ_[a]"]

    def test_p1_n_is_certified_and_star_closed(self):
        _, _, scp = build("p1")
        assert scp.associativity.passed
        assert scp.certify_n().passed
        assert check_n_star_closed(scp).passed
        assert check_star_algebra(scp.L.algebra).passed

    def test_sym3_partial_dimensions(self):
        _, cp, scp = build("sym3_partial")
        assert cp.dim == 8
        assert scp.L.dim == 40
        assert scp.quotient.dim == 8

    def test_zero_product_l_is_not_associative(self):
        alpha = get_fixture("zero_product").algebra_action()
        with pytest.raises(NonAssociativeL) as exc:
            build_sg_cp(to_sg_action(alpha))
        assert exc.value.witness == {"triple": ["pδ_[e]", "xδ_[a]", "pδ_[e]"], "(xy)z": "-yδ_[a]", "x(yz)": "0"}

    def test_element_classes(self):
        _, _, scp = build("p1")
        e0 = unit_vector(2, 0)
        # e_a[e] <= [e], so e0 δ_{e_a[e]} and e0 δ_[e] have the same class
        assert arrays_equal(scp.element(SElem((1,), 0), e0), scp.element(SElem((), 0), e0))


class TestIsomorphism:
    """A⋊G and L/N are isomorphic through phi and psi."""

    @pytest.mark.parametrize("name", STANDARD_FIXTURES)
    def test_isomorphism_on_catalog(self, name):
        _, cp, scp = build(name)
        results = check_isomorphism(cp, scp)
        assert all_passed(results), [r for r in results if not r.passed]
        assert all_passed(check_quotient_identities(scp))

    def test_phi_psi_inverse_matrices(self):
        _, cp, scp = build("p1")
        phi = iso_phi(cp, scp)
        psi = iso_psi(scp, cp)
        assert phi.shape == (3, 3)
        assert arrays_equal(matmul(phi, psi), identity_matrix(3))
        assert arrays_equal(matmul(psi, phi), identity_matrix(3))

    def test_psi_on_l_kills_generators(self):
        _, cp, scp = build("global_z2")
        psi = psi_on_l(cp, scp)
        for v in scp.generators:
            assert all(x == 0 for x in matmul(psi, v.reshape(-1, 1)).flat)

    def test_psi_is_multiplicative_on_random_elements(self):
        _, cp, scp = build("swap")
        psi = psi_on_l(cp, scp)
        rng = np.random.default_rng(5)
        for _ in range(10):
            x, y = random_element(scp.L, rng), random_element(scp.L, rng)
            lhs = matmul(psi, scp.L.algebra.multiply(x, y).reshape(-1, 1)).reshape(-1)
            rhs = cp.algebra.multiply(
                matmul(psi, x.reshape(-1, 1)).reshape(-1), matmul(psi, y.reshape(-1, 1)).reshape(-1)
            )
            assert arrays_equal(lhs, rhs)

    def test_mismatched_sources(self):
        _, cp, _ = build("p1")
        _, _, other = build("swap")
        with pytest.raises(SourceMismatch):
            iso_phi(cp, other)
