"""
Unit Tests for Finite Groups and Partial Bijections

Tests GroupTable validation, presets and the symmetric inverse monoid:
- Latin square, identity and associativity errors with witnesses
- Identity normalization and permutation-generator closure
- Composition, converse and uniqueness of inverses for partial bijections

Author: excross Team
"""

import pytest
import sys
import os

from hypothesis import given, settings as hypothesis_settings, strategies as st

# Add src to path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))

from src.errors import (
    BadLabels,
    BaseSizeMismatch,
    IndexOutOfRange,
    InputError,
    NoIdentity,
    NonAssociative,
    NonLatinSquare,
)
from src.groups import (
    PartialBijection,
    all_partial_bijections,
    build_group,
    compose_partial_bijections,
    cyclic_group,
    group_inverse,
    group_multiply,
    klein_four_group,
    load_group,
    permutation_group,
    preset_group,
    symmetric_group_3,
)


@st.composite
def partial_bijections(draw, base_size=None):
    n = base_size or draw(st.integers(min_value=1, max_value=8))
    sources = draw(st.lists(st.integers(0, n - 1), unique=True, max_size=n))
    targets = draw(st.permutations(list(range(n))))
    return PartialBijection(n, frozenset(zip(sources, targets[: len(sources)])))


@st.composite
def bijection_triples(draw):
    n = draw(st.integers(min_value=1, max_value=8))
    return tuple(draw(partial_bijections(base_size=n)) for _ in range(3))


class TestGroupTable:
    """Test suite for Cayley-table validation and presets."""

    def test_cyclic_2_preset(self):
        G = load_group("cyclic 2")
        assert G.order == 2
        assert list(G.names) == ["e", "a"]
        assert G.multiply(1, 1) == 0

    def test_sym3_has_three_involutions(self):
        G = preset_group("sym3")
        assert G.order == 6
        involutions = [g for g in G.elements if g != 0 and G.multiply(g, g) == 0]
        assert len(involutions) == 3

    def test_non_latin_square_names_the_row(self):
        with pytest.raises(NonLatinSquare) as exc:
            build_group(["e", "a"], [[0, 1], [1, 1]])
        assert exc.value.witness == ("row", 1)

    @pytest.mark.parametrize("error", [NonLatinSquare, NoIdentity, NonAssociative])
    def test_table_errors_are_input_errors(self, error):
        assert issubclass(error, InputError)
        assert error("bad table").exit_code == 2

    def test_no_identity(self):
        # Latin square without identity: g·h = g - h mod 3
        table = [[(g - h) % 3 for h in range(3)] for g in range(3)]
        with pytest.raises((NoIdentity, NonAssociative)):
            build_group(["x", "y", "z"], table)

    def test_non_associative_latin_square_with_identity(self):
        # a loop of order 5 that is not a group
        table = [
            [0, 1, 2, 3, 4],
            [1, 0, 3, 4, 2],
            [2, 4, 0, 1, 3],
            [3, 2, 4, 0, 1],
            [4, 3, 1, 2, 0],
        ]
        with pytest.raises(NonAssociative) as exc:
            build_group(["e", "a", "b", "c", "d"], table)
        assert len(exc.value.witness) == 3

    def test_duplicate_names_rejected(self):
        with pytest.raises(BadLabels):
            build_group(["e", "e"], [[0, 1], [1, 0]])

    def test_identity_moved_to_index_zero(self):
        # identity listed second
        G = build_group(["a", "e"], [[1, 0], [0, 1]])
        assert G.names[0] == "e"
        assert G.multiply(0, 1) == 1
        assert G.multiply(1, 1) == 0

    def test_group_multiply_and_inverse(self):
        Z3 = cyclic_group(3)
        assert group_multiply(Z3, 1, 1) == 2
        assert group_inverse(Z3, 1) == 2
        assert group_inverse(Z3, 0) == 0
        Z2 = cyclic_group(2)
        assert group_multiply(Z2, 1, 1) == 0
        assert group_inverse(Z2, 1) == 1

    def test_index_out_of_range(self):
        with pytest.raises(IndexOutOfRange):
            group_multiply(cyclic_group(2), 0, 5)

    def test_unknown_preset(self):
        with pytest.raises(BadLabels):
            preset_group("dihedral 4")

    def test_klein_four_is_elementary_abelian(self):
        V = klein_four_group()
        assert all(V.multiply(g, g) == 0 for g in V.elements)
        assert all(V.multiply(g, h) == V.multiply(h, g) for g in V.elements for h in V.elements)

    def test_permutation_closure_matches_sym3(self):
        G = permutation_group([[1, 0, 2], [0, 2, 1]])
        assert G.order == 6
        assert G.names[0] == "e"
        assert sorted(G.names) == sorted(symmetric_group_3().names)

    def test_load_group_from_document(self):
        G = load_group({"names": ["e", "a", "b"], "table": [[0, 1, 2], [1, 2, 0], [2, 0, 1]]})
        assert G.order == 3
        assert G.index("b") == 2
        with pytest.raises(BadLabels):
            G.index("c")


class TestPartialBijection:
    """Test suite for partial bijections of a finite set."""

    def test_composition_of_identities_intersects_domains(self):
        f = PartialBijection.identity(3, [0, 1])
        g = PartialBijection.identity(3, [1, 2])
        assert compose_partial_bijections(f, g) == PartialBijection.identity(3, [1])

    def test_direct_composition(self):
        f = PartialBijection(2, frozenset({(0, 1)}))
        g = PartialBijection(2, frozenset({(1, 0)}))
        assert compose_partial_bijections(f, g) == PartialBijection(2, frozenset({(1, 1)}))

    def test_empty_map_absorbs(self):
        f = PartialBijection(3, frozenset({(0, 2), (1, 0)}))
        empty = PartialBijection.empty(3)
        assert compose_partial_bijections(f, empty) == empty
        assert compose_partial_bijections(empty, f) == empty

    def test_base_size_mismatch(self):
        with pytest.raises(BaseSizeMismatch):
            PartialBijection.identity(2).compose(PartialBijection.identity(3))

    def test_non_injective_rejected(self):
        with pytest.raises(BadLabels):
            PartialBijection(3, frozenset({(0, 1), (2, 1)}))

    def test_matrix_sends_source_to_target(self):
        f = PartialBijection(3, frozenset({(0, 2)}))
        M = f.matrix()
        assert M[2, 0] == 1
        assert M.sum() == 1

    def test_unique_inverse_exhaustive(self):
        """The converse is the only f* with f f* f = f and f* f f* = f*."""
        for n in (1, 2, 3):
            monoid = all_partial_bijections(n)
            for f in monoid:
                inverses = [
                    g for g in monoid
                    if f.compose(g).compose(f) == f and g.compose(f).compose(g) == g
                ]
                assert inverses == [f.converse()]

    def test_symmetric_inverse_monoid_size(self):
        # sum_k C(n,k)^2 k!
        assert len(all_partial_bijections(2)) == 7
        assert len(all_partial_bijections(3)) == 34

    @hypothesis_settings(max_examples=200, deadline=None)
    @given(bijection_triples())
    def test_composition_is_associative(self, triple):
        f, g, h = triple
        assert f.compose(g).compose(h) == f.compose(g.compose(h))

    @hypothesis_settings(max_examples=200, deadline=None)
    @given(partial_bijections())
    def test_converse_is_an_inverse(self, f):
        g = f.converse()
        assert f.compose(g).compose(f) == f
        assert g.compose(f).compose(g) == g
        assert f.compose(g).is_idempotent()
