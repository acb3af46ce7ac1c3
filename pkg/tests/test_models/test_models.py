"""
Test suite for the model classes: quivers, ideals, algebras, vectors,
rank sequences, explicit modules and moduli shapes.
"""

import numpy as np
import pytest

from core.errors import (DuplicateId, DuplicateRelation, InvalidModule, InvalidRankSequence,
                         NonComposableRelation, UnknownArrow, UnknownVertex)
from models.algebra import BoundQuiverAlgebra
from models.component import Component, RankSequence
from models.dimension_vector import DimensionVector, Weight
from models.explicit_module import ExplicitModule
from models.ideal import MonomialIdeal
from models.moduli_shape import ModuliShape, ShapeBase, ShapeFactor
from models.quiver import Arrow, Quiver


class TestQuiver:
    """Test the Quiver model class."""

    def test_quiver_creation(self):
        """Test creating a quiver keeps declared order."""
        quiver = Quiver(["1", "2", "3"], [Arrow("b", "3", "2"), Arrow("a", "2", "1")])

        assert quiver.vertices == ("1", "2", "3")
        assert quiver.arrow_ids == ("b", "a")
        assert quiver.arrow("a").tail == "2"
        assert quiver.is_acyclic is True

    def test_topological_order(self):
        """Test sources come first, ties broken by declared order."""
        quiver = Quiver(["1", "2", "3"], [Arrow("b", "3", "2"), Arrow("a", "2", "1")])

        assert quiver.topological_order() == ("3", "2", "1")
        assert quiver.longest_path_length() == 2

    def test_cycle_detected(self):
        """Test an oriented cycle makes the quiver cyclic."""
        quiver = Quiver(["1", "2"], [Arrow("a", "1", "2"), Arrow("b", "2", "1")])

        assert quiver.is_acyclic is False
        with pytest.raises(ValueError):
            quiver.topological_order()

    def test_duplicate_vertex(self):
        """Test duplicate vertex ids are rejected."""
        with pytest.raises(DuplicateId):
            Quiver(["1", "1"], [])

    def test_duplicate_arrow(self):
        """Test duplicate arrow ids are rejected."""
        with pytest.raises(DuplicateId):
            Quiver(["1", "2"], [Arrow("a", "1", "2"), Arrow("a", "2", "1")])

    def test_unknown_vertex(self):
        """Test arrows must end at declared vertices."""
        with pytest.raises(UnknownVertex) as exc_info:
            Quiver(["1", "2"], [Arrow("a", "1", "9")])
        assert exc_info.value.vertex == "9"

    def test_unknown_arrow_lookup(self):
        """Test looking up an undeclared arrow."""
        quiver = Quiver(["1"], [])
        with pytest.raises(UnknownArrow):
            quiver.arrow("x")

    def test_arrows_from_and_into(self):
        """Test incidence lists."""
        quiver = Quiver(["1", "2"], [Arrow("a", "1", "2"), Arrow("b", "1", "2")])

        assert [a.id for a in quiver.arrows_from("1")] == ["a", "b"]
        assert [a.id for a in quiver.arrows_into("2")] == ["a", "b"]
        assert quiver.is_sink("2")
        assert not quiver.is_sink("1")


class TestMonomialIdeal:
    """Test the MonomialIdeal model class."""

    def setup_method(self):
        self.quiver = Quiver(["1", "2", "3"], [Arrow("b", "3", "2"), Arrow("a", "2", "1")])

    def test_generators(self):
        """Test a generator is stored in traversal order."""
        ideal = MonomialIdeal(self.quiver, [("b", "a")])

        assert ideal.contains("b", "a")
        assert not ideal.contains("a", "b")
        assert ideal.relation_successors("b") == ["a"]
        assert ideal.relation_predecessors("a") == ["b"]
        assert ideal.related_arrows() == {"a", "b"}
        assert len(ideal) == 1

    def test_non_composable(self):
        """Test head(first) must equal tail(second)."""
        with pytest.raises(NonComposableRelation):
            MonomialIdeal(self.quiver, [("a", "b")])

    def test_unknown_arrow(self):
        """Test generators must name declared arrows."""
        with pytest.raises(UnknownArrow):
            MonomialIdeal(self.quiver, [("b", "z")])

    def test_duplicate_relation(self):
        """Test a generator may be listed once."""
        with pytest.raises(DuplicateRelation):
            MonomialIdeal(self.quiver, [("b", "a"), ("b", "a")])


class TestBoundQuiverAlgebra:
    """Test the BoundQuiverAlgebra model class."""

    def test_from_lists(self):
        """Test building an algebra from plain lists."""
        algebra = BoundQuiverAlgebra.from_lists(
            ["1", "2", "3"], [("a", "2", "1"), ("b", "3", "2")], [("b", "a")], name="a3")

        assert algebra.vertices == ("1", "2", "3")
        assert algebra.arrow_ids == ("a", "b")
        assert algebra.relations == (("b", "a"),)
        assert algebra.is_relation("b", "a")
        assert algebra.name == "a3"

    def test_free_arrows_and_chains(self, ringel5):
        """Test chain membership and free arrows."""
        assert [chain.arrows for chain in ringel5.chains] == [("beta", "alpha")]
        assert ringel5.chain_of("alpha").arrows == ("beta", "alpha")
        assert ringel5.chain_of("gamma") is None
        assert ringel5.free_arrows() == ["epsilon", "gamma", "delta"]

    def test_equality(self):
        """Test algebras compare by quiver and ideal."""
        first = BoundQuiverAlgebra.from_lists(["1", "2"], [("a", "1", "2")])
        second = BoundQuiverAlgebra.from_lists(["1", "2"], [("a", "1", "2")], name="other")

        assert first == second


class TestVectors:
    """Test DimensionVector and Weight."""

    def setup_method(self):
        self.vertices = ("1", "2", "3")

    def test_dimension_vector_basics(self):
        """Test access, totals and support."""
        d = DimensionVector(self.vertices, [1, 0, 2])

        assert d["3"] == 2
        assert d.total == 3
        assert d.support() == ("1", "3")
        assert d.as_dict() == {"1": 1, "2": 0, "3": 2}
        assert d.gl_dimension() == 5

    def test_negative_entries_rejected(self):
        """Test dimension vectors are non-negative."""
        with pytest.raises(ValueError):
            DimensionVector(self.vertices, [1, -1, 0])

    def test_wrong_length_rejected(self):
        """Test the vector has one entry per vertex."""
        with pytest.raises(ValueError):
            DimensionVector(self.vertices, [1, 1])

    def test_from_mapping(self):
        """Test missing vertices default to zero."""
        d = DimensionVector.from_mapping(self.vertices, {"2": 3})

        assert d.values == (0, 3, 0)

    def test_from_mapping_unknown_vertex(self):
        """Test a mapping with an undeclared vertex."""
        with pytest.raises(UnknownVertex):
            DimensionVector.from_mapping(self.vertices, {"9": 1})

    def test_arithmetic(self):
        """Test addition, subtraction, scaling and domination."""
        d = DimensionVector(self.vertices, [1, 1, 0])
        e = DimensionVector(self.vertices, [0, 1, 1])

        assert (d + e).values == (1, 2, 1)
        assert (d + e - e) == d
        assert d.scale(3).values == (3, 3, 0)
        assert (d + e).dominates(d)
        assert not d.dominates(e)

    def test_weight_pairing(self):
        """Test θ(d) = Σ θ(x)d(x)."""
        theta = Weight(self.vertices, [1, -1, 2])
        d = DimensionVector(self.vertices, [2, 1, 1])

        assert theta.pair(d) == 3
        assert theta(d) == 3

    def test_weight_allows_negative(self):
        """Test weights may be negative."""
        theta = Weight(self.vertices, [-2, 0, 2])

        assert theta.values == (-2, 0, 2)

    def test_immutable(self):
        """Test vectors cannot be reassigned."""
        d = DimensionVector(self.vertices, [1, 1, 1])
        with pytest.raises(AttributeError):
            d.values = (0, 0, 0)


class TestRankSequence:
    """Test RankSequence and Component."""

    def test_rank_sequence(self):
        """Test lookups and totals."""
        r = RankSequence(("a", "b"), [1, 0])

        assert r["a"] == 1
        assert r.as_dict() == {"a": 1, "b": 0}
        assert r.total == 1
        assert r.increment("b").ranks == (1, 1)

    def test_invalid_rank_sequence(self):
        """Test length and sign checks."""
        with pytest.raises(InvalidRankSequence):
            RankSequence(("a", "b"), [1])
        with pytest.raises(InvalidRankSequence):
            RankSequence(("a",), [-1])

    def test_component_key_and_order(self, kronecker):
        """Test components are identified by (d, r) and sort by key."""
        d = DimensionVector(kronecker.vertices, [1, 1])
        first = Component(kronecker, d, RankSequence(kronecker.arrow_ids, [0, 1]))
        second = Component(kronecker, d, RankSequence(kronecker.arrow_ids, [1, 0]))

        assert first.key == ((1, 1), (0, 1))
        assert sorted([second, first]) == [first, second]
        assert first == Component(kronecker, d, RankSequence(kronecker.arrow_ids, [0, 1]))


class TestExplicitModule:
    """Test the ExplicitModule model class."""

    def test_module_creation(self, a3_relation):
        """Test missing vertices and arrows default to zero."""
        module = ExplicitModule(a3_relation, {"1": 1, "2": 1}, {"a": [[1]]}, prime=5)

        assert module.dimension_vector.values == (1, 1, 0)
        assert module.matrix("b").shape == (1, 0)
        assert module.rank_profile().as_dict() == {"a": 1, "b": 0}
        assert module.total_dimension == 2

    def test_entries_reduced_mod_p(self, a2):
        """Test matrices are stored reduced mod p."""
        module = ExplicitModule(a2, {"1": 1, "2": 1}, {"a": [[7]]}, prime=5)

        assert module.matrix("a")[0, 0] == 2

    def test_shape_mismatch(self, a2):
        """Test matrix shape must match d(head) x d(tail)."""
        with pytest.raises(InvalidModule):
            ExplicitModule(a2, {"1": 1, "2": 2}, {"a": [[1]]}, prime=5)

    def test_relation_must_vanish(self, a3_relation):
        """Test the relation b·a acts by zero."""
        with pytest.raises(InvalidModule):
            ExplicitModule(a3_relation, {"1": 1, "2": 1, "3": 1},
                           {"a": [[1]], "b": [[1]]}, prime=3)

    def test_unknown_arrow_matrix(self, a2):
        """Test matrices for undeclared arrows are rejected."""
        with pytest.raises(InvalidModule):
            ExplicitModule(a2, {"1": 1}, {"z": [[1]]}, prime=2)

    def test_path_matrix(self, a3_relation):
        """Test path matrices compose in traversal order."""
        module = ExplicitModule(a3_relation, {"1": 1, "2": 1, "3": 1},
                                {"a": [[1]], "b": [[0]]}, prime=3)

        assert np.array_equal(module.path_matrix(["b", "a"]), np.zeros((1, 1)))
        assert module.offsets() == {"1": 0, "2": 1, "3": 2}

    def test_empty_path_matrix(self, a3_relation):
        """Test the empty path is the identity at its vertex and needs one."""
        module = ExplicitModule(a3_relation, {"1": 1, "2": 2, "3": 0},
                                {"a": [[1, 0]]}, prime=3)

        assert np.array_equal(module.path_matrix([], start="2"), np.eye(2, dtype=np.int64))
        assert module.path_matrix([], start="3").shape == (0, 0)
        with pytest.raises(ValueError, match="start vertex"):
            module.path_matrix([])


class TestModuliShape:
    """Test moduli shapes and their normal forms."""

    def test_empty(self):
        """Test Empty has no normal form."""
        shape = ModuliShape.empty()

        assert shape.normalized is None
        assert shape.kind == "Empty"
        assert shape.text() == "Empty"

    def test_point(self):
        """Test a product of points is a point."""
        shape = ModuliShape(factors=(ShapeFactor(ShapeBase.POINT, 3),))

        assert shape.normalized == ()
        assert shape.kind == "Point"
        assert shape.dimension == 0

    def test_symmetric_powers_of_line(self):
        """Test S^m(P^1) = P^m, factors sorted descending."""
        shape = ModuliShape(factors=(
            ShapeFactor(ShapeBase.PROJ_LINE, 1),
            ShapeFactor(ShapeBase.POINT, 2),
            ShapeFactor(ShapeBase.PROJ_LINE, 2),
        ))

        assert shape.normalized == (2, 1)
        assert shape.text() == "P^2 x P^1"
        assert shape.dimension == 3
        assert not shape.is_single_projective_space()

    def test_conjectural_rational_curve(self):
        """Test a flagged rational curve normalizes but marks the shape."""
        shape = ModuliShape(factors=(
            ShapeFactor(ShapeBase.RATIONAL_CURVE, 2, conjectural_projective_line=True),))

        assert shape.normalized == (2,)
        assert shape.is_conjectural
        assert shape.text() == "P^2 (conjectural)"

    def test_unflagged_rational_curve(self):
        """Test an unidentified rational curve has no normal form."""
        shape = ModuliShape(factors=(ShapeFactor(ShapeBase.RATIONAL_CURVE, 1),))

        assert not shape.is_normalizable
        with pytest.raises(ValueError):
            shape.normalized

    def test_invalid_factors(self):
        """Test powers are positive and Empty is no factor."""
        with pytest.raises(ValueError):
            ShapeFactor(ShapeBase.PROJ_LINE, 0)
        with pytest.raises(ValueError):
            ShapeFactor(ShapeBase.EMPTY, 1)

    def test_to_dict(self):
        """Test the report form."""
        data = ModuliShape(factors=(ShapeFactor(ShapeBase.PROJ_LINE, 1),)).to_dict()

        assert data['kind'] == "Product"
        assert data['normalized'] == [1]
        assert data['text'] == "P^1"
        assert data['factors'] == [{'base': "ProjLine", 'power': 1, 'conjectural_projective_line': False}]
