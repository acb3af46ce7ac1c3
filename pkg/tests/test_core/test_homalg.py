"""
Tests for Hom, syzygies, Ext and Krull-Schmidt decompositions.
"""

import numpy as np
import pytest

from core.errors import NonSplitSummand
from core.randomness import make_rng
from models.explicit_module import ExplicitModule


class TestHom:
    """Test Hom spaces between small modules."""

    def test_hom_basis_elements_are_morphisms(self, homalg, builder, kronecker):
        """Test every basis element intertwines the arrows."""
        source = builder.string_module(kronecker, "2", builder.parse_walk("-a,b"), 5)
        target = builder.band_module(kronecker, "1", builder.parse_walk("a,-b"), 2, 5)
        hom = homalg.hom_space(source, target)

        assert hom.dimension >= 1
        for phi in hom.basis:
            assert homalg.is_morphism(phi, source, target)

    def test_bands_are_orthogonal(self, homalg, builder, kronecker):
        """Test bands with different parameters have no maps between them."""
        walk = builder.parse_walk("a,-b")
        first = builder.band_module(kronecker, "1", walk, 2, 5)
        second = builder.band_module(kronecker, "1", walk, 3, 5)

        assert homalg.hom_dimension(first, second) == 0
        assert homalg.end_dimension(first) == 1
        assert homalg.is_schur(first)

    def test_end_of_square(self, homalg, builder, kronecker):
        """Test End(B ⊕ B) is 2 x 2 matrices over End(B)."""
        band = builder.band_module(kronecker, "1", builder.parse_walk("a,-b"), 4, 5)

        assert homalg.end_dimension(builder.direct_sum([band, band])) == 4


class TestExt:
    """Test syzygies and Ext dimensions."""

    def test_syzygy_of_simple(self, homalg, engine, kronecker):
        """Test 0 -> S_2^2 -> P_1 -> S_1 -> 0."""
        syzygy = homalg.syzygy(engine.simple(kronecker, "1", 5))

        assert syzygy.kernel.dimension_vector.values == (0, 2)
        assert syzygy.top.values == (1, 0)
        assert syzygy.cover.dimension_vector.values == (1, 2)

    def test_ext1_between_simples(self, homalg, engine, kronecker):
        """Test Ext^1(S_1, S_2) counts the arrows 1 -> 2."""
        s1 = engine.simple(kronecker, "1", 7)
        s2 = engine.simple(kronecker, "2", 7)

        assert homalg.ext1_dim(s1, s2) == 2
        assert homalg.ext1_dim(s2, s1) == 0
        assert homalg.ext_dimensions(s1, s2) == [0, 2]

    def test_ext2_from_relation(self, homalg, engine, a3_relation):
        """Test the relation b·a gives Ext^2(S_3, S_1) = 1."""
        s3 = engine.simple(a3_relation, "3", 5)
        s1 = engine.simple(a3_relation, "1", 5)

        assert homalg.extl_dim(2, s3, s1) == 1
        assert homalg.ext_dimensions(s3, s1) == [0, 0, 1]
        assert homalg.euler_characteristic(s3, s1) == 1

    def test_band_self_extension(self, homalg, builder, kronecker):
        """Test a band has a one-dimensional self-extension and none to other bands."""
        walk = builder.parse_walk("a,-b")
        first = builder.band_module(kronecker, "1", walk, 2, 5)
        second = builder.band_module(kronecker, "1", walk, 3, 5)

        assert homalg.ext1_dim(first, first) == 1
        assert homalg.ext1_dim(first, second) == 0

    def test_projectives_have_no_extensions(self, homalg, engine, ringel5, builder):
        """Test Ext^l(P_x, N) = 0 for l >= 1."""
        module = builder.string_module(ringel5, "4", builder.parse_walk("gamma,-delta"), 5)
        for x in ringel5.vertices:
            assert homalg.ext_dimensions(engine.projective(ringel5, x, 5), module) == [module.dim(x)]

    def test_negative_degree(self, homalg, engine, kronecker):
        """Test Ext degrees are non-negative."""
        simple = engine.simple(kronecker, "1", 5)
        with pytest.raises(ValueError):
            homalg.extl_dim(-1, simple, simple)

    def test_euler_form_agrees(self, homalg, engine, builder, catalog):
        """Test χ(M, N) = <<dim M, dim N>> on strings of small algebras."""
        for name in ("a3-relation", "kronecker-tail", "string-fork"):
            algebra = catalog.load(name)
            modules = [builder.string_module(algebra, s, w, 3)
                       for s, w in builder.enumerate_strings(algebra, 3)]
            for source in modules:
                for target in modules:
                    assert homalg.euler_characteristic(source, target) == engine.euler_form(
                        algebra, source.dimension_vector, target.dimension_vector)


class TestDecomposition:
    """Test isomorphism search and Krull-Schmidt splitting."""

    def test_find_isomorphism(self, homalg, builder, kronecker):
        """Test bands are isomorphic exactly when parameters agree."""
        walk = builder.parse_walk("a,-b")
        band = builder.band_module(kronecker, "1", walk, 2, 5)
        changed = builder.base_change(band, {"1": np.array([[3]]), "2": np.array([[4]])})

        assert homalg.is_isomorphic(band, changed)
        assert not homalg.is_isomorphic(band, builder.band_module(kronecker, "1", walk, 3, 5))
        assert homalg.find_isomorphism(band, builder.string_module(kronecker, "1", (), 5)) is None

    def test_decompose_groups_summands(self, homalg, builder, kronecker):
        """Test B(2) ⊕ B(3) ⊕ B(2) has two classes with multiplicities 2 and 1."""
        walk = builder.parse_walk("a,-b")
        b2 = builder.band_module(kronecker, "1", walk, 2, 5)
        b3 = builder.band_module(kronecker, "1", walk, 3, 5)
        pieces = homalg.decompose(builder.direct_sum([b2, b3, b2]))

        assert sorted(k for _, k in pieces) == [1, 2]
        assert all(m.dimension_vector.values == (1, 1) for m, _ in pieces)

    def test_decompose_after_base_change(self, homalg, builder, kronecker):
        """Test splitting survives a change of basis mixing the summands."""
        first = builder.string_module(kronecker, "1", builder.parse_walk("a"), 5)
        second = builder.string_module(kronecker, "1", builder.parse_walk("b"), 5)
        mixed = builder.base_change(builder.direct_sum([first, second]),
                                    {"1": np.array([[1, 2], [3, 2]]), "2": np.array([[2, 1], [1, 1]])})
        summands = homalg.indecomposable_summands(mixed)

        assert len(summands) == 2
        assert sorted(m.rank_profile().ranks for m in summands) == [(0, 1), (1, 0)]

    def test_indecomposable(self, homalg, builder, kronecker):
        """Test string modules are indecomposable."""
        module = builder.string_module(kronecker, "1", builder.parse_walk("a,-b"), 5)

        assert homalg.is_indecomposable(module)
        assert homalg.decompose(module) == [(module, 1)]

    def test_non_split_summand(self, homalg, kronecker):
        """Test an endomorphism with irreducible characteristic polynomial is reported."""
        module = ExplicitModule(kronecker, {"1": 2, "2": 2},
                                {"a": np.eye(2, dtype=np.int64), "b": np.array([[0, 3], [1, 0]])}, 5)

        with pytest.raises(NonSplitSummand):
            homalg.split(module)

    @pytest.mark.parametrize("seed", range(200))
    def test_decomposition_resums_to_module(self, homalg, builder, catalog, random_module, seed):
        """Test the summands with their multiplicities add back up to the module."""
        names = catalog.names()
        algebra = catalog.load(names[seed % len(names)])
        module = random_module(algebra, make_rng(seed, "krull-schmidt"), prime=101)
        pieces = homalg.decompose(module, seed=seed)
        resummed = builder.direct_sum([m for m, k in pieces for _ in range(k)])

        assert all(homalg.is_indecomposable(m) for m, _ in pieces)
        assert resummed.dimension_vector == module.dimension_vector
        assert homalg.is_isomorphic(module, resummed, seed=seed)
