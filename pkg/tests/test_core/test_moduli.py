"""
Tests for the moduli pipeline.
"""

import pytest

from core.components import ComponentEngine
from core.errors import Inconsistent, UnsupportedClass
from core.moduli import ModuliEngine
from core.stability import StabilityEngine
from models.dimension_vector import DimensionVector, Weight
from models.moduli_shape import ShapeBase
from models.stable_decomposition import StableDecomposition, StableFactor


def weight(algebra, *values):
    return Weight(algebra.vertices, list(values))


def dim(algebra, *values):
    return DimensionVector(algebra.vertices, list(values))


@pytest.fixture
def moduli():
    """Fresh pipeline with a single worker"""
    return ModuliEngine(StabilityEngine(ComponentEngine()), workers=1)


class TestClassifyStable:
    """Test the moduli type of a single component."""

    def test_band_component(self, moduli, kronecker):
        """Test the Kronecker (1,1) component is a projective line."""
        component = moduli.components.enumerate_components(kronecker, dim(kronecker, 1, 1))[0]

        assert moduli.classify_stable_component(component, weight(kronecker, 1, -1)) == ShapeBase.PROJ_LINE
        assert moduli.classify_stable_component(component, weight(kronecker, -1, 1)) == ShapeBase.EMPTY
        assert moduli.classify_stable_component(component, weight(kronecker, 1, 0)) == ShapeBase.EMPTY

    def test_orbit_component(self, moduli, ringel5):
        """Test a single-orbit stable component is a point."""
        component = moduli.components.enumerate_components(ringel5, dim(ringel5, 1, 1, 1, 1, 1))[0]

        assert moduli.classify_stable_component(component, weight(ringel5, -1, -1, 0, 1, 1)) == ShapeBase.POINT

    def test_family_witness(self, moduli, kronecker):
        """Test two generic bands are not isomorphic."""
        component = moduli.components.enumerate_components(kronecker, dim(kronecker, 1, 1))[0]

        assert moduli.family_witness(component)

    def test_orbit_has_no_witness(self, moduli, kronecker):
        """Test generic samples of an orbit closure are always isomorphic."""
        simple = moduli.components.enumerate_components(kronecker, dim(kronecker, 1, 0))[0]

        assert not moduli.family_witness(simple)

    def test_missing_witness_is_inconsistent(self, moduli, kronecker, monkeypatch):
        """Test a family verdict without a witness is refused."""
        component = moduli.components.enumerate_components(kronecker, dim(kronecker, 1, 1))[0]
        monkeypatch.setattr(moduli, "family_witness", lambda *args, **kwargs: False)

        with pytest.raises(Inconsistent, match="isomorphic"):
            moduli.classify_stable_component(component, weight(kronecker, 1, -1))
        with pytest.raises(Inconsistent):
            moduli.moduli_shape(kronecker, dim(kronecker, 1, 1), weight(kronecker, 1, -1), trials=2)


class TestCompose:
    """Test composing θ-stable decompositions into shapes."""

    def test_symmetric_power(self, moduli, kronecker):
        """Test 2·C_band ∔ C_point gives P^2."""
        band = moduli.components.enumerate_components(kronecker, dim(kronecker, 1, 1))[0]
        simple = moduli.components.enumerate_components(kronecker, dim(kronecker, 1, 0))[0]
        decomposition = StableDecomposition(band, [StableFactor(2, band, False),
                                                   StableFactor(1, simple, True)])
        shape = moduli.compose_moduli(decomposition)

        assert shape.normalized == (2,)
        assert shape.text() == "P^2"
        assert not shape.is_conjectural

    def test_non_gentle_is_conjectural(self, moduli, ringel5):
        """Test non-orbit factors outside the gentle class are flagged."""
        component = moduli.components.enumerate_components(ringel5, dim(ringel5, 1, 1, 2, 1, 1))[0]
        shape = moduli.compose_moduli(StableDecomposition(component, [StableFactor(1, component, False)]))

        assert shape.factors[0].base == ShapeBase.RATIONAL_CURVE
        assert shape.normalized == (1,)
        assert shape.is_conjectural
        assert shape.text() == "P^1 (conjectural)"

    def test_orbits_only(self, moduli, kronecker):
        """Test a decomposition into orbit closures is a point."""
        simple = moduli.components.enumerate_components(kronecker, dim(kronecker, 1, 0))[0]
        shape = moduli.compose_moduli(StableDecomposition(simple, [StableFactor(1, simple, True)]))

        assert shape.kind == "Point"
        assert shape.dimension == 0


class TestModuliShape:
    """Test the full pipeline."""

    @pytest.mark.parametrize("n", [1, 2])
    def test_kronecker_projective_spaces(self, moduli, kronecker, n):
        """Test (n,n) with θ = (1,-1) gives P^n."""
        result = moduli.moduli_shape(kronecker, dim(kronecker, n, n), weight(kronecker, 1, -1), trials=2)

        assert len(result.components) == 1
        assert result.components[0].shape.normalized == (n,)
        assert result.components[0].checks['dimension_count']['passed']

    def test_checks(self, moduli, kronecker):
        """Test the (1,1) checks: a family factor with gap 0 and a matching shape dimension."""
        entry = moduli.moduli_shape(kronecker, dim(kronecker, 1, 1), weight(kronecker, 1, -1),
                                    trials=2).components[0]

        assert entry.checks['dimension_count'] == {'gaps': [0], 'passed': True}
        assert entry.checks['shape_dimension']['expected'] == 1
        assert entry.checks['shape_dimension']['passed']
        assert entry.assumptions
        assert entry.provenance['family_witness'] == [str(entry.component)]

    def test_ringel5_point_and_empty(self, moduli, ringel5):
        """Test (1,1,1,1,1) with θ(2) = 0 gives a point and an empty component."""
        result = moduli.moduli_shape(ringel5, dim(ringel5, 1, 1, 1, 1, 1),
                                     weight(ringel5, -1, -1, 0, 1, 1), trials=2)

        assert [e.shape.kind for e in result.components] == ["Point", "Empty"]
        assert result.components[1].decomposition is None

    def test_ringel5_projective_line(self, moduli, ringel5):
        """Test (1,1,2,1,1) gives P^1 on the component where alpha vanishes."""
        result = moduli.moduli_shape(ringel5, dim(ringel5, 1, 1, 2, 1, 1),
                                     weight(ringel5, -1, -1, 0, 1, 1), trials=2)

        assert len(result.components) == 2
        entry = result.components[0]
        assert entry.component.rank_sequence["alpha"] == 0
        assert entry.shape.normalized == (1,)

    def test_nonzero_pairing(self, moduli, kronecker):
        """Test θ(d) ≠ 0 makes every component empty."""
        result = moduli.moduli_shape(kronecker, dim(kronecker, 2, 1), weight(kronecker, 1, -1))

        assert all(e.is_empty for e in result.components)
        assert "θ(d) = 1" in result.components[0].provenance['reason']

    def test_unsupported(self, moduli, string_fork):
        """Test algebras outside the disjoint-chain class are refused."""
        with pytest.raises(UnsupportedClass):
            moduli.moduli_shape(string_fork, dim(string_fork, 1, 1, 1, 1), weight(string_fork, 0, 0, 0, 0))

    def test_workers_do_not_change_result(self, ringel5):
        """Test one and several workers give identical verdicts."""
        d = dim(ringel5, 1, 1, 2, 1, 1)
        theta = weight(ringel5, -1, -1, 0, 1, 1)
        single = ModuliEngine(workers=1).moduli_shape(ringel5, d, theta, seed=3, trials=2)
        pooled = ModuliEngine(workers=4).moduli_shape(ringel5, d, theta, seed=3, trials=2)

        assert [e.shape for e in single.components] == [e.shape for e in pooled.components]
        assert [e.provenance for e in single.components] == [e.provenance for e in pooled.components]
