"""
End-to-end checks of the moduli pipeline against known answers and
internal consistency properties.
"""

from itertools import combinations_with_replacement, product

import pytest
from click.testing import CliRunner

from cli_io.cli_interface import cli
from config import config
from core.errors import FieldTooSmall, NotSemistable
from core.randomness import make_rng
from core.session import AnalysisSession
from core.submodules import SubmoduleOracle
from models.dimension_vector import DimensionVector, Weight

RINGEL_THETA = (-1, -1, 0, 1, 1)


@pytest.fixture(scope="module")
def session():
    """One session for the module, so engine caches are shared"""
    return AnalysisSession(workers=1)


def vectors(algebra, top, max_total=None):
    for values in product(range(top + 1), repeat=len(algebra.vertices)):
        if max_total is not None and sum(values) > max_total:
            continue
        yield DimensionVector(algebra.vertices, values)


def balanced_weights(algebra, d, fixed=None):
    """Weights in {-2..2}^n with θ(d) = 0; fixed pins some vertices."""
    fixed = fixed or {}
    for values in product(range(-2, 3), repeat=len(algebra.vertices)):
        theta = Weight(algebra.vertices, values)
        if any(theta[v] != t for v, t in fixed.items()):
            continue
        if theta.pair(d) == 0:
            yield theta


def assert_dimension_count(entry):
    """dim GL(d_i) - dim C_i is 0 or 1, and 0 exactly on families."""
    if entry.decomposition is None:
        return
    assert entry.checks['dimension_count']['passed'], entry.checks
    for gap, factor in zip(entry.checks['dimension_count']['gaps'], entry.decomposition.factors):
        assert gap in (0, 1)
        assert (gap == 1) == factor.is_orbit_closure


class TestRingelPoint:
    """Weights vanishing at vertex 2 give points on ringel5."""

    def test_point_or_empty(self, session):
        """Test every component is Point or Empty when θ(2) = 0."""
        algebra = session.catalog.load("ringel5")
        engine = session.moduli_engine
        for d in vectors(algebra, 2, max_total=7):
            if d.is_zero():
                continue
            for theta in balanced_weights(algebra, d, fixed={"2": 0}):
                for entry in engine.moduli_shape(algebra, d, theta).components:
                    assert entry.shape.kind in ("Point", "Empty"), f"d={d} θ={theta}: {entry.shape}"
                    assert_dimension_count(entry)


class TestRingelProjectiveSpaces:
    """ringel5 with θ = (-1,-1,0,1,1) on the component where alpha vanishes."""

    @pytest.mark.parametrize("values,components,expected", [
        ((1, 1, 2, 1, 1), 2, (1,)),
        ((2, 2, 4, 2, 2), 3, (2,)),
    ])
    def test_projective_space(self, session, values, components, expected):
        """Test P^1 for (1,1,2,1,1) and P^2 for (2,2,4,2,2)."""
        algebra = session.catalog.load("ringel5")
        d = DimensionVector(algebra.vertices, values)
        result = session.moduli_engine.moduli_shape(algebra, d, Weight(algebra.vertices, RINGEL_THETA))

        assert len(result.components) == components
        alpha_zero = [e for e in result.components if e.component.rank_sequence["alpha"] == 0]
        assert alpha_zero
        assert any(e.shape.normalized == expected for e in alpha_zero)
        for entry in result.components:
            assert_dimension_count(entry)

    def test_gr_of_specialization(self, session):
        """Test the (1,1,2,1,1) family factor has a stable Regime-A specialization."""
        algebra = session.catalog.load("ringel5")
        d = DimensionVector(algebra.vertices, (1, 1, 2, 1, 1))
        theta = Weight(algebra.vertices, RINGEL_THETA)
        component = session.component_engine.enumerate_components(algebra, d)[0]
        decomposition = session.stability.stable_decomposition(component, theta)
        factor = decomposition.non_orbit_factors()[0]
        datum = session.stability.gr_theta(factor.module, theta)

        assert datum.signature() == [(factor.dimension_vector.values, 1)]


class TestGentleProducts:
    """Gentle algebras give products of projective spaces."""

    @pytest.mark.slow
    @pytest.mark.parametrize("name", ["kronecker", "a3-relation", "kronecker-tail"])
    def test_products_of_projective_spaces(self, session, name):
        """Test every nonempty shape normalizes without conjecture."""
        algebra = session.catalog.load(name)
        engine = session.moduli_engine
        # the exact oracle stops at total dimension ORACLE_MAX_DIM
        for d in vectors(algebra, 3, max_total=config.ORACLE_MAX_DIM):
            if d.is_zero():
                continue
            for theta in balanced_weights(algebra, d):
                for entry in engine.moduli_shape(algebra, d, theta).components:
                    if entry.is_empty:
                        continue
                    assert entry.shape.is_normalizable
                    assert not entry.shape.is_conjectural
                    assert entry.shape.normalized is not None
                    assert_dimension_count(entry)

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_kronecker(self, session, n):
        """Test (n,n) with θ = (1,-1) gives P^n."""
        algebra = session.catalog.load("kronecker")
        d = DimensionVector(algebra.vertices, (n, n))
        result = session.moduli_engine.moduli_shape(algebra, d, Weight(algebra.vertices, (1, -1)))

        assert result.components[0].shape.normalized == (n,)

    @pytest.mark.slow
    @pytest.mark.parametrize("name", ["kronecker", "a3-relation", "kronecker-tail"])
    def test_regular_components(self, session, name):
        """Test regular indecomposable components have <<d,d>> = 0 and generic Ext^1 = 0."""
        algebra = session.catalog.load(name)
        components = session.component_engine
        algebra_engine = session.homalg.algebra_engine
        for d in vectors(algebra, 3):
            if d.is_zero():
                continue
            for component in components.enumerate_components(algebra, d):
                if not component.is_regular:
                    continue
                if not components.generic_decomposition(component).is_indecomposable():
                    continue
                assert algebra_engine.euler_form(algebra, d, d) == 0
                assert components.ext1_generic(component, component, trials=10) == 0


class TestEulerForm:
    """The Euler form agrees with alternating Ext dimensions."""

    PAIRS_PER_PRIME = 100

    def random_modules(self, session, algebra, prime, seed):
        """Modules of total dimension at most 6 over F_p."""
        rng = make_rng(seed, algebra.name, prime)
        builder = session.stability.builder
        if not algebra.report.is_disjoint_chain:
            strings = [builder.string_module(algebra, s, w, prime)
                       for s, w in builder.enumerate_strings(algebra, 6)]
            sums = [builder.direct_sum([x, y]) for x, y in combinations_with_replacement(strings, 2)
                    if x.total_dimension + y.total_dimension <= 6]
            return strings + sums
        modules = []
        candidates = [d for d in vectors(algebra, 3, max_total=6) if not d.is_zero()]
        while len(modules) < 2 * self.PAIRS_PER_PRIME:
            d = candidates[int(rng.integers(0, len(candidates)))]
            found = session.component_engine.enumerate_components(algebra, d)
            component = found[int(rng.integers(0, len(found)))]
            try:
                modules.append(session.component_engine.generic_module(
                    component, prime, int(rng.integers(0, 2 ** 31 - 1))))
            except FieldTooSmall:
                continue
        return modules

    @pytest.mark.slow
    @pytest.mark.parametrize("prime", [5, 10007])
    def test_euler_equals_alternating_ext(self, session, prime):
        """Test <<d, e>> = Σ (-1)^l dim Ext^l(M, N)."""
        algebra_engine = session.homalg.algebra_engine
        for algebra in session.catalog.load_all():
            modules = self.random_modules(session, algebra, prime, seed=7)
            rng = make_rng(11, algebra.name, prime, "pairs")
            for _ in range(self.PAIRS_PER_PRIME):
                source = modules[int(rng.integers(0, len(modules)))]
                target = modules[int(rng.integers(0, len(modules)))]
                expected = algebra_engine.euler_form(algebra, source.dimension_vector, target.dimension_vector)
                dims = session.homalg.ext_dimensions(source, target)
                assert expected == sum((-1) ** l * e for l, e in enumerate(dims)), \
                    f"{algebra.name}: {source} vs {target}"


class TestEnumerationOracle:
    """Dynamic programming agrees with exhaustive enumeration."""

    @pytest.mark.slow
    def test_all_catalog_algebras(self, session):
        """Test both enumerations give the same set of components for every d with entries at most 3."""
        engine = session.component_engine
        for algebra in session.catalog.load_all():
            if not algebra.report.is_disjoint_chain:
                continue
            for d in vectors(algebra, 3):
                fast = {c.key for c in engine.enumerate_components(algebra, d)}
                slow = {c.key for c in engine.enumerate_components_bruteforce(algebra, d)}
                assert fast == slow, f"{algebra.name} d={d}"


class TestJordanHolderSuite:
    """gr_θ on small modules over F_2 and F_3."""

    SEEDS = 50

    def modules(self, session, algebra, prime):
        """Strings, bands and sums of two of them, of total dimension at most 6."""
        builder = session.stability.builder
        pieces = [builder.string_module(algebra, s, w, prime) for s, w in builder.enumerate_strings(algebra, 6)]
        if algebra.name == "kronecker":
            walk = builder.parse_walk("a,-b")
            pieces += [builder.band_module(algebra, "1", walk, lam, prime) for lam in range(1, prime)]
        sums = [builder.direct_sum([x, y]) for x, y in combinations_with_replacement(pieces, 2)
                if x.total_dimension + y.total_dimension <= 6]
        return pieces + sums

    @pytest.mark.slow
    @pytest.mark.parametrize("name", ["kronecker", "a3-relation"])
    @pytest.mark.parametrize("prime", [2, 3])
    def test_gr_properties(self, session, name, prime):
        """Test gr is polystable, dimension-preserving, θ-zero, idempotent and order independent."""
        algebra = session.catalog.load(name)
        stability = session.stability
        checked = 0
        for module in self.modules(session, algebra, prime):
            for theta in balanced_weights(algebra, module.dimension_vector):
                if not stability.is_semistable(module, theta):
                    continue
                datum = stability.gr_theta(module, theta)
                assert datum.dimension_vector == module.dimension_vector
                for factor, _ in datum.summands:
                    assert theta.pair(factor.dimension_vector) == 0
                    assert stability.is_stable(factor, theta)
                polystable = stability.polystable_sum(datum)
                assert stability.is_semistable(polystable, theta)
                assert stability.gr_theta(polystable, theta).signature() == datum.signature()
                for seed in range(self.SEEDS):
                    assert stability.gr_theta(module, theta, seed=seed).signature() == datum.signature()
                checked += 1
        assert checked > 0

    def test_not_semistable_raises(self, session):
        """Test gr refuses unstable input."""
        algebra = session.catalog.load("kronecker")
        builder = session.stability.builder
        module = builder.string_module(algebra, "1", builder.parse_walk("a"), 3)
        with pytest.raises(NotSemistable):
            session.stability.gr_theta(module, Weight(algebra.vertices, (-1, 1)))


class TestFastPath:
    """Coordinate submodules are submodules."""

    @pytest.mark.parametrize("prime", [2, 3])
    def test_strings_on_gentle_algebras(self, session, prime):
        """Test coordinate vectors ⊆ oracle vectors for strings with up to six letters."""
        oracle = SubmoduleOracle()
        builder = session.stability.builder
        for algebra in session.catalog.load_all():
            if not algebra.report.is_gentle:
                continue
            for start, walk in builder.enumerate_strings(algebra, 7):
                module = builder.string_module(algebra, start, walk, prime)
                coordinate = oracle.coordinate_dimension_vectors(module)
                assert coordinate <= oracle.dimension_vectors(module), f"{algebra.name} {walk}"


class TestDeterminism:
    """Reports are a pure function of the request."""

    ARGS = ['moduli', 'ringel5', '-d', '1,1,2,1,1', '--theta=-1,-1,0,1,1', '--format', 'json']

    def test_byte_identical_reports(self):
        """Test three runs and one versus four workers give the same bytes."""
        runner = CliRunner()
        outputs = [runner.invoke(cli, self.ARGS + ['--workers', '1']) for _ in range(3)]
        outputs.append(runner.invoke(cli, self.ARGS + ['--workers', '4']))

        assert all(r.exit_code == 0 for r in outputs)
        assert len({r.stdout for r in outputs}) == 1
        assert '"normalized": [\n' in outputs[0].stdout

    def test_dimension_vector_from_mapping(self, session):
        """Test vertex maps and ordered lists give equal reports."""
        session.open("ringel5")
        first = session.moduli([1, 1, 2, 1, 1], list(RINGEL_THETA), seed=0)
        second = session.moduli({"1": 1, "2": 1, "3": 2, "4": 1, "5": 1},
                                dict(zip(("1", "2", "3", "4", "5"), RINGEL_THETA)), seed=0)

        assert session.reports.to_json(session.report(first)) == session.reports.to_json(session.report(second))
