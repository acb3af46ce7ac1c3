"""
Analysis session module.
Holds the algebra a request works on together with one set of engines, so
that generic decompositions and specializations computed for one request are
reused by the next.
"""

import logging
from pathlib import Path
from typing import List, Mapping, Optional, Sequence, Union

from catalog import Catalog
from config import config
from core.components import ComponentEngine
from core.errors import QuiverModuliError, UnknownCatalogEntry
from core.homalg import HomologicalAlgebra
from core.moduli import ModuliEngine
from core.stability import StabilityEngine
from core.submodules import SubmoduleOracle
from models.algebra import BoundQuiverAlgebra
from models.component import Component
from models.dimension_vector import DimensionVector, Weight
from models.moduli_report import ModuliResult
from serialization.algebra_serializer import AlgebraSerializer
from serialization.report_serializer import AnalysisReport, ReportSerializer

logger = logging.getLogger(__name__)

VectorInput = Union[Sequence[int], Mapping[str, int]]


class SessionError(QuiverModuliError):
    """Custom exception for session-related errors."""
    pass


class AnalysisSession:
    """
    The open algebra plus shared engines.

    Engines are created once per session; their caches are keyed by algebra,
    so reopening another algebra keeps earlier results.
    """

    def __init__(self, sampling_prime: Optional[int] = None, oracle_prime: Optional[int] = None,
                 workers: Optional[int] = None, catalog: Optional[Catalog] = None):
        """
        Initialize a new session.

        Args:
            sampling_prime: Large prime for generic sampling (default from config)
            oracle_prime: Small prime for exact checks (default from config)
            workers: Threads for per-component work (default from config)
            catalog: Catalog used to resolve entry names
        """
        self.algebra: Optional[BoundQuiverAlgebra] = None

        self.catalog = catalog or Catalog()
        self.serializer = AlgebraSerializer()
        self.reports = ReportSerializer(self.serializer)

        self.homalg = HomologicalAlgebra(split_attempts=config.SPLIT_ATTEMPTS)
        self.component_engine = ComponentEngine(self.homalg, sampling_prime=sampling_prime)
        self.oracle = SubmoduleOracle()
        self.stability = StabilityEngine(self.component_engine, self.oracle, oracle_prime=oracle_prime)
        self.moduli_engine = ModuliEngine(self.stability, workers=workers)

    @property
    def sampling_prime(self) -> int:
        return self.component_engine.sampling_prime

    @property
    def oracle_prime(self) -> int:
        return self.stability.oracle_prime

    # ========================================================================
    # ALGEBRAS
    # ========================================================================

    def resolve(self, source: str) -> BoundQuiverAlgebra:
        """
        Load an algebra from a file path or a catalog entry name.

        Raises:
            UnknownCatalogEntry: If source is neither an existing file nor an entry
            MalformedDocument: If the file is not a valid document
        """
        path = Path(source)
        if path.is_file():
            return self.serializer.load_from_file(str(path))
        if source in self.catalog:
            return self.catalog.load(source)
        raise UnknownCatalogEntry(source)

    def open(self, source: str) -> BoundQuiverAlgebra:
        """Resolve an algebra and make it the one later requests use."""
        self.algebra = self.resolve(source)
        logger.debug("Opened %s", self.algebra.name or source)
        return self.algebra

    def get_current_algebra(self) -> BoundQuiverAlgebra:
        """
        Raises:
            SessionError: If no algebra was opened
        """
        if self.algebra is None:
            raise SessionError("No algebra opened")
        return self.algebra

    # ========================================================================
    # REQUESTS ON THE CURRENT ALGEBRA
    # ========================================================================

    def dimension_vector(self, values: VectorInput) -> DimensionVector:
        """Dimension vector from values in declared vertex order or a vertex-keyed map."""
        algebra = self.get_current_algebra()
        if isinstance(values, Mapping):
            return DimensionVector.from_mapping(algebra.vertices, values)
        return DimensionVector(algebra.vertices, list(values))

    def weight(self, values: VectorInput) -> Weight:
        algebra = self.get_current_algebra()
        if isinstance(values, Mapping):
            return Weight.from_mapping(algebra.vertices, values)
        return Weight(algebra.vertices, list(values))

    def components(self, d: VectorInput) -> List[Component]:
        algebra = self.get_current_algebra()
        return self.component_engine.enumerate_components(algebra, self.dimension_vector(d))

    def moduli(self, d: VectorInput, theta: VectorInput, seed: Optional[int] = None,
               trials: Optional[int] = None) -> ModuliResult:
        """moduli_shape on the current algebra."""
        algebra = self.get_current_algebra()
        seed = config.SEED if seed is None else seed
        return self.moduli_engine.moduli_shape(algebra, self.dimension_vector(d), self.weight(theta),
                                               seed=seed, trials=trials)

    def report(self, result: ModuliResult) -> AnalysisReport:
        """AnalysisReport with this session's primes in the regime settings."""
        settings = self.reports.regime_settings(sampling_prime=self.sampling_prime,
                                                oracle_prime=self.oracle_prime)
        return self.reports.analysis_report(result, settings)
