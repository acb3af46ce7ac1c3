"""
Machine-readable reports.

Every report is a pydantic model dumped with two-space indentation. Dict
fields keep the declared vertex and arrow order, so a report is a pure
function of the request and the seed.
"""

from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field, model_validator

from config import config
from models.algebra import BoundQuiverAlgebra
from models.component import Component
from models.moduli_report import ComponentModuli, ModuliResult
from serialization.algebra_serializer import AlgebraSerializer

SCHEMA_VERSION = "1"
TOOL_VERSION = "1.0.0"

# Settings that change results; workers and logging do not.
REGIME_SETTINGS = (
    'sampling_prime', 'oracle_prime', 'max_retries', 'split_attempts',
    'oracle_max_dim', 'oracle_max_subspaces', 'specialization_samples',
)


class ValidationReport(BaseModel):
    """Output of `validate`."""
    schema_version: str = Field(SCHEMA_VERSION, description="Report schema version")
    algebra: str = Field(..., description="Algebra name")
    classes: Dict[str, Any] = Field(..., description="Class flags and violations")
    chains: List[List[str]] = Field(default_factory=list, description="Relation chains")
    coloring: Optional[Dict[str, List[str]]] = Field(None, description="Exact coloring, gentle only")
    gentle_cover: Optional[Dict[str, List[str]]] = Field(None, description="Gentle cover, string only")


class ComponentEntry(BaseModel):
    """One irreducible component and its flags."""
    ranks: Dict[str, int] = Field(..., description="Rank sequence by arrow")
    dimension: int = Field(..., ge=0, description="Dimension of the component")
    string_defect: Optional[int] = Field(None, description="Defect, string class only")
    regular: Optional[bool] = Field(None, description="Regularity, string class only")
    maximal: bool = Field(True, description="Rank sequence is maximal")


class ComponentsReport(BaseModel):
    """Output of `components`."""
    schema_version: str = Field(SCHEMA_VERSION, description="Report schema version")
    algebra: str = Field(..., description="Algebra name")
    dimension_vector: Dict[str, int] = Field(..., description="d by vertex")
    components: List[ComponentEntry] = Field(default_factory=list)


class RequestEcho(BaseModel):
    """What was asked, pinned to the exact algebra document."""
    algebra: str = Field(..., description="Algebra name")
    algebra_sha256: str = Field(..., min_length=64, max_length=64,
                                description="SHA-256 of the canonical algebra document")
    dimension_vector: Dict[str, int]
    theta: Dict[str, int]
    seed: int
    trials: int = Field(..., gt=0)
    settings: Dict[str, Any] = Field(default_factory=dict, description="Regime settings")


class FactorReport(BaseModel):
    """One term m·C_i of a θ-stable decomposition."""
    multiplicity: int = Field(..., ge=1)
    dimension_vector: Dict[str, int]
    ranks: Dict[str, int]
    orbit_closure: bool


class ShapeReport(BaseModel):
    """A moduli shape with its normal form."""
    kind: str
    normalized: Optional[List[int]] = None
    text: str
    conjectural: bool = False
    factors: List[Dict[str, Any]] = Field(default_factory=list)

    @model_validator(mode='after')
    def validate_empty(self) -> 'ShapeReport':
        """Only Empty has no normal form."""
        if (self.kind == "Empty") != (self.normalized is None):
            raise ValueError(f"Shape kind {self.kind} inconsistent with normal form {self.normalized}")
        return self


class ComponentReport(ComponentEntry):
    """Moduli verdict for one component."""
    shape: ShapeReport
    stable_decomposition: Optional[List[FactorReport]] = None
    checks: Dict[str, Any] = Field(default_factory=dict)
    assumptions: List[str] = Field(default_factory=list)
    provenance: Dict[str, Any] = Field(default_factory=dict)


class AnalysisReport(BaseModel):
    """Output of `moduli`."""
    schema_version: str = Field(SCHEMA_VERSION, description="Report schema version")
    tool_version: str = Field(TOOL_VERSION, description="Version of the producing tool")
    request: RequestEcho
    components: List[ComponentReport] = Field(default_factory=list)


class ReportSerializer:
    """Builds report models from engine results."""

    def __init__(self, algebra_serializer: Optional[AlgebraSerializer] = None):
        self.algebra_serializer = algebra_serializer or AlgebraSerializer()

    def regime_settings(self, **overrides) -> Dict[str, Any]:
        """Config values that change results, with CLI overrides applied."""
        summary = config.summary()
        settings = {key: summary[key] for key in REGIME_SETTINGS}
        settings.update({k: v for k, v in overrides.items() if v is not None})
        return settings

    def validation_report(self, algebra: BoundQuiverAlgebra) -> ValidationReport:
        certificates = algebra.certificates
        return ValidationReport(
            algebra=algebra.name,
            classes=certificates.report.to_dict(),
            chains=[list(c.arrows) for c in certificates.chains],
            coloring=certificates.coloring.to_dict() if certificates.coloring else None,
            gentle_cover=certificates.gentle_cover.to_dict() if certificates.gentle_cover else None,
        )

    def component_entry(self, component: Component) -> Dict[str, Any]:
        return {
            'ranks': component.rank_sequence.as_dict(),
            'dimension': int(component.dimension),
            'string_defect': component.string_defect,
            'regular': component.is_regular,
            'maximal': component.is_maximal,
        }

    def components_report(self, algebra: BoundQuiverAlgebra, d, components: List[Component]) -> ComponentsReport:
        return ComponentsReport(
            algebra=algebra.name,
            dimension_vector=d.as_dict(),
            components=[ComponentEntry(**self.component_entry(c)) for c in components],
        )

    def _component_report(self, entry: ComponentModuli) -> ComponentReport:
        factors = None
        if entry.decomposition is not None:
            factors = [
                FactorReport(
                    multiplicity=f.multiplicity,
                    dimension_vector=f.dimension_vector.as_dict(),
                    ranks=f.component.rank_sequence.as_dict(),
                    orbit_closure=f.is_orbit_closure,
                )
                for f in entry.decomposition.factors
            ]
        return ComponentReport(
            **self.component_entry(entry.component),
            shape=ShapeReport(**entry.shape.to_dict()),
            stable_decomposition=factors,
            checks=entry.checks,
            assumptions=entry.assumptions,
            provenance=entry.provenance,
        )

    def analysis_report(self, result: ModuliResult, settings: Optional[Dict[str, Any]] = None) -> AnalysisReport:
        """AnalysisReport for a moduli_shape result."""
        request = RequestEcho(
            algebra=result.algebra.name,
            algebra_sha256=self.algebra_serializer.canonical_hash(result.algebra),
            dimension_vector=result.dimension_vector.as_dict(),
            theta=result.theta.as_dict(),
            seed=result.seed,
            trials=result.trials,
            settings=settings if settings is not None else self.regime_settings(),
        )
        return AnalysisReport(request=request,
                              components=[self._component_report(e) for e in result.components])

    def to_json(self, report: BaseModel) -> str:
        return report.model_dump_json(indent=2)
