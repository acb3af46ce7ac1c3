"""
Per-component moduli results.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

from models.component import Component
from models.dimension_vector import DimensionVector, Weight
from models.moduli_shape import ModuliShape
from models.stable_decomposition import StableDecomposition

ASSUMPTIONS = (
    "component is normal",
    "non-orbit part of the component is normal",
    "moduli space of the component is an irreducible component of the ambient moduli space",
)


@dataclass
class ComponentModuli:
    """
    Moduli verdict for one irreducible component.

    Attributes:
        component: The component C(A, d, r)
        shape: Isomorphism type of M(C)^ss_θ
        decomposition: θ-stable decomposition, None when the shape is Empty
        checks: Named consistency checks and whether they passed
        assumptions: Hypotheses taken as given, not verified
        provenance: Seeds, trials, primes and regimes behind the verdict
    """
    component: Component
    shape: ModuliShape
    decomposition: Optional[StableDecomposition] = None
    checks: Dict[str, Any] = field(default_factory=dict)
    assumptions: List[str] = field(default_factory=list)
    provenance: Dict[str, Any] = field(default_factory=dict)

    @property
    def is_empty(self) -> bool:
        return self.shape.is_empty


@dataclass
class ModuliResult:
    """moduli_shape output: the request echo plus one entry per component."""
    algebra: Any
    dimension_vector: DimensionVector
    theta: Weight
    seed: int
    trials: int
    components: List[ComponentModuli]

    def shapes(self) -> List[ModuliShape]:
        return [c.shape for c in self.components]
