"""
θ-stable decompositions and polystable data.
"""

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from models.component import Component
from models.dimension_vector import DimensionVector
from models.explicit_module import ExplicitModule


@dataclass
class PolystableDatum:
    """gr_θ(M): θ-stable modules with multiplicities."""
    summands: List[Tuple[ExplicitModule, int]]

    @property
    def dimension_vector(self) -> DimensionVector:
        vertices = self.summands[0][0].algebra.vertices if self.summands else ()
        total = DimensionVector.zero(vertices)
        for module, multiplicity in self.summands:
            total = total + module.dimension_vector.scale(multiplicity)
        return total

    def signature(self) -> List[Tuple[Tuple[int, ...], int]]:
        """Sorted (dimension vector, multiplicity) pairs."""
        return sorted((m.dimension_vector.values, k) for m, k in self.summands)


@dataclass
class StableFactor:
    """
    One term m·C_i of a θ-stable decomposition.

    Attributes:
        multiplicity: m_i >= 1
        component: The θ-stable component C_i (dimension vector d_i, ranks)
        is_orbit_closure: True if C_i is the closure of a single orbit
        module: A certified θ-stable module in C_i, when one was computed
    """
    multiplicity: int
    component: Component
    is_orbit_closure: bool
    module: Optional[ExplicitModule] = None

    @property
    def dimension_vector(self) -> DimensionVector:
        return self.component.dimension_vector


@dataclass
class StableDecomposition:
    """C = m_1·C_1 ∔ ... ∔ m_l·C_l for a weight θ, with provenance."""
    component: Component
    factors: List[StableFactor]
    provenance: Dict[str, object] = field(default_factory=dict)

    def total(self) -> DimensionVector:
        total = DimensionVector.zero(self.component.dimension_vector.vertices)
        for f in self.factors:
            total = total + f.dimension_vector.scale(f.multiplicity)
        return total

    def non_orbit_factors(self) -> List[StableFactor]:
        return [f for f in self.factors if not f.is_orbit_closure]
