"""
Generic decompositions of components.
"""

from dataclasses import dataclass, field
from typing import Dict, List, Tuple

from models.component import Component
from models.dimension_vector import DimensionVector
from models.explicit_module import ExplicitModule


@dataclass
class GenericSummand:
    """
    Indecomposable summands of a generic module sharing one summand component.

    Attributes:
        multiplicity: Number of summands in the component
        component: Component of the summands, identified by dimension vector and rank profile
        classes: Most pairwise non-isomorphic summands seen among them in one trial
        representative: One summand, sampled over the sampling prime
        samples: The same summand slot in every trial, in trial order
    """
    multiplicity: int
    component: Component
    classes: int
    representative: ExplicitModule
    samples: List[ExplicitModule] = field(default_factory=list)

    @property
    def dimension_vector(self) -> DimensionVector:
        return self.component.dimension_vector

    @property
    def key(self) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
        return self.component.key


@dataclass
class GenericDecomposition:
    """C = m_1·C_1 ⊕ ... ⊕ m_l·C_l as observed on sampled generic modules."""
    component: Component
    summands: List[GenericSummand]
    trials: int
    prime: int
    seed: int
    ext_certificates: Dict[str, int] = field(default_factory=dict)

    def signature(self) -> List[Tuple[Tuple, int, int]]:
        return [(s.key, s.multiplicity, s.classes) for s in self.summands]

    def total(self) -> DimensionVector:
        total = DimensionVector.zero(self.component.dimension_vector.vertices)
        for s in self.summands:
            total = total + s.dimension_vector.scale(s.multiplicity)
        return total

    def is_indecomposable(self) -> bool:
        return len(self.summands) == 1 and self.summands[0].multiplicity == 1
