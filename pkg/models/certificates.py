"""
Certificates attached to a bound quiver algebra: class report, relation
chains and colorings.
"""

from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional, Tuple

from models.quiver import Quiver

Generator = Tuple[str, str]


@dataclass(frozen=True)
class ClassReport:
    """Result of classifying a bound quiver algebra."""
    is_acyclic: bool
    is_quadratic_monomial: bool
    is_disjoint_chain: bool
    is_string: bool
    is_gentle: bool
    violations: Tuple[str, ...] = ()

    def to_dict(self) -> Dict[str, object]:
        return {
            'acyclic': self.is_acyclic,
            'quadraticMonomial': self.is_quadratic_monomial,
            'disjointChain': self.is_disjoint_chain,
            'string': self.is_string,
            'gentle': self.is_gentle,
            'violations': list(self.violations),
        }


@dataclass(frozen=True)
class RelationChain:
    """Maximal path a1, ..., ak in the generator overlap graph (k >= 2)."""
    arrows: Tuple[str, ...]

    def generators(self) -> List[Generator]:
        return list(zip(self.arrows, self.arrows[1:]))

    def __len__(self) -> int:
        return len(self.arrows)

    def __str__(self) -> str:
        return "[" + ", ".join(self.arrows) + "]"


@dataclass
class Coloring:
    """
    Assignment of arrows to colors; each color class is a directed path.

    Attributes:
        quiver: The quiver being colored
        color_map: Arrow id to color label
    """
    quiver: Quiver
    color_map: Dict[str, str]
    _classes: Dict[str, Tuple[str, ...]] = field(default_factory=dict, init=False, repr=False)

    def __post_init__(self):
        members: Dict[str, List[str]] = {}
        for arrow_id in self.quiver.arrow_ids:
            members.setdefault(self.color_map[arrow_id], []).append(arrow_id)
        for label, arrow_ids in members.items():
            self._classes[label] = self._as_path(label, arrow_ids)

    def _as_path(self, label: str, arrow_ids: List[str]) -> Tuple[str, ...]:
        by_tail = {}
        heads = set()
        for arrow_id in arrow_ids:
            arrow = self.quiver.arrow(arrow_id)
            if arrow.tail in by_tail:
                raise ValueError(f"Color {label} branches at vertex {arrow.tail}")
            by_tail[arrow.tail] = arrow
            heads.add(arrow.head)
        starts = [a for a in arrow_ids if self.quiver.arrow(a).tail not in heads]
        if len(starts) != 1:
            raise ValueError(f"Color {label} is not a single directed path")
        path = []
        arrow = self.quiver.arrow(starts[0])
        while arrow is not None:
            path.append(arrow.id)
            arrow = by_tail.get(arrow.head)
        if len(path) != len(arrow_ids):
            raise ValueError(f"Color {label} is not a single directed path")
        return tuple(path)

    @property
    def classes(self) -> Dict[str, Tuple[str, ...]]:
        """Color label to the arrows of that color in path order."""
        return dict(self._classes)

    @property
    def num_colors(self) -> int:
        return len(self._classes)

    def induced_ideal(self) -> FrozenSet[Generator]:
        """I_c: all same-color composable pairs."""
        pairs = set()
        for path in self._classes.values():
            pairs.update(zip(path, path[1:]))
        return frozenset(pairs)

    def to_dict(self) -> Dict[str, List[str]]:
        return {label: list(path)
                for label, path in sorted(self._classes.items(), key=lambda item: (len(item[0]), item[0]))}


@dataclass(frozen=True)
class AlgebraCertificates:
    """Everything certified about an algebra at construction time."""
    report: ClassReport
    chains: Tuple[RelationChain, ...]
    coloring: Optional[Coloring] = None
    gentle_cover: Optional[Coloring] = None
