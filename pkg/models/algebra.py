"""
Bound quiver algebra model.
A quiver together with a quadratic monomial ideal and its certificates.
"""

from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from models.certificates import AlgebraCertificates, ClassReport, Coloring, RelationChain
from models.ideal import MonomialIdeal
from models.quiver import Arrow, Quiver
from validation.algebra_validator import AlgebraValidator


class BoundQuiverAlgebra:
    """The algebra KQ/I for a quadratic monomial ideal I."""

    def __init__(self, quiver: Quiver, relations: Iterable[Tuple[str, str]], name: str = ""):
        """
        Initialize the algebra and compute all certificates.

        Args:
            quiver: The quiver
            relations: Generators (first, second) in traversal order
            name: Display name, e.g. a catalog entry

        Raises:
            UnknownArrow, NonComposableRelation, DuplicateRelation: On bad relations
        """
        self.quiver = quiver
        self.ideal = MonomialIdeal(quiver, relations)
        self.name = name
        self.certificates: AlgebraCertificates = AlgebraValidator().certify(quiver, self.ideal)

        chain_index: Dict[str, int] = {}
        if self.report.is_disjoint_chain:
            for i, chain in enumerate(self.certificates.chains):
                for arrow_id in chain.arrows:
                    chain_index[arrow_id] = i
        self._chain_index = chain_index

    @classmethod
    def from_lists(cls, vertices: Sequence[str], arrows: Sequence[Tuple[str, str, str]],
                   relations: Iterable[Tuple[str, str]] = (), name: str = "") -> 'BoundQuiverAlgebra':
        """Build from plain lists: arrows as (id, tail, head) triples."""
        quiver = Quiver(vertices, [Arrow(i, t, h) for i, t, h in arrows])
        return cls(quiver, relations, name=name)

    @property
    def vertices(self) -> Tuple[str, ...]:
        return self.quiver.vertices

    @property
    def arrows(self) -> Tuple[Arrow, ...]:
        return self.quiver.arrows

    @property
    def arrow_ids(self) -> Tuple[str, ...]:
        return self.quiver.arrow_ids

    @property
    def relations(self) -> Tuple[Tuple[str, str], ...]:
        return self.ideal.generators

    @property
    def report(self) -> ClassReport:
        return self.certificates.report

    @property
    def chains(self) -> Tuple[RelationChain, ...]:
        return self.certificates.chains

    @property
    def coloring(self) -> Optional[Coloring]:
        return self.certificates.coloring

    def is_relation(self, first: str, second: str) -> bool:
        return self.ideal.contains(first, second)

    def chain_of(self, arrow_id: str) -> Optional[RelationChain]:
        """The relation chain containing an arrow (disjoint-chain class only)."""
        index = self._chain_index.get(arrow_id)
        return None if index is None else self.certificates.chains[index]

    def free_arrows(self) -> List[str]:
        """Arrows in no generator, in declared order."""
        related = self.ideal.related_arrows()
        return [a for a in self.arrow_ids if a not in related]

    def __eq__(self, other) -> bool:
        if not isinstance(other, BoundQuiverAlgebra):
            return False
        return self.quiver == other.quiver and self.ideal == other.ideal

    def __hash__(self) -> int:
        return hash((self.quiver, self.ideal))

    def __str__(self) -> str:
        label = self.name or "algebra"
        return (f"{label}(vertices={len(self.vertices)}, arrows={len(self.arrows)}, "
                f"relations={len(self.relations)})")

    def __repr__(self) -> str:
        return (f"BoundQuiverAlgebra(name='{self.name}', quiver={self.quiver!r}, "
                f"relations={list(self.relations)})")
