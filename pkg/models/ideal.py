"""
Quadratic monomial ideals.

A generator (first, second) is the length-two path that traverses ``first``
and then ``second``; it requires head(first) = tail(second).
"""

from typing import Dict, Iterable, List, Set, Tuple

from core.errors import DuplicateRelation, NonComposableRelation
from models.quiver import Quiver

Generator = Tuple[str, str]


class MonomialIdeal:
    """Ideal of a path algebra generated by length-two paths."""

    def __init__(self, quiver: Quiver, generators: Iterable[Generator]):
        """
        Initialize the ideal.

        Args:
            quiver: Quiver the generators live in
            generators: Pairs (first, second) of arrow ids

        Raises:
            UnknownArrow: If a generator names an undeclared arrow
            NonComposableRelation: If head(first) != tail(second)
            DuplicateRelation: If a generator is listed twice
        """
        self.quiver = quiver
        seen: Set[Generator] = set()
        for first, second in generators:
            a = quiver.arrow(first)
            b = quiver.arrow(second)
            if a.head != b.tail:
                raise NonComposableRelation(first, second)
            if (first, second) in seen:
                raise DuplicateRelation(first, second)
            seen.add((first, second))

        self.generators: Tuple[Generator, ...] = tuple(sorted(seen))
        self._generator_set = frozenset(self.generators)

        self._successors: Dict[str, List[str]] = {a: [] for a in quiver.arrow_ids}
        self._predecessors: Dict[str, List[str]] = {a: [] for a in quiver.arrow_ids}
        for first, second in self.generators:
            self._successors[first].append(second)
            self._predecessors[second].append(first)

    def contains(self, first: str, second: str) -> bool:
        return (first, second) in self._generator_set

    def relation_successors(self, arrow_id: str) -> List[str]:
        """Arrows b with (arrow, b) a generator."""
        return list(self._successors[arrow_id])

    def relation_predecessors(self, arrow_id: str) -> List[str]:
        """Arrows a with (a, arrow) a generator."""
        return list(self._predecessors[arrow_id])

    def related_arrows(self) -> Set[str]:
        """Arrows occurring in at least one generator."""
        return {a for g in self.generators for a in g}

    def __len__(self) -> int:
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    def __eq__(self, other) -> bool:
        if not isinstance(other, MonomialIdeal):
            return False
        return self._generator_set == other._generator_set

    def __hash__(self) -> int:
        return hash(self._generator_set)

    def __repr__(self) -> str:
        return f"MonomialIdeal(generators={list(self.generators)})"
