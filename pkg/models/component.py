"""
Rank sequences and components of module varieties.
"""

from typing import Dict, Iterator, Optional, Sequence, Tuple

from core.errors import InvalidRankSequence


class RankSequence:
    """Arrow-indexed non-negative integers, in declared arrow order."""

    __slots__ = ('arrows', 'ranks')

    def __init__(self, arrows: Sequence[str], ranks: Sequence[int]):
        if len(arrows) != len(ranks):
            raise InvalidRankSequence(f"Expected {len(arrows)} ranks, got {len(ranks)}")
        if any(int(r) < 0 for r in ranks):
            raise InvalidRankSequence(f"Ranks must be non-negative: {list(ranks)}")
        self.arrows: Tuple[str, ...] = tuple(arrows)
        self.ranks: Tuple[int, ...] = tuple(int(r) for r in ranks)

    @classmethod
    def from_mapping(cls, arrows: Sequence[str], mapping: Dict[str, int]) -> 'RankSequence':
        return cls(arrows, [mapping.get(a, 0) for a in arrows])

    def __getitem__(self, arrow_id: str) -> int:
        return self.ranks[self.arrows.index(arrow_id)]

    def items(self) -> Iterator[Tuple[str, int]]:
        return zip(self.arrows, self.ranks)

    def as_dict(self) -> Dict[str, int]:
        return dict(zip(self.arrows, self.ranks))

    @property
    def total(self) -> int:
        return sum(self.ranks)

    def increment(self, arrow_id: str) -> 'RankSequence':
        index = self.arrows.index(arrow_id)
        ranks = list(self.ranks)
        ranks[index] += 1
        return RankSequence(self.arrows, ranks)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RankSequence):
            return False
        return self.arrows == other.arrows and self.ranks == other.ranks

    def __hash__(self) -> int:
        return hash((self.arrows, self.ranks))

    def __lt__(self, other: 'RankSequence') -> bool:
        return self.ranks < other.ranks

    def __str__(self) -> str:
        return "(" + ",".join(str(r) for r in self.ranks) + ")"

    def __repr__(self) -> str:
        return f"RankSequence({self.as_dict()})"


class Component:
    """
    The irreducible component C(A, d, r) of mod(A, d) cut out by rank bounds r.

    Flags (dimension, string defect, regularity, maximality) are filled in by
    ComponentEngine; the string flags stay None outside the string class.
    """

    def __init__(self, algebra, dimension_vector, rank_sequence: RankSequence,
                 is_maximal: bool = True, dimension: Optional[int] = None,
                 string_defect: Optional[int] = None, is_regular: Optional[bool] = None):
        self.algebra = algebra
        self.dimension_vector = dimension_vector
        self.rank_sequence = rank_sequence
        self.is_maximal = is_maximal
        self.dimension = dimension
        self.string_defect = string_defect
        self.is_regular = is_regular

    @property
    def key(self) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
        """Identity of the component: (dimension vector, rank sequence)."""
        return (self.dimension_vector.values, self.rank_sequence.ranks)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Component):
            return False
        return self.algebra == other.algebra and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __lt__(self, other: 'Component') -> bool:
        return self.key < other.key

    def __str__(self) -> str:
        return f"C(d={self.dimension_vector}, r={self.rank_sequence})"

    def __repr__(self) -> str:
        return (f"Component(d={self.dimension_vector.as_dict()}, "
                f"r={self.rank_sequence.as_dict()}, dimension={self.dimension})")
