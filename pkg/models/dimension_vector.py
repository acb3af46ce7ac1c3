"""
Dimension vectors and weights.
Both are integer vectors indexed by the vertices of a quiver, stored in the
quiver's declared vertex order.
"""

from typing import Dict, Iterator, Mapping, Sequence, Tuple

from core.errors import UnknownVertex


class _VertexVector:
    """Integer vector keyed by vertex, immutable and hashable."""

    __slots__ = ('vertices', 'values')

    def __init__(self, vertices: Sequence[str], values: Sequence[int]):
        if len(vertices) != len(values):
            raise ValueError(
                f"Expected {len(vertices)} entries, got {len(values)}"
            )
        object.__setattr__(self, 'vertices', tuple(vertices))
        object.__setattr__(self, 'values', tuple(int(v) for v in values))

    def __setattr__(self, name, value):
        raise AttributeError(f"{type(self).__name__} is immutable")

    @classmethod
    def from_mapping(cls, vertices: Sequence[str], mapping: Mapping[str, int]):
        """Build from a vertex-keyed map; missing vertices are 0."""
        unknown = set(mapping) - set(vertices)
        if unknown:
            raise UnknownVertex(sorted(unknown)[0])
        return cls(vertices, [mapping.get(v, 0) for v in vertices])

    @classmethod
    def zero(cls, vertices: Sequence[str]):
        return cls(vertices, [0] * len(vertices))

    @classmethod
    def unit(cls, vertices: Sequence[str], vertex: str):
        return cls(vertices, [1 if v == vertex else 0 for v in vertices])

    def __getitem__(self, vertex: str) -> int:
        return self.values[self.vertices.index(vertex)]

    def __iter__(self) -> Iterator[int]:
        return iter(self.values)

    def __len__(self) -> int:
        return len(self.values)

    def items(self) -> Iterator[Tuple[str, int]]:
        return zip(self.vertices, self.values)

    def as_dict(self) -> Dict[str, int]:
        return dict(zip(self.vertices, self.values))

    def _check_compatible(self, other: '_VertexVector'):
        if self.vertices != other.vertices:
            raise ValueError("Vectors live on different vertex sets")

    def __eq__(self, other) -> bool:
        if not isinstance(other, _VertexVector):
            return False
        return self.vertices == other.vertices and self.values == other.values

    def __hash__(self) -> int:
        return hash((type(self).__name__, self.vertices, self.values))

    def __lt__(self, other: '_VertexVector') -> bool:
        return self.values < other.values

    def __str__(self) -> str:
        return "(" + ",".join(str(v) for v in self.values) + ")"

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.as_dict()})"


class DimensionVector(_VertexVector):
    """Non-negative integer vector d with total(d) = Σ d(x)."""

    __slots__ = ()

    def __init__(self, vertices: Sequence[str], values: Sequence[int]):
        super().__init__(vertices, values)
        if any(v < 0 for v in self.values):
            raise ValueError(f"Dimension vector entries must be non-negative: {list(values)}")

    @property
    def total(self) -> int:
        return sum(self.values)

    def support(self) -> Tuple[str, ...]:
        return tuple(v for v, n in self.items() if n > 0)

    def is_zero(self) -> bool:
        return self.total == 0

    def __add__(self, other: 'DimensionVector') -> 'DimensionVector':
        self._check_compatible(other)
        return DimensionVector(self.vertices, [a + b for a, b in zip(self.values, other.values)])

    def __sub__(self, other: 'DimensionVector') -> 'DimensionVector':
        self._check_compatible(other)
        return DimensionVector(self.vertices, [a - b for a, b in zip(self.values, other.values)])

    def scale(self, factor: int) -> 'DimensionVector':
        return DimensionVector(self.vertices, [factor * a for a in self.values])

    def dominates(self, other: 'DimensionVector') -> bool:
        """Pointwise comparison self >= other."""
        self._check_compatible(other)
        return all(a >= b for a, b in zip(self.values, other.values))

    def gl_dimension(self) -> int:
        """dim GL(d) = Σ d(x)²."""
        return sum(n * n for n in self.values)


class Weight(_VertexVector):
    """Integer weight θ, paired with dimension vectors by θ(d) = Σ θ(x)d(x)."""

    __slots__ = ()

    def pair(self, d: DimensionVector) -> int:
        self._check_compatible(d)
        return sum(t * n for t, n in zip(self.values, d.values))

    def __call__(self, d: DimensionVector) -> int:
        return self.pair(d)

    def __add__(self, other: 'Weight') -> 'Weight':
        self._check_compatible(other)
        return Weight(self.vertices, [a + b for a, b in zip(self.values, other.values)])
