"""
Explicit modules over a bound quiver algebra.

A module assigns a vector space F_p^{d(x)} to every vertex x and a matrix of
shape d(head) × d(tail) to every arrow. Basis vectors are numbered globally
vertex by vertex in declared vertex order.
"""

from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional, Sequence

import numpy as np

from core.errors import FieldMismatch, InvalidModule
from core.field_linalg import matmul_mod, rank_mod, zeros
from models.algebra import BoundQuiverAlgebra
from models.component import RankSequence
from models.dimension_vector import DimensionVector


class ExplicitModule:
    """A point of the module variety mod(A, d) over F_p."""

    def __init__(self, algebra: BoundQuiverAlgebra, dims: Mapping[str, int],
                 matrices: Mapping[str, np.ndarray], prime: int, canonical: bool = False,
                 label: str = ""):
        """
        Initialize a module.

        Args:
            algebra: The algebra acted on
            dims: Vertex to dimension; missing vertices are 0
            matrices: Arrow to matrix; missing arrows are zero maps
            prime: Field characteristic p
            canonical: True when the basis is a string/band basis whose
                matrices have at most one nonzero entry per row and column
            label: Optional display name

        Raises:
            InvalidModule: On shape mismatches or nonvanishing relations
        """
        self.algebra = algebra
        self.prime = int(prime)
        self.dimension_vector = DimensionVector.from_mapping(algebra.vertices, dims)
        self.canonical = canonical
        self.label = label

        self.matrices: Dict[str, np.ndarray] = {}
        for arrow in algebra.arrows:
            rows = self.dimension_vector[arrow.head]
            cols = self.dimension_vector[arrow.tail]
            if arrow.id in matrices:
                raw = np.asarray(matrices[arrow.id], dtype=np.int64)
                if raw.size != rows * cols:
                    raise InvalidModule(
                        f"Matrix of arrow {arrow.id} must have shape {rows}x{cols}"
                    )
                self.matrices[arrow.id] = raw.reshape(rows, cols) % self.prime
            else:
                self.matrices[arrow.id] = zeros(rows, cols)
        unknown = set(matrices) - set(algebra.arrow_ids)
        if unknown:
            raise InvalidModule(f"Matrices given for unknown arrows {sorted(unknown)}")

        self._validate()

    def _validate(self):
        for first, second in self.algebra.relations:
            product = matmul_mod(self.matrices[second], self.matrices[first], self.prime)
            if np.any(product):
                raise InvalidModule(f"Relation ({first}, {second}) does not vanish")

    @property
    def dims(self) -> Dict[str, int]:
        return self.dimension_vector.as_dict()

    def dim(self, vertex: str) -> int:
        return self.dimension_vector[vertex]

    @property
    def total_dimension(self) -> int:
        return self.dimension_vector.total

    def is_zero(self) -> bool:
        return self.total_dimension == 0

    def matrix(self, arrow_id: str) -> np.ndarray:
        return self.matrices[arrow_id]

    def path_matrix(self, path: Sequence[str], start: Optional[str] = None) -> np.ndarray:
        """
        Matrix of a path given as arrow ids in traversal order.

        The empty path at ``start`` is the identity of M(start).

        Raises:
            ValueError: If the path is empty and no start vertex is given
        """
        if not path:
            if start is None:
                raise ValueError("The empty path needs a start vertex")
            return np.eye(self.dim(start), dtype=np.int64)
        first = self.algebra.quiver.arrow(path[0])
        result = np.eye(self.dim(first.tail), dtype=np.int64)
        for arrow_id in path:
            result = matmul_mod(self.matrices[arrow_id], result, self.prime)
        return result

    def rank_profile(self) -> RankSequence:
        return RankSequence(
            self.algebra.arrow_ids,
            [rank_mod(self.matrices[a], self.prime) for a in self.algebra.arrow_ids],
        )

    def offsets(self) -> Dict[str, int]:
        """First global basis index of each vertex."""
        result = {}
        position = 0
        for v, n in self.dimension_vector.items():
            result[v] = position
            position += n
        return result

    def check_compatible(self, other: 'ExplicitModule'):
        if self.algebra != other.algebra:
            raise FieldMismatch("Modules over different algebras")
        if self.prime != other.prime:
            raise FieldMismatch(f"Modules over F_{self.prime} and F_{other.prime}")

    def __eq__(self, other) -> bool:
        """Equality of the matrices, not isomorphism."""
        if not isinstance(other, ExplicitModule):
            return False
        return (self.algebra == other.algebra and self.prime == other.prime
                and self.dimension_vector == other.dimension_vector
                and all(np.array_equal(self.matrices[a], other.matrices[a])
                        for a in self.algebra.arrow_ids))

    __hash__ = None

    def __str__(self) -> str:
        name = self.label or "Module"
        return f"{name}{self.dimension_vector} over F_{self.prime}"

    def __repr__(self) -> str:
        return (f"ExplicitModule(dims={self.dims}, prime={self.prime}, "
                f"matrices={ {a: m.tolist() for a, m in self.matrices.items()} })")


@dataclass
class Submodule:
    """
    Arrow-stable subspaces U(x) of a module, given as column bases.

    Attributes:
        module: The ambient module
        bases: Vertex to a d(x) × dim U(x) basis matrix
    """
    module: ExplicitModule
    bases: Dict[str, np.ndarray]

    @property
    def dimension_vector(self) -> DimensionVector:
        return DimensionVector(
            self.module.algebra.vertices,
            [self.bases[v].shape[1] for v in self.module.algebra.vertices],
        )

    @property
    def total_dimension(self) -> int:
        return self.dimension_vector.total


@dataclass
class HomBasis:
    """
    Basis of Hom(M, N); each element maps vertex x to a d_N(x) × d_M(x) matrix.
    """
    source: ExplicitModule
    target: ExplicitModule
    basis: List[Dict[str, np.ndarray]]

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def combination(self, coefficients: Sequence[int]) -> Dict[str, np.ndarray]:
        """Σ c_i φ_i over F_p."""
        p = self.source.prime
        result = {v: zeros(self.target.dim(v), self.source.dim(v))
                  for v in self.source.algebra.vertices}
        for c, phi in zip(coefficients, self.basis):
            for v in result:
                result[v] = (result[v] + int(c) * phi[v]) % p
        return result
