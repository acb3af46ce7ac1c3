"""
Core algebra computations.
Paths, indecomposable projectives, simples and the Euler form of an acyclic
quadratic monomial algebra.
"""

import logging
from typing import Dict, List, Tuple

import numpy as np

from core.errors import UnsupportedClass
from core.field_linalg import zeros
from models.algebra import BoundQuiverAlgebra
from models.dimension_vector import DimensionVector
from models.explicit_module import ExplicitModule

logger = logging.getLogger(__name__)

Path = Tuple[str, ...]


class AlgebraEngine:
    """Stateless computations on bound quiver algebras."""

    def _require_acyclic(self, algebra: BoundQuiverAlgebra):
        if not algebra.report.is_acyclic:
            raise UnsupportedClass(f"{algebra.name or 'algebra'} has an oriented cycle")

    def path_head(self, algebra: BoundQuiverAlgebra, start: str, path: Path) -> str:
        return algebra.quiver.arrow(path[-1]).head if path else start

    def paths_from(self, algebra: BoundQuiverAlgebra, vertex: str) -> List[Path]:
        """
        Nonzero paths of A starting at a vertex.

        A path survives in KQ/I when no two consecutive arrows form a
        generator. The trivial path is the empty tuple.

        Returns:
            Paths sorted by length, then by declared arrow order
        """
        self._require_acyclic(algebra)
        algebra.quiver.vertex_index(vertex)
        position = {a: i for i, a in enumerate(algebra.arrow_ids)}
        found: List[Path] = []
        frontier: List[Path] = [()]
        while frontier:
            found.extend(frontier)
            extended = []
            for path in frontier:
                end = self.path_head(algebra, vertex, path)
                for arrow in algebra.quiver.arrows_from(end):
                    if path and algebra.is_relation(path[-1], arrow.id):
                        continue
                    extended.append(path + (arrow.id,))
            frontier = extended
        return sorted(found, key=lambda w: (len(w), [position[a] for a in w]))

    def projective_basis(self, algebra: BoundQuiverAlgebra, vertex: str) -> Dict[str, List[Path]]:
        """Nonzero paths from a vertex grouped by the vertex they end at."""
        by_vertex: Dict[str, List[Path]] = {v: [] for v in algebra.vertices}
        for w in self.paths_from(algebra, vertex):
            by_vertex[self.path_head(algebra, vertex, w)].append(w)
        return by_vertex

    def projective(self, algebra: BoundQuiverAlgebra, vertex: str, prime: int) -> ExplicitModule:
        """
        The indecomposable projective P_x = A e_x.

        Its basis is the set of nonzero paths from x; an arrow acts by
        extending a path, or by zero when the extension is a relation.
        """
        by_vertex = self.projective_basis(algebra, vertex)
        index = {w: i for ws in by_vertex.values() for i, w in enumerate(ws)}

        matrices = {}
        for arrow in algebra.arrows:
            matrix = zeros(len(by_vertex[arrow.head]), len(by_vertex[arrow.tail]))
            for j, w in enumerate(by_vertex[arrow.tail]):
                if w and algebra.is_relation(w[-1], arrow.id):
                    continue
                matrix[index[w + (arrow.id,)], j] = 1
            matrices[arrow.id] = matrix

        dims = {v: len(ws) for v, ws in by_vertex.items()}
        return ExplicitModule(algebra, dims, matrices, prime, canonical=True, label=f"P{vertex}")

    def simple(self, algebra: BoundQuiverAlgebra, vertex: str, prime: int) -> ExplicitModule:
        algebra.quiver.vertex_index(vertex)
        return ExplicitModule(algebra, {vertex: 1}, {}, prime, canonical=True, label=f"S{vertex}")

    def relation_sequences(self, algebra: BoundQuiverAlgebra) -> List[Path]:
        """
        All arrow sequences of length >= 2 whose consecutive pairs are generators.

        These are the n-fold relation chains indexing Ext^n between simples.
        """
        self._require_acyclic(algebra)
        sequences: List[Path] = []
        stack: List[Path] = [(first, second) for first, second in algebra.relations]
        while stack:
            sequence = stack.pop()
            sequences.append(sequence)
            for nxt in algebra.ideal.relation_successors(sequence[-1]):
                stack.append(sequence + (nxt,))
        position = {a: i for i, a in enumerate(algebra.arrow_ids)}
        return sorted(sequences, key=lambda w: (len(w), [position[a] for a in w]))

    def euler_form(self, algebra: BoundQuiverAlgebra, d: DimensionVector, e: DimensionVector) -> int:
        """
        The Euler form <<d, e>> = Σ_l (-1)^l dim Ext^l(M, N).

        Computed as Σ d(x)e(x) - Σ_a d(ta)e(ha) + Σ_n (-1)^n Σ_w d(tw)e(hw)
        over relation sequences w of length n >= 2.
        """
        self._require_acyclic(algebra)
        value = sum(a * b for a, b in zip(d.values, e.values))
        for arrow in algebra.arrows:
            value -= d[arrow.tail] * e[arrow.head]
        for w in self.relation_sequences(algebra):
            tail = algebra.quiver.arrow(w[0]).tail
            head = algebra.quiver.arrow(w[-1]).head
            value += (-1) ** len(w) * d[tail] * e[head]
        return value

    def simple_ext_matrix(self, algebra: BoundQuiverAlgebra) -> np.ndarray:
        """
        Matrix E with E[x, y] = Σ_l (-1)^l dim Ext^l(S_x, S_y).

        Ext^0 is the identity, Ext^1 counts arrows x -> y and Ext^n counts
        relation sequences of length n from x to y; <<d, e>> = dᵀ E e.
        """
        self._require_acyclic(algebra)
        n = len(algebra.vertices)
        index = algebra.quiver.vertex_index
        matrix = np.eye(n, dtype=np.int64)
        for arrow in algebra.arrows:
            matrix[index(arrow.tail), index(arrow.head)] -= 1
        for w in self.relation_sequences(algebra):
            tail = algebra.quiver.arrow(w[0]).tail
            head = algebra.quiver.arrow(w[-1]).head
            matrix[index(tail), index(head)] += (-1) ** len(w)
        return matrix

    def global_dimension_bound(self, algebra: BoundQuiverAlgebra) -> int:
        """Projective dimensions never exceed the longest path length."""
        self._require_acyclic(algebra)
        return algebra.quiver.longest_path_length()
