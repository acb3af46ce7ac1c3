"""
Submodule enumeration.

The oracle enumerates arrow-stable subspace tuples exhaustively over a small
prime field; the coordinate fast path lists the arrow-closed subsets of a
canonical string or band basis.
"""

import logging
from typing import Dict, FrozenSet, Iterator, List, Optional, Set, Tuple

import numpy as np

from config import config
from core.errors import NotCanonicalForm, OracleScaleExceeded
from core.field_linalg import (canonical_key, complement_basis, count_subspaces, iter_subspaces,
                               matmul_mod, subspace_sum, zeros)
from models.dimension_vector import DimensionVector
from models.explicit_module import ExplicitModule, Submodule

logger = logging.getLogger(__name__)

ORACLE_PRIMES = (2, 3, 5)


class SubmoduleOracle:
    """
    Exhaustive submodule enumeration over F_2, F_3 or F_5.

    Vertices are processed in topological order, so when a vertex x is reached
    every arrow into x already has its source subspace fixed and U(x) ranges
    over the subspaces containing W(x) = Σ_a M(a)U(ta).
    """

    def __init__(self, max_dim: Optional[int] = None, max_subspaces: Optional[int] = None):
        self.max_dim = config.ORACLE_MAX_DIM if max_dim is None else max_dim
        self.max_subspaces = config.ORACLE_MAX_SUBSPACES if max_subspaces is None else max_subspaces

    # ========================================================================
    # GUARD
    # ========================================================================

    def guard(self, module: ExplicitModule):
        """
        Raises:
            OracleScaleExceeded: Outside p ∈ {2,3,5}, total dimension <= max_dim
                and the per-vertex subspace budget
        """
        p = module.prime
        if p not in ORACLE_PRIMES:
            raise OracleScaleExceeded(f"Oracle needs p in {ORACLE_PRIMES}, got {p}")
        if module.total_dimension > self.max_dim:
            raise OracleScaleExceeded(
                f"Oracle limited to total dimension {self.max_dim}, got {module.total_dimension}"
            )
        largest = max((count_subspaces(n, p) for n in module.dimension_vector), default=1)
        if largest > self.max_subspaces:
            raise OracleScaleExceeded(
                f"A vertex space of {module.dimension_vector} has {largest} subspaces over F_{p}"
            )

    def _subspaces_containing(self, required: np.ndarray, n: int, p: int) -> Iterator[np.ndarray]:
        complement = complement_basis(required, n, p)
        for choice in iter_subspaces(complement.shape[1], p):
            yield np.concatenate([required, matmul_mod(complement, choice, p)], axis=1)

    def _required(self, module: ExplicitModule, vertex: str, chosen: Dict[str, np.ndarray]) -> np.ndarray:
        p = module.prime
        images = [matmul_mod(module.matrix(a.id), chosen[a.tail], p)
                  for a in module.algebra.quiver.arrows_into(vertex)]
        return subspace_sum(images, module.dim(vertex), p)

    # ========================================================================
    # ENUMERATION
    # ========================================================================

    def dimension_vectors(self, module: ExplicitModule) -> Set[DimensionVector]:
        """
        Exact set of dimension vectors of all submodules of M.

        Raises:
            OracleScaleExceeded: Outside the oracle guard
        """
        self.guard(module)
        algebra = module.algebra
        quiver = algebra.quiver
        order = quiver.topological_order()
        p = module.prime

        live: List[Tuple[str, ...]] = []
        for idx in range(len(order)):
            pending = set(order[idx:])
            live.append(tuple(y for y in order[:idx]
                              if any(a.head in pending for a in quiver.arrows_from(y))))

        memo: Dict[Tuple, FrozenSet[Tuple[int, ...]]] = {}
        visited = [0]
        chosen: Dict[str, np.ndarray] = {}

        def search(idx: int) -> FrozenSet[Tuple[int, ...]]:
            if idx == len(order):
                return frozenset({()})
            key = (idx,) + tuple(canonical_key(chosen[y], p) for y in live[idx])
            if key in memo:
                return memo[key]

            x = order[idx]
            required = self._required(module, x, chosen)
            n = module.dim(x)
            results: Set[Tuple[int, ...]] = set()
            if quiver.is_sink(x):
                rest = search(idx + 1)
                for k in range(required.shape[1], n + 1):
                    results.update((k,) + tail for tail in rest)
            else:
                for subspace in self._subspaces_containing(required, n, p):
                    visited[0] += 1
                    if visited[0] > self.max_subspaces:
                        raise OracleScaleExceeded(
                            f"Oracle visited more than {self.max_subspaces} subspaces"
                        )
                    chosen[x] = subspace
                    results.update((subspace.shape[1],) + tail for tail in search(idx + 1))
                    del chosen[x]
            memo[key] = frozenset(results)
            return memo[key]

        found = search(0)
        logger.debug("Oracle visited %d subspaces for %s", visited[0], module.dimension_vector)
        return {DimensionVector.from_mapping(algebra.vertices, dict(zip(order, dims))) for dims in found}

    def iter_submodules(self, module: ExplicitModule) -> Iterator[Submodule]:
        """
        Every submodule of M exactly once, as arrow-stable column bases.

        Raises:
            OracleScaleExceeded: Outside the oracle guard
        """
        self.guard(module)
        order = module.algebra.quiver.topological_order()
        p = module.prime
        chosen: Dict[str, np.ndarray] = {}
        visited = [0]

        def walk(idx: int) -> Iterator[Submodule]:
            if idx == len(order):
                yield Submodule(module, {v: chosen[v].copy() for v in order})
                return
            x = order[idx]
            required = self._required(module, x, chosen)
            for subspace in self._subspaces_containing(required, module.dim(x), p):
                visited[0] += 1
                if visited[0] > self.max_subspaces:
                    raise OracleScaleExceeded(f"Oracle visited more than {self.max_subspaces} subspaces")
                chosen[x] = subspace
                yield from walk(idx + 1)
                del chosen[x]

        yield from walk(0)

    # ========================================================================
    # COORDINATE FAST PATH
    # ========================================================================

    def coordinate_dimension_vectors(self, module: ExplicitModule) -> Set[DimensionVector]:
        """
        Dimension vectors of the arrow-closed subsets of a canonical basis.

        Every coordinate subset closed under the arrows spans a submodule, so
        the result is contained in dimension_vectors(M).

        Raises:
            NotCanonicalForm: If some matrix has two nonzero entries in a row or column
        """
        algebra = module.algebra
        successors: Dict[Tuple[str, int], List[Tuple[str, int]]] = {
            (v, i): [] for v in algebra.vertices for i in range(module.dim(v))
        }
        for arrow in algebra.arrows:
            matrix = module.matrix(arrow.id)
            if matrix.size and (np.any(np.count_nonzero(matrix, axis=0) > 1)
                                or np.any(np.count_nonzero(matrix, axis=1) > 1)):
                raise NotCanonicalForm(f"Matrix of arrow {arrow.id} is not a scaled partial permutation")
            for row, col in zip(*np.nonzero(matrix)):
                successors[(arrow.tail, int(col))].append((arrow.head, int(row)))

        reverse_order = list(reversed(algebra.quiver.topological_order()))
        elements = [(v, i) for v in reverse_order for i in range(module.dim(v))]
        position = {v: k for k, v in enumerate(algebra.vertices)}
        found: Set[Tuple[int, ...]] = set()
        counts = [0] * len(algebra.vertices)
        included: Set[Tuple[str, int]] = set()

        def extend(i: int):
            if i == len(elements):
                found.add(tuple(counts))
                return
            extend(i + 1)
            element = elements[i]
            if all(s in included for s in successors[element]):
                included.add(element)
                counts[position[element[0]]] += 1
                extend(i + 1)
                counts[position[element[0]]] -= 1
                included.discard(element)

        extend(0)
        return {DimensionVector(algebra.vertices, dims) for dims in found}

    # ========================================================================
    # SAMPLED SEARCH (NO GUARD)
    # ========================================================================

    def generated_submodule(self, module: ExplicitModule, generators: Dict[str, np.ndarray]) -> Submodule:
        """Smallest submodule containing the given columns at each vertex."""
        p = module.prime
        chosen: Dict[str, np.ndarray] = {}
        for x in module.algebra.quiver.topological_order():
            spans = [self._required(module, x, chosen)]
            if x in generators and generators[x].size:
                spans.append(generators[x] % p)
            chosen[x] = subspace_sum(spans, module.dim(x), p)
        return Submodule(module, chosen)

    def sampled_dimension_vectors(self, module: ExplicitModule, rng: np.random.Generator,
                                  samples: int = 64) -> Set[DimensionVector]:
        """
        Dimension vectors of some submodules of M, over any prime and any size.

        Covers the submodules generated by whole vertex spaces (every subset of
        the support), by each basis vector, and by random one- and two-vector
        tuples. The result is a subset of dimension_vectors(M).
        """
        algebra = module.algebra
        p = module.prime
        support = [v for v in algebra.vertices if module.dim(v) > 0]
        found: Set[DimensionVector] = set()

        def add(generators: Dict[str, np.ndarray]):
            found.add(self.generated_submodule(module, generators).dimension_vector)

        for mask in range(1 << len(support)):
            add({v: np.eye(module.dim(v), dtype=np.int64)
                 for i, v in enumerate(support) if mask >> i & 1})
        for v in support:
            for i in range(module.dim(v)):
                add({v: np.eye(module.dim(v), dtype=np.int64)[:, [i]]})
        for _ in range(samples if support else 0):
            picks = [support[int(k)] for k in rng.integers(0, len(support), size=int(rng.integers(1, 3)))]
            generators: Dict[str, np.ndarray] = {}
            for v in picks:
                column = rng.integers(0, p, size=(module.dim(v), 1), dtype=np.int64)
                generators[v] = (column if v not in generators
                                 else np.concatenate([generators[v], column], axis=1))
            add(generators)
        return found

    def zero_submodule(self, module: ExplicitModule) -> Submodule:
        return Submodule(module, {v: zeros(module.dim(v), 0) for v in module.algebra.vertices})

    def whole_submodule(self, module: ExplicitModule) -> Submodule:
        return Submodule(module, {v: np.eye(module.dim(v), dtype=np.int64)
                                  for v in module.algebra.vertices})
