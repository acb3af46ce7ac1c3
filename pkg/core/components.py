"""
Irreducible components of module varieties of disjoint-chain algebras.

mod(A, d) is a product over relation chains of varieties of complexes times
affine spaces for the free arrows. Its components are the closures of the
rank-exact strata of maximal rank sequences.
"""

import logging
import threading
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from config import config
from core.errors import FieldTooSmall, Inconsistent, InvalidRankSequence, NonSplitSummand, UnsupportedClass
from core.field_linalg import (identity, inv_mod_mat, matmul_mod, random_invertible, random_of_rank,
                               rank_mod, zeros)
from core.homalg import HomologicalAlgebra
from core.randomness import derive_seed, make_rng
from models.algebra import BoundQuiverAlgebra
from models.certificates import RelationChain
from models.component import Component, RankSequence
from models.dimension_vector import DimensionVector
from models.explicit_module import ExplicitModule
from models.generic_decomposition import GenericDecomposition, GenericSummand

logger = logging.getLogger(__name__)


class ComponentEngine:
    """
    Enumerates components, computes their dimensions and samples generic modules.
    """

    def __init__(self, homalg: Optional[HomologicalAlgebra] = None, max_retries: Optional[int] = None,
                 sampling_prime: Optional[int] = None):
        self.homalg = homalg or HomologicalAlgebra(split_attempts=config.SPLIT_ATTEMPTS)
        self.max_retries = config.MAX_RETRIES if max_retries is None else max_retries
        self.sampling_prime = config.SAMPLING_PRIME if sampling_prime is None else sampling_prime
        self._decompositions: Dict[Tuple, GenericDecomposition] = {}
        self._lock = threading.Lock()

    # ========================================================================
    # RANK SEQUENCES
    # ========================================================================

    def _require_disjoint_chain(self, algebra: BoundQuiverAlgebra):
        if not algebra.report.is_disjoint_chain:
            raise UnsupportedClass(
                f"{algebra.name or 'algebra'} is not in the disjoint-chain class"
            )

    def _require_gentle(self, algebra: BoundQuiverAlgebra):
        if not algebra.report.is_gentle:
            raise UnsupportedClass(f"{algebra.name or 'algebra'} is not gentle")

    def rank_bound(self, algebra: BoundQuiverAlgebra, d: DimensionVector, arrow_id: str) -> int:
        arrow = algebra.quiver.arrow(arrow_id)
        return min(d[arrow.tail], d[arrow.head])

    def is_valid_rank_sequence(self, algebra: BoundQuiverAlgebra, d: DimensionVector,
                               r: RankSequence) -> bool:
        if r.arrows != algebra.arrow_ids:
            return False
        if any(value > self.rank_bound(algebra, d, a) for a, value in r.items()):
            return False
        for first, second in algebra.relations:
            middle = algebra.quiver.arrow(first).head
            if r[first] + r[second] > d[middle]:
                return False
        return True

    def validate_rank_sequence(self, algebra: BoundQuiverAlgebra, d: DimensionVector, r: RankSequence):
        if not self.is_valid_rank_sequence(algebra, d, r):
            raise InvalidRankSequence(f"Rank sequence {r} is not valid for d = {d}")

    def is_maximal(self, algebra: BoundQuiverAlgebra, d: DimensionVector, r: RankSequence) -> bool:
        """No single coordinate can be increased."""
        return not any(self.is_valid_rank_sequence(algebra, d, r.increment(a)) for a in r.arrows)

    def _chain_vertices(self, algebra: BoundQuiverAlgebra, chain: RelationChain) -> List[str]:
        arrows = [algebra.quiver.arrow(a) for a in chain.arrows]
        return [arrows[0].tail] + [a.head for a in arrows]

    def maximal_chain_ranks(self, bounds: Sequence[int], caps: Sequence[int]) -> List[Tuple[int, ...]]:
        """
        Maximal sequences with r_i <= bounds[i] and r_i + r_{i+1} <= caps[i].

        Ranks are fixed left to right. Once r_i is chosen the neighbours of
        r_{i-1} are known, so a sequence whose r_{i-1} could still grow is
        pruned immediately.
        """
        k = len(bounds)
        results: List[Tuple[int, ...]] = []

        def can_grow(ranks: List[int], i: int) -> bool:
            if ranks[i] >= bounds[i]:
                return False
            if i > 0 and ranks[i - 1] + ranks[i] + 1 > caps[i - 1]:
                return False
            if i < len(ranks) - 1 and ranks[i] + 1 + ranks[i + 1] > caps[i]:
                return False
            return True

        def extend(ranks: List[int]):
            i = len(ranks)
            if i == k:
                if not can_grow(ranks, k - 1):
                    results.append(tuple(ranks))
                return
            upper = bounds[i] if i == 0 else min(bounds[i], caps[i - 1] - ranks[i - 1])
            for value in range(upper, -1, -1):
                ranks.append(value)
                if i == 0 or not can_grow(ranks, i - 1):
                    extend(ranks)
                ranks.pop()

        extend([])
        return sorted(results)

    def _make_component(self, algebra: BoundQuiverAlgebra, d: DimensionVector, r: RankSequence,
                        is_maximal: bool = True) -> Component:
        defect = self.string_defect_value(d, r) if algebra.report.is_gentle else None
        return Component(
            algebra, d, r,
            is_maximal=is_maximal,
            dimension=self.stratum_dimension(algebra, d, r),
            string_defect=defect,
            is_regular=None if defect is None else defect == 0,
        )

    def enumerate_components(self, algebra: BoundQuiverAlgebra, d: DimensionVector) -> List[Component]:
        """
        Irreducible components of mod(A, d), one per maximal rank sequence.

        Raises:
            UnsupportedClass: Outside the disjoint-chain class
        """
        self._require_disjoint_chain(algebra)
        d = DimensionVector(algebra.vertices, d.values)

        per_chain: List[Tuple[Tuple[str, ...], List[Tuple[int, ...]]]] = []
        for chain in algebra.chains:
            vertices = self._chain_vertices(algebra, chain)
            bounds = [self.rank_bound(algebra, d, a) for a in chain.arrows]
            caps = [d[x] for x in vertices[1:-1]]
            per_chain.append((chain.arrows, self.maximal_chain_ranks(bounds, caps)))

        forced = {a: self.rank_bound(algebra, d, a) for a in algebra.free_arrows()}
        components = []
        for choice in product(*(options for _, options in per_chain)):
            ranks = dict(forced)
            for (arrows, _), values in zip(per_chain, choice):
                ranks.update(zip(arrows, values))
            r = RankSequence.from_mapping(algebra.arrow_ids, ranks)
            components.append(self._make_component(algebra, d, r))
        components.sort()
        logger.debug("%s, d=%s: %d components", algebra.name, d, len(components))
        return components

    def enumerate_components_bruteforce(self, algebra: BoundQuiverAlgebra,
                                        d: DimensionVector) -> List[Component]:
        """Exhaustive oracle: every valid rank sequence, filtered by maximality."""
        d = DimensionVector(algebra.vertices, d.values)
        ranges = [range(self.rank_bound(algebra, d, a) + 1) for a in algebra.arrow_ids]
        found = []
        for values in product(*ranges):
            r = RankSequence(algebra.arrow_ids, values)
            if self.is_valid_rank_sequence(algebra, d, r) and self.is_maximal(algebra, d, r):
                found.append(Component(algebra, d, r))
        return sorted(found)

    def component_for(self, algebra: BoundQuiverAlgebra, d: DimensionVector,
                      r: RankSequence) -> Component:
        """Component record of an arbitrary valid rank sequence (a stratum closure)."""
        self.validate_rank_sequence(algebra, d, r)
        return self._make_component(algebra, d, r, is_maximal=self.is_maximal(algebra, d, r))

    # ========================================================================
    # DIMENSIONS
    # ========================================================================

    def gl_dimension(self, d: DimensionVector) -> int:
        return d.gl_dimension()

    def stratum_dimension(self, algebra: BoundQuiverAlgebra, d: DimensionVector, r: RankSequence) -> int:
        """
        Dimension of the rank-exact stratum {M : rank M(a) = r(a)}.

        A free arrow of rank r between spaces of dimensions m, n contributes
        r(m + n - r). A chain with vertices x_0, ..., x_k contributes
        Σ r_i(d(x_{i-1}) + d(x_i) - r_i) - Σ r_i r_{i-1}.
        """
        self._require_disjoint_chain(algebra)
        self.validate_rank_sequence(algebra, d, r)
        total = 0
        for a in algebra.free_arrows():
            arrow = algebra.quiver.arrow(a)
            total += r[a] * (d[arrow.tail] + d[arrow.head] - r[a])
        for chain in algebra.chains:
            vertices = self._chain_vertices(algebra, chain)
            previous = 0
            for i, a in enumerate(chain.arrows):
                rank = r[a]
                total += rank * (d[vertices[i]] + d[vertices[i + 1]] - rank) - rank * previous
                previous = rank
        return total

    def component_dimension(self, component: Component) -> int:
        return self.stratum_dimension(component.algebra, component.dimension_vector,
                                      component.rank_sequence)

    def tangent_space_dimension(self, module: ExplicitModule) -> int:
        """
        Dimension of the Zariski tangent space of mod(A, d) at M.

        Tangent vectors (X_a) satisfy M(b)X_a + X_b M(a) = 0 for every
        generator (a, b).
        """
        algebra = module.algebra
        p = module.prime
        offsets: Dict[str, int] = {}
        unknowns = 0
        for arrow in algebra.arrows:
            offsets[arrow.id] = unknowns
            unknowns += module.dim(arrow.head) * module.dim(arrow.tail)

        blocks = []
        for first, second in algebra.relations:
            a = algebra.quiver.arrow(first)
            b = algebra.quiver.arrow(second)
            rows = module.dim(b.head) * module.dim(a.tail)
            if rows == 0:
                continue
            block = zeros(rows, unknowns)
            size_a = module.dim(a.head) * module.dim(a.tail)
            size_b = module.dim(b.head) * module.dim(b.tail)
            block[:, offsets[first]:offsets[first] + size_a] = np.kron(
                module.matrix(second), identity(module.dim(a.tail)))
            block[:, offsets[second]:offsets[second] + size_b] += np.kron(
                identity(module.dim(b.head)), module.matrix(first).T)
            blocks.append(block % p)
        if not blocks:
            return unknowns
        return unknowns - rank_mod(np.concatenate(blocks, axis=0), p)

    def string_defect_value(self, d: DimensionVector, r: RankSequence) -> int:
        return d.total - r.total

    def string_defect(self, component: Component) -> int:
        """
        total(d) - Σ r(a): the number of string summands of a generic module.

        Raises:
            UnsupportedClass: Outside the gentle class
        """
        self._require_gentle(component.algebra)
        return self.string_defect_value(component.dimension_vector, component.rank_sequence)

    def is_regular(self, component: Component) -> bool:
        return self.string_defect(component) == 0

    # ========================================================================
    # GENERIC MODULES
    # ========================================================================

    def _sample(self, component: Component, prime: int, rng: np.random.Generator) -> ExplicitModule:
        algebra = component.algebra
        d = component.dimension_vector
        r = component.rank_sequence
        matrices: Dict[str, np.ndarray] = {}

        for a in algebra.free_arrows():
            arrow = algebra.quiver.arrow(a)
            matrices[a] = random_of_rank(rng, d[arrow.head], d[arrow.tail], r[a], prime, self.max_retries)

        for chain in algebra.chains:
            vertices = self._chain_vertices(algebra, chain)
            frames = [random_invertible(rng, d[x], prime, self.max_retries) if d[x] else zeros(0, 0)
                      for x in vertices]
            previous = 0
            for i, a in enumerate(chain.arrows):
                rank = r[a]
                source, target = d[vertices[i]], d[vertices[i + 1]]
                shape = zeros(rank, source)
                if rank:
                    shape[:, previous:] = random_of_rank(rng, rank, source - previous, rank, prime,
                                                         self.max_retries)
                matrix = zeros(target, source)
                if rank and source:
                    inverse = inv_mod_mat(frames[i], prime)
                    matrix = matmul_mod(matmul_mod(frames[i + 1][:, :rank], shape, prime), inverse, prime)
                matrices[a] = matrix
                previous = rank

        return ExplicitModule(algebra, d.as_dict(), matrices, prime)

    def generic_module(self, component: Component, prime: Optional[int] = None,
                       seed: int = 0) -> ExplicitModule:
        """
        A module of C(A, d, r) with rank M(a) = r(a) on every arrow.

        Along a chain the image of each map is a random r_i-dimensional
        subspace and the next map is a random rank-r_{i+1} map killing it.

        Raises:
            FieldTooSmall: If rank sampling keeps failing
        """
        algebra = component.algebra
        self._require_disjoint_chain(algebra)
        self.validate_rank_sequence(algebra, component.dimension_vector, component.rank_sequence)
        prime = self.sampling_prime if prime is None else prime
        rng = make_rng(seed, "generic-module")
        for attempt in range(self.max_retries):
            try:
                module = self._sample(component, prime, rng)
            except FieldTooSmall:
                continue
            if module.rank_profile() == component.rank_sequence:
                if attempt:
                    logger.debug("generic_module needed %d retries over F_%d", attempt, prime)
                return module
        raise FieldTooSmall(
            f"No module of {component} with exact ranks over F_{prime} in {self.max_retries} tries"
        )

    def ext1_generic(self, first: Component, second: Component, trials: Optional[int] = None,
                     seed: int = 0, prime: Optional[int] = None) -> int:
        """min over sampled pairs (X, Y) in C x D of dim Ext^1(X, Y)."""
        trials = config.TRIALS if trials is None else trials
        best = None
        for t in range(trials):
            x = self.generic_module(first, prime, derive_seed(seed, "ext-source", t))
            y = self.generic_module(second, prime, derive_seed(seed, "ext-target", t))
            value = self.homalg.ext1_dim(x, y)
            best = value if best is None else min(best, value)
            if best == 0:
                break
        return best

    # ========================================================================
    # GENERIC DECOMPOSITION
    # ========================================================================

    def _decompose_sample(self, component: Component, prime: int, seed: int
                          ) -> List[Tuple[ExplicitModule, int]]:
        for attempt in range(self.max_retries):
            module = self.generic_module(component, prime, derive_seed(seed, "sample", attempt))
            try:
                return self.homalg.decompose(module, seed=derive_seed(seed, "split", attempt))
            except NonSplitSummand:
                logger.debug("Reseeding: summand of %s does not split over F_%d", component, prime)
        raise FieldTooSmall(f"Every sample of {component} had a summand not split over F_{prime}")

    def summand_component(self, algebra: BoundQuiverAlgebra, module: ExplicitModule) -> Component:
        return self.component_for(algebra, module.dimension_vector, module.rank_profile())

    def generic_decomposition(self, component: Component, trials: Optional[int] = None,
                              seed: int = 0, prime: Optional[int] = None) -> GenericDecomposition:
        """
        Krull-Schmidt decomposition of generic modules of a component.

        Summands are grouped by their component (dimension vector and rank
        profile). Every trial must give the same grouping and multiplicities;
        the count of isomorphism classes may drop on a trial where two band
        parameters collide, so the largest count is kept.

        Raises:
            Inconsistent: If trials disagree, the summands do not add up to d,
                or two distinct summand components have extensions
        """
        algebra = component.algebra
        self._require_disjoint_chain(algebra)
        trials = config.TRIALS if trials is None else trials
        prime = self.sampling_prime if prime is None else prime
        cache_key = (algebra, component.key, trials, seed, prime)
        with self._lock:
            if cache_key in self._decompositions:
                return self._decompositions[cache_key]

        reference = None
        groups: Dict[Tuple, GenericSummand] = {}
        for t in range(trials):
            pieces = self._decompose_sample(component, prime, derive_seed(seed, "trial", t))
            observed: Dict[Tuple, List] = {}
            for module, multiplicity in pieces:
                key = (module.dimension_vector.values, module.rank_profile().ranks)
                entry = observed.setdefault(key, [0, 0, module])
                entry[0] += multiplicity
                entry[1] += 1
            signature = sorted((key, m) for key, (m, _, _) in observed.items())
            if reference is None:
                reference = signature
                for key, (m, c, module) in observed.items():
                    groups[key] = GenericSummand(m, self.summand_component(algebra, module), c, module)
            elif signature != reference:
                raise Inconsistent(
                    f"Generic decomposition of {component} differs between trials: "
                    f"{reference} vs {signature}"
                )
            for key, (_, c, module) in observed.items():
                groups[key].classes = max(groups[key].classes, c)
                groups[key].samples.append(module)

        summands = [groups[key] for key in sorted(groups)]
        decomposition = GenericDecomposition(component, summands, trials, prime, seed)

        if decomposition.total() != component.dimension_vector:
            raise Inconsistent(f"Summands of {component} add up to {decomposition.total()}")

        for i, first in enumerate(summands):
            for second in summands[i + 1:]:
                for source, target in ((first, second), (second, first)):
                    value = min(self.homalg.ext1_dim(x, y) for x, y in zip(source.samples, target.samples))
                    decomposition.ext_certificates[f"{source.component}->{target.component}"] = value
                    if value != 0:
                        raise Inconsistent(
                            f"ext^1({source.component}, {target.component}) = {value} on every trial"
                        )
        with self._lock:
            self._decompositions.setdefault(cache_key, decomposition)
            return self._decompositions[cache_key]
