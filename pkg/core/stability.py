"""
King stability of explicit modules and θ-stable decompositions of components.

Exact verdicts use the submodule oracle over a small prime. A generic summand
sampled over the large sampling prime is judged through a specialization: a
module of the same summand component sampled over the oracle prime.
"""

import logging
import threading
from typing import Dict, List, Optional, Set, Tuple

from config import config
from core.components import ComponentEngine
from core.errors import FieldTooSmall, NotCanonicalForm, NotSemistable, OracleScaleExceeded
from core.homalg import HomologicalAlgebra
from core.module_builder import ModuleBuilder
from core.randomness import derive_seed, make_rng
from core.submodules import SubmoduleOracle
from models.algebra import BoundQuiverAlgebra
from models.component import Component
from models.dimension_vector import DimensionVector, Weight
from models.explicit_module import ExplicitModule, Submodule
from models.generic_decomposition import GenericSummand
from models.stable_decomposition import PolystableDatum, StableDecomposition, StableFactor

logger = logging.getLogger(__name__)


class StabilityEngine:
    """
    θ-(semi)stability, Jordan-Hölder factors and θ-stable decompositions.

    Specializations are cached per summand component, so one engine reused
    across weights does the oracle work once.
    """

    def __init__(self, components: Optional[ComponentEngine] = None,
                 oracle: Optional[SubmoduleOracle] = None, oracle_prime: Optional[int] = None,
                 specialization_samples: Optional[int] = None):
        self.components = components or ComponentEngine()
        self.homalg: HomologicalAlgebra = self.components.homalg
        self.oracle = oracle or SubmoduleOracle()
        self.builder = ModuleBuilder()
        self.oracle_prime = config.ORACLE_PRIME if oracle_prime is None else oracle_prime
        self.specialization_samples = (config.SPECIALIZATION_SAMPLES
                                       if specialization_samples is None else specialization_samples)
        self._specializations: Dict[Tuple, ExplicitModule] = {}
        self._lock = threading.Lock()

    # ========================================================================
    # PAIRING AND MODULE STABILITY
    # ========================================================================

    def weight_pairing(self, theta: Weight, d: DimensionVector) -> int:
        """θ(d) = Σ θ(x)d(x)."""
        return theta.pair(d)

    def _screen(self, module: ExplicitModule, theta: Weight) -> bool:
        """False when a coordinate submodule already has θ > 0."""
        if not module.canonical:
            return True
        try:
            vectors = self.oracle.coordinate_dimension_vectors(module)
        except NotCanonicalForm:
            return True
        return all(theta.pair(v) <= 0 for v in vectors)

    def is_semistable(self, module: ExplicitModule, theta: Weight) -> bool:
        """
        θ(dim M) = 0 and θ(dim U) <= 0 for every submodule U.

        Raises:
            OracleScaleExceeded: Outside the oracle guard
        """
        if theta.pair(module.dimension_vector) != 0:
            return False
        if not self._screen(module, theta):
            return False
        return all(theta.pair(v) <= 0 for v in self.oracle.dimension_vectors(module))

    def is_stable(self, module: ExplicitModule, theta: Weight) -> bool:
        """
        M ≠ 0, θ(dim M) = 0 and θ(dim U) < 0 for every proper nonzero submodule U.

        Raises:
            OracleScaleExceeded: Outside the oracle guard
        """
        if module.is_zero() or theta.pair(module.dimension_vector) != 0:
            return False
        if not self._screen(module, theta):
            return False
        for v in self.oracle.dimension_vectors(module):
            if v.is_zero() or v == module.dimension_vector:
                continue
            if theta.pair(v) >= 0:
                return False
        return True

    # ========================================================================
    # JORDAN-HÖLDER FACTORS
    # ========================================================================

    def _minimal_balanced_submodule(self, module: ExplicitModule, theta: Weight,
                                    seed: Optional[int]) -> Submodule:
        """Nonzero U with θ(dim U) = 0 of least total dimension, then least dimension vector."""
        best_key = None
        ties: List[Submodule] = []
        for sub in self.oracle.iter_submodules(module):
            d = sub.dimension_vector
            if d.is_zero() or theta.pair(d) != 0:
                continue
            key = (d.total, d.values)
            if best_key is None or key < best_key:
                best_key, ties = key, [sub]
            elif key == best_key and seed is not None:
                ties.append(sub)
        if seed is None or len(ties) == 1:
            return ties[0]
        return ties[int(make_rng(seed, "gr-tie", module.total_dimension).integers(0, len(ties)))]

    def gr_theta(self, module: ExplicitModule, theta: Weight, seed: Optional[int] = None) -> PolystableDatum:
        """
        gr_θ(M): the factors of a Jordan-Hölder filtration in the θ-semistable category.

        Each step takes a minimal nonzero submodule with θ = 0, which is
        θ-stable, and continues with the quotient. A seed randomizes the choice
        among equally small candidates.

        Raises:
            NotSemistable: If M is not θ-semistable
            OracleScaleExceeded: Outside the oracle guard
        """
        if not self.is_semistable(module, theta):
            raise NotSemistable(f"{module} is not semistable for θ = {theta}")
        factors: List[ExplicitModule] = []
        current = module
        step = 0
        while not current.is_zero():
            sub = self._minimal_balanced_submodule(
                current, theta, None if seed is None else derive_seed(seed, step))
            factors.append(self.builder.restrict(current, sub.bases))
            current = self.builder.quotient(current, sub)
            step += 1
        return PolystableDatum(self.group_stable(factors))

    def group_stable(self, modules: List[ExplicitModule]) -> List[Tuple[ExplicitModule, int]]:
        """Isomorphism classes of θ-stable modules: same dimension vector and Hom ≠ 0."""
        classes: List[List] = []
        for module in modules:
            for entry in classes:
                if (entry[0].dimension_vector == module.dimension_vector
                        and self.homalg.hom_dimension(entry[0], module) > 0):
                    entry[1] += 1
                    break
            else:
                classes.append([module, 1])
        return sorted(((m, k) for m, k in classes),
                      key=lambda item: (item[0].dimension_vector.values, item[0].rank_profile().ranks))

    def polystable_sum(self, datum: PolystableDatum) -> ExplicitModule:
        modules = [m for m, k in datum.summands for _ in range(k)]
        return self.builder.direct_sum(modules)

    # ========================================================================
    # SPECIALIZATION
    # ========================================================================

    def specialization(self, summand: GenericSummand, seed: int = 0) -> ExplicitModule:
        """
        A module over the oracle prime standing in for a generic summand.

        Samples share the summand's rank profile; those whose endomorphism
        dimension matches the generic one are kept, and the sample with the
        fewest submodule dimension vectors wins (ties: smallest sorted list).
        """
        key = (summand.key, self.oracle_prime, seed)
        with self._lock:
            if key in self._specializations:
                logger.debug("Specialization cache hit for %s", summand.component)
                return self._specializations[key]

        component = summand.component
        target_end = self.homalg.end_dimension(summand.representative)
        candidates: List[Tuple[int, ExplicitModule]] = []
        for i in range(self.specialization_samples):
            try:
                module = self.components.generic_module(component, self.oracle_prime,
                                                        derive_seed(seed, "specialize", i))
            except FieldTooSmall:
                continue
            candidates.append((self.homalg.end_dimension(module), module))
        if not candidates:
            raise FieldTooSmall(f"No module of {component} over F_{self.oracle_prime}")

        matching = [m for e, m in candidates if e == target_end]
        if not matching:
            lowest = min(e for e, _ in candidates)
            logger.warning("No specialization of %s over F_%d has dim End = %d; using dim End = %d",
                           component, self.oracle_prime, target_end, lowest)
            matching = [m for e, m in candidates if e == lowest]

        best = None
        best_key = None
        for module in matching:
            vectors = sorted(v.values for v in self.oracle.dimension_vectors(module))
            rank = (len(vectors), vectors)
            if best_key is None or rank < best_key:
                best, best_key = module, rank

        with self._lock:
            self._specializations.setdefault(key, best)
            return self._specializations[key]

    # ========================================================================
    # θ-STABLE DECOMPOSITIONS
    # ========================================================================

    def is_orbit_closure(self, component: Component, module: ExplicitModule) -> bool:
        """dim C = dim GL(d) - dim End(M) for a generic M: one orbit is dense."""
        orbit = component.dimension_vector.gl_dimension() - self.homalg.end_dimension(module)
        return self.components.component_dimension(component) == orbit

    def _search_stable(self, summand: GenericSummand, theta: Weight, seed: int):
        """
        Sampled destabilizer search on a summand too large for the oracle.

        Raises:
            NotSemistable: If a sampled submodule has θ > 0
            OracleScaleExceeded: If a proper sampled submodule has θ = 0, so gr_θ is needed
        """
        module = summand.representative
        d = module.dimension_vector
        rng = make_rng(seed, "search", *d.values)
        for v in sorted(self.oracle.sampled_dimension_vectors(module, rng), key=lambda v: v.values):
            pairing = theta.pair(v)
            if pairing > 0:
                raise NotSemistable(f"Generic summand {summand.component} has a submodule {v} with θ = {pairing}")
            if pairing == 0 and 0 < v.total < d.total:
                raise OracleScaleExceeded(
                    f"Generic summand {summand.component} has a balanced submodule {v} outside the oracle guard"
                )

    def stable_decomposition(self, component: Component, theta: Weight, trials: Optional[int] = None,
                             seed: int = 0) -> StableDecomposition:
        """
        C = m_1·C_1 ∔ ... ∔ m_l·C_l: the θ-stable components of gr_θ of a generic module.

        Summands outside the oracle guard are checked by a sampled destabilizer
        search and taken as stable when nothing balanced turns up.

        Raises:
            OracleScaleExceeded: If such a summand has a balanced proper submodule
            NotSemistable: If the generic module of C is not θ-semistable
            Inconsistent: If generic trials disagree
        """
        algebra = component.algebra
        d = component.dimension_vector
        if theta.pair(d) != 0:
            raise NotSemistable(f"θ(d) = {theta.pair(d)} for {component}")
        generic = self.components.generic_decomposition(component, trials, seed)

        collected: Dict[Tuple, List] = {}

        def add(factor_component: Component, multiplicity: int, module: ExplicitModule):
            entry = collected.setdefault(factor_component.key, [0, factor_component, module])
            entry[0] += multiplicity

        regimes: List[str] = []
        for summand in generic.summands:
            if theta.pair(summand.dimension_vector) != 0:
                raise NotSemistable(f"Generic summand {summand.component} has θ = "
                                    f"{theta.pair(summand.dimension_vector)}")
            try:
                special = self.specialization(summand, derive_seed(seed, "specialization"))
                semistable = self.is_semistable(special, theta)
                stable = semistable and self.is_stable(special, theta)
                datum = None if stable or not semistable else self.gr_theta(special, theta)
            except OracleScaleExceeded as exc:
                logger.info("Falling back to destabilizer search for %s: %s", summand.component, exc)
                self._search_stable(summand, theta, derive_seed(seed, "search"))
                add(summand.component, summand.multiplicity, summand.representative)
                regimes.append("search")
                continue
            if not semistable:
                raise NotSemistable(f"Generic summand {summand.component} is not θ-semistable")
            if stable:
                add(summand.component, summand.multiplicity, special)
                regimes.append("stable")
                continue
            regimes.append("gr")
            for factor, k in datum.summands:
                factor_component = self.components.summand_component(algebra, factor)
                add(factor_component, k * summand.multiplicity, factor)

        factors = []
        for key in sorted(collected):
            multiplicity, factor_component, module = collected[key]
            factors.append(StableFactor(
                multiplicity=multiplicity,
                component=factor_component,
                is_orbit_closure=self.is_orbit_closure(factor_component, module),
                module=module,
            ))

        decomposition = StableDecomposition(component, factors, provenance={
            'trials': generic.trials,
            'seed': seed,
            'sampling_prime': generic.prime,
            'oracle_prime': self.oracle_prime,
            'regime': '+'.join(['A'] + [r for r in ("gr", "search") if r in regimes]),
            'generic_summands': [
                {'dimension_vector': list(s.dimension_vector.values),
                 'ranks': list(s.component.rank_sequence.ranks),
                 'multiplicity': s.multiplicity, 'classes': s.classes}
                for s in generic.summands
            ],
        })
        if decomposition.total() != d:
            raise NotSemistable(f"θ-stable factors of {component} add up to {decomposition.total()}")
        return decomposition

    def is_theta_semistable_dimvec(self, algebra: BoundQuiverAlgebra, d: DimensionVector,
                                   theta: Weight, seed: int = 0) -> bool:
        """Some component of mod(A, d) has θ-semistable generic modules."""
        if theta.pair(d) != 0:
            return False
        for component in self.components.enumerate_components(algebra, d):
            try:
                self.stable_decomposition(component, theta, seed=seed)
            except NotSemistable:
                continue
            return True
        return False

    def separation_sides(self, algebra: BoundQuiverAlgebra, d: DimensionVector, theta: Weight,
                         seed: int = 0) -> Dict[Tuple[str, str], Set[str]]:
        """
        For each generator (a, b) through a vertex x, the arrows that vanish on
        non-orbit θ-stable factors with positive dimension at x.
        """
        sides: Dict[Tuple[str, str], Set[str]] = {g: set() for g in algebra.relations}
        if theta.pair(d) != 0:
            return sides
        for component in self.components.enumerate_components(algebra, d):
            try:
                decomposition = self.stable_decomposition(component, theta, seed=seed)
            except NotSemistable:
                continue
            for factor in decomposition.non_orbit_factors():
                ranks = factor.component.rank_sequence
                for first, second in algebra.relations:
                    middle = algebra.quiver.arrow(first).head
                    if factor.dimension_vector[middle] == 0:
                        continue
                    for arrow_id in (first, second):
                        if ranks[arrow_id] == 0:
                            sides[(first, second)].add(arrow_id)
        return sides

    def separation_check(self, algebra: BoundQuiverAlgebra, d: DimensionVector, theta: Weight,
                         seed: int = 0) -> bool:
        """No generator has non-orbit stable factors vanishing on both of its arrows."""
        sides = self.separation_sides(algebra, d, theta, seed)
        for generator, vanishing in sides.items():
            if len(vanishing) > 1:
                logger.warning("Non-orbit factors on both sides of %s for θ = %s", generator, theta)
                return False
        return True
