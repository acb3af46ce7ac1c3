"""
Moduli pipeline.

For each irreducible component C of mod(A, d): take its θ-stable
decomposition, replace orbit-closure factors by points and every other factor
C_i of multiplicity m_i by S^{m_i}(M(C_i)), then normalize S^m(P^1) = P^m.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import List, Optional

from config import config
from core.errors import Inconsistent, NotSemistable, NotStable, UnsupportedClass
from core.randomness import derive_seed
from core.stability import StabilityEngine
from models.algebra import BoundQuiverAlgebra
from models.component import Component
from models.dimension_vector import DimensionVector, Weight
from models.generic_decomposition import GenericSummand
from models.moduli_report import ASSUMPTIONS, ComponentModuli, ModuliResult
from models.moduli_shape import ModuliShape, ShapeBase, ShapeFactor
from models.stable_decomposition import StableDecomposition, StableFactor

logger = logging.getLogger(__name__)


class ModuliEngine:
    """Classifies moduli spaces of θ-semistable components."""

    def __init__(self, stability: Optional[StabilityEngine] = None, workers: Optional[int] = None):
        self.stability = stability or StabilityEngine()
        self.components = self.stability.components
        self.homalg = self.stability.homalg
        self.workers = config.WORKERS if workers is None else max(1, workers)

    # ========================================================================
    # SINGLE STABLE COMPONENTS
    # ========================================================================

    def _non_orbit_base(self, algebra: BoundQuiverAlgebra) -> ShapeBase:
        return ShapeBase.PROJ_LINE if algebra.report.is_gentle else ShapeBase.RATIONAL_CURVE

    def family_witness(self, component: Component, seed: int = 0, attempts: int = 3) -> bool:
        """
        Whether some pair of generic samples of a stable component is non-isomorphic.

        Both samples have the same dimension vector and are θ-stable, so they
        are isomorphic exactly when Hom between them is non-zero.
        """
        for attempt in range(attempts):
            first = self.components.generic_module(component, seed=derive_seed(seed, "witness", attempt, 0))
            second = self.components.generic_module(component, seed=derive_seed(seed, "witness", attempt, 1))
            if self.homalg.hom_dimension(first, second) == 0:
                return True
        return False

    def _require_family(self, component: Component, seed: int) -> None:
        if not self.family_witness(component, seed):
            raise Inconsistent(f"{component} is not an orbit closure, but its generic samples "
                               f"are all isomorphic")

    def classify_stable_component(self, component: Component, theta: Weight, seed: int = 0) -> ShapeBase:
        """
        Moduli type of a single component: Point, ProjLine, RationalCurve or Empty.

        Raises:
            NotStable: If the component's generic module is semistable but not stable
            Inconsistent: If a non-orbit component shows no two non-isomorphic samples
        """
        if theta.pair(component.dimension_vector) != 0:
            return ShapeBase.EMPTY
        representative = self.components.generic_module(component, seed=derive_seed(seed, "classify"))
        summand = GenericSummand(1, component, 1, representative)
        special = self.stability.specialization(summand, derive_seed(seed, "specialization"))
        if not self.stability.is_semistable(special, theta):
            return ShapeBase.EMPTY
        if not self.stability.is_stable(special, theta):
            raise NotStable(f"{component} is θ-semistable but not θ-stable for θ = {theta}")
        if self.stability.is_orbit_closure(component, special):
            return ShapeBase.POINT
        self._require_family(component, derive_seed(seed, "witness"))
        return self._non_orbit_base(component.algebra)

    def _factor_shape(self, algebra: BoundQuiverAlgebra, factor: StableFactor) -> ShapeFactor:
        if factor.is_orbit_closure:
            return ShapeFactor(ShapeBase.POINT, factor.multiplicity)
        base = self._non_orbit_base(algebra)
        return ShapeFactor(base, factor.multiplicity,
                           conjectural_projective_line=base == ShapeBase.RATIONAL_CURVE)

    def compose_moduli(self, decomposition: StableDecomposition) -> ModuliShape:
        """
        M(C) = Π S^{m_i}(M(C_i)); orbit closures contribute a point.
        """
        algebra = decomposition.component.algebra
        factors = tuple(self._factor_shape(algebra, f) for f in decomposition.factors)
        return ModuliShape(factors=factors)

    # ========================================================================
    # PIPELINE
    # ========================================================================

    def _checks(self, component: Component, decomposition: StableDecomposition,
                shape: ModuliShape) -> dict:
        gaps = []
        counts_ok = True
        for factor in decomposition.factors:
            gap = factor.dimension_vector.gl_dimension() - self.components.component_dimension(factor.component)
            gaps.append(gap)
            if gap not in (0, 1) or (gap == 0) != (not factor.is_orbit_closure):
                counts_ok = False
        checks = {'dimension_count': {'gaps': gaps, 'passed': counts_ok}}

        non_orbit = decomposition.non_orbit_factors()
        if (len(non_orbit) == 1 and non_orbit[0].multiplicity == 1
                and non_orbit[0].dimension_vector == component.dimension_vector
                and shape.is_normalizable):
            expected = (self.components.component_dimension(component)
                        - component.dimension_vector.gl_dimension() + 1)
            checks['shape_dimension'] = {'expected': expected, 'actual': shape.dimension,
                                         'passed': expected == shape.dimension}
        for name, check in checks.items():
            if not check['passed']:
                logger.warning("Check %s failed for %s: %s", name, component, check)
        return checks

    def component_moduli(self, component: Component, theta: Weight, trials: Optional[int] = None,
                         seed: int = 0) -> ComponentModuli:
        """
        Moduli verdict for one component.

        Raises:
            Inconsistent: If a non-orbit factor has no family witness
        """
        try:
            decomposition = self.stability.stable_decomposition(component, theta, trials, seed)
        except NotSemistable as e:
            logger.debug("%s has no θ-semistable points: %s", component, e)
            return ComponentModuli(component, ModuliShape.empty(),
                                   provenance={'seed': seed, 'reason': str(e)})

        shape = self.compose_moduli(decomposition)
        non_orbit = decomposition.non_orbit_factors()
        for i, factor in enumerate(non_orbit):
            self._require_family(factor.component, derive_seed(seed, "witness", i))
        provenance = dict(decomposition.provenance)
        if non_orbit:
            provenance['family_witness'] = sorted(str(f.component) for f in non_orbit)
        return ComponentModuli(
            component=component,
            shape=shape,
            decomposition=decomposition,
            checks=self._checks(component, decomposition, shape),
            assumptions=list(ASSUMPTIONS),
            provenance=provenance,
        )

    def moduli_shape(self, algebra: BoundQuiverAlgebra, d: DimensionVector, theta: Weight,
                     seed: int = 0, trials: Optional[int] = None) -> ModuliResult:
        """
        Moduli shape of every irreducible component of mod(A, d).

        Component i uses the seed stream (seed, i), so the result does not
        depend on the number of workers.

        Raises:
            UnsupportedClass: Outside the disjoint-chain class
        """
        if not algebra.report.is_disjoint_chain:
            raise UnsupportedClass(f"{algebra.name or 'algebra'} is not in the disjoint-chain class")
        trials = config.TRIALS if trials is None else trials
        components = self.components.enumerate_components(algebra, d)

        if theta.pair(d) != 0:
            entries = [ComponentModuli(c, ModuliShape.empty(),
                                       provenance={'seed': seed, 'reason': f"θ(d) = {theta.pair(d)}"})
                       for c in components]
            return ModuliResult(algebra, d, theta, seed, trials, entries)

        seeds = [derive_seed(seed, "component", i) for i in range(len(components))]
        if self.workers > 1 and len(components) > 1:
            with ThreadPoolExecutor(max_workers=self.workers) as pool:
                entries: List[ComponentModuli] = list(pool.map(
                    lambda item: self.component_moduli(item[0], theta, trials, item[1]),
                    zip(components, seeds)))
        else:
            entries = [self.component_moduli(c, theta, trials, s) for c, s in zip(components, seeds)]

        logger.info("%s d=%s θ=%s: %s", algebra.name, d, theta, [e.shape.text() for e in entries])
        return ModuliResult(algebra, d, theta, seed, trials, entries)
