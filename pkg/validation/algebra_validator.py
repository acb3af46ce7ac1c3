"""
Algebra class validation.
Checks the gentle axioms on a quiver with a quadratic monomial ideal and
builds the coloring certificates.

(1) at most two arrows start and at most two arrows end at each vertex
(2) for each arrow b, at most one a with (b, a) not a relation and at most
    one c with (c, b) not a relation
(3) for each arrow b, at most one a with (b, a) a relation and at most one c
    with (c, b) a relation
(4) the ideal is generated by paths of length two (holds by representation)
"""

import logging
from typing import Callable, Dict, List, Optional, Sequence, Set, Tuple

from core.errors import NoExactColoring, NotGentle, NotString, SearchExhausted
from models.certificates import AlgebraCertificates, ClassReport, Coloring, RelationChain
from models.ideal import MonomialIdeal
from models.quiver import Quiver

logger = logging.getLogger(__name__)

Generator = Tuple[str, str]
IsRelation = Callable[[str, str], bool]


class AlgebraValidator:
    """Classifies bound quiver algebras and finds colorings."""

    def classify(self, quiver: Quiver, ideal: MonomialIdeal) -> ClassReport:
        """
        Classify an algebra.

        Each flag is decided independently of the others, then combined so
        that gentle implies string implies quadratic monomial, and gentle
        implies disjoint-chain.

        Args:
            quiver: The quiver
            ideal: Its quadratic monomial ideal

        Returns:
            ClassReport with flags and violation messages
        """
        violations: List[str] = []

        acyclic = quiver.is_acyclic
        if not acyclic:
            violations.append("Acyclicity violation: quiver has an oriented cycle")

        axiom_1 = self._check_axiom_1(quiver)
        axiom_2 = self._check_axiom_2(quiver, ideal.contains)
        axiom_3 = self._check_axiom_3(quiver, ideal.contains)
        violations.extend(axiom_1 + axiom_2 + axiom_3)

        quadratic_monomial = acyclic
        disjoint_chain = quadratic_monomial and not axiom_3
        string = quadratic_monomial and not axiom_1 and not axiom_2
        gentle = string and not axiom_3

        return ClassReport(
            is_acyclic=acyclic,
            is_quadratic_monomial=quadratic_monomial,
            is_disjoint_chain=disjoint_chain,
            is_string=string,
            is_gentle=gentle,
            violations=tuple(violations),
        )

    def _check_axiom_1(self, quiver: Quiver) -> List[str]:
        """Check axiom (1): at most two arrows in and out of every vertex."""
        errors = []
        for v in sorted(quiver.vertices):
            if len(quiver.arrows_from(v)) > 2:
                errors.append(f"Axiom (1) violation: more than two arrows start at vertex {v}")
            if len(quiver.arrows_into(v)) > 2:
                errors.append(f"Axiom (1) violation: more than two arrows end at vertex {v}")
        return errors

    def _check_axiom_2(self, quiver: Quiver, is_relation: IsRelation) -> List[str]:
        """Check axiom (2): at most one non-relation continuation on each side."""
        errors = []
        for arrow in sorted(quiver.arrows, key=lambda x: x.id):
            after = sorted(c.id for c in quiver.arrows_from(arrow.head) if not is_relation(arrow.id, c.id))
            before = sorted(c.id for c in quiver.arrows_into(arrow.tail) if not is_relation(c.id, arrow.id))
            if len(after) > 1:
                errors.append(
                    f"Axiom (2) violation: arrow {arrow.id} composes nontrivially with {', '.join(after)}"
                )
            if len(before) > 1:
                errors.append(
                    f"Axiom (2) violation: {', '.join(before)} compose nontrivially with arrow {arrow.id}"
                )
        return errors

    def _check_axiom_3(self, quiver: Quiver, is_relation: IsRelation) -> List[str]:
        """Check axiom (3): at most one relation continuation on each side."""
        errors = []
        for arrow in sorted(quiver.arrows, key=lambda x: x.id):
            after = sorted(c.id for c in quiver.arrows_from(arrow.head) if is_relation(arrow.id, c.id))
            before = sorted(c.id for c in quiver.arrows_into(arrow.tail) if is_relation(c.id, arrow.id))
            if len(after) > 1:
                errors.append(
                    f"Axiom (3) violation: arrow {arrow.id} starts relations with {', '.join(after)}"
                )
            if len(before) > 1:
                errors.append(
                    f"Axiom (3) violation: {', '.join(before)} start relations with arrow {arrow.id}"
                )
        return errors

    def relation_chains(self, quiver: Quiver, generators: Sequence[Generator]) -> List[RelationChain]:
        """
        Maximal paths of the generator overlap graph.

        The overlap graph has an edge a -> b for every generator (a, b). In the
        disjoint-chain class it is a disjoint union of simple paths and the
        chains partition the related arrows; otherwise chains may share arrows.
        """
        if not quiver.is_acyclic:
            return []
        successors: Dict[str, List[str]] = {}
        has_predecessor: Set[str] = set()
        for first, second in generators:
            successors.setdefault(first, []).append(second)
            has_predecessor.add(second)

        chains = []
        starts = sorted(a for a in successors if a not in has_predecessor)
        for start in starts:
            stack = [(start,)]
            while stack:
                path = stack.pop()
                nexts = successors.get(path[-1], [])
                if not nexts:
                    chains.append(RelationChain(path))
                for b in sorted(nexts, reverse=True):
                    stack.append(path + (b,))
        chains.sort(key=lambda c: c.arrows)
        return chains

    def _coloring_from_chains(self, quiver: Quiver, chains: List[RelationChain]) -> Coloring:
        # An arrow lying in no generator cannot join a color path without
        # creating a composable pair outside the ideal, so it forms its own color.
        # Colors are numbered by the least arrow id they contain.
        classes = [list(c.arrows) for c in chains]
        covered = {a for c in chains for a in c.arrows}
        classes.extend([a] for a in sorted(quiver.arrow_ids) if a not in covered)
        classes.sort(key=min)
        color_map = {}
        for i, members in enumerate(classes, start=1):
            for arrow_id in members:
                color_map[arrow_id] = f"c{i}"
        return Coloring(quiver, color_map)

    def find_coloring(self, quiver: Quiver, ideal: MonomialIdeal) -> Coloring:
        """
        Find a coloring whose induced ideal equals the given one.

        Raises:
            NotGentle: If the algebra is not gentle
            NoExactColoring: If a same-color pair is not a generator
        """
        report = self.classify(quiver, ideal)
        if not report.is_gentle:
            raise NotGentle("; ".join(report.violations) or "algebra is not gentle")
        coloring = self._coloring_from_chains(quiver, self.relation_chains(quiver, ideal.generators))
        induced = coloring.induced_ideal()
        for pair in sorted(induced):
            if not ideal.contains(*pair):
                raise NoExactColoring(pair)
        missing = set(ideal.generators) - induced
        if missing:
            raise NoExactColoring(sorted(missing)[0])
        return coloring

    def find_gentle_cover(self, quiver: Quiver, ideal: MonomialIdeal) -> Coloring:
        """
        Find a coloring c with I_c contained in I and KQ/I_c gentle.

        Backtracks over subsets J of the generators, preferring to keep each
        generator, until (Q, J) satisfies the gentle axioms.

        Raises:
            NotString: If the algebra is not a string algebra
            SearchExhausted: If no subset works
        """
        report = self.classify(quiver, ideal)
        if not report.is_string:
            raise NotString("; ".join(report.violations) or "algebra is not a string algebra")

        generators = list(ideal.generators)
        chosen: List[Generator] = []

        def consistent(selection: List[Generator]) -> bool:
            members = set(selection)
            return not self._check_axiom_3(quiver, lambda a, b: (a, b) in members)

        def search(index: int) -> Optional[List[Generator]]:
            if index == len(generators):
                members = set(chosen)
                if self._check_axiom_2(quiver, lambda a, b: (a, b) in members):
                    return None
                return list(chosen)
            chosen.append(generators[index])
            if consistent(chosen):
                found = search(index + 1)
                if found is not None:
                    return found
            chosen.pop()
            return search(index + 1)

        selection = search(0)
        if selection is None:
            raise SearchExhausted("No gentle cover found; the string algebra axioms should guarantee one")
        logger.debug("gentle cover keeps %d of %d relations", len(selection), len(generators))
        return self._coloring_from_chains(quiver, self.relation_chains(quiver, selection))

    def certify(self, quiver: Quiver, ideal: MonomialIdeal) -> AlgebraCertificates:
        """Compute every certificate the algebra admits."""
        report = self.classify(quiver, ideal)
        chains = tuple(self.relation_chains(quiver, ideal.generators))
        coloring = self.find_coloring(quiver, ideal) if report.is_gentle else None
        cover = self.find_gentle_cover(quiver, ideal) if report.is_string else None
        return AlgebraCertificates(report=report, chains=chains, coloring=coloring, gentle_cover=cover)
