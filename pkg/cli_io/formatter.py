"""
Output formatter for the quiver moduli toolkit.
Renders class reports, component listings and moduli verdicts as text tables.
"""

from typing import Any, Dict, Iterable, List, Sequence

from models.algebra import BoundQuiverAlgebra
from models.component import Component, RankSequence
from models.dimension_vector import DimensionVector
from models.moduli_report import ModuliResult
from models.stable_decomposition import PolystableDatum


class OutputFormatter:
    """Formats toolkit output for display."""

    def yes_no(self, flag: bool) -> str:
        return "yes" if flag else "no"

    def format_vector(self, vector: Iterable[int]) -> str:
        """(1,1,2,1,1)"""
        return "(" + ",".join(str(v) for v in vector) + ")"

    def format_ranks(self, ranks: RankSequence) -> str:
        return " ".join(f"{a}={r}" for a, r in ranks.items())

    # ========================================================================
    # VALIDATE
    # ========================================================================

    def format_class_summary(self, algebra: BoundQuiverAlgebra) -> str:
        """
        One-line verdict, e.g. 'gentle: yes (2 colors)' or
        'gentle: no; disjoint-chain: yes'.
        """
        report = algebra.report
        if report.is_gentle:
            return f"gentle: yes ({algebra.coloring.num_colors} colors)"
        return f"gentle: no; disjoint-chain: {self.yes_no(report.is_disjoint_chain)}"

    def format_class_report(self, algebra: BoundQuiverAlgebra) -> str:
        report = algebra.report
        certificates = algebra.certificates
        lines = [
            self.format_class_summary(algebra),
            f"  acyclic:            {self.yes_no(report.is_acyclic)}",
            f"  quadratic monomial: {self.yes_no(report.is_quadratic_monomial)}",
            f"  disjoint-chain:     {self.yes_no(report.is_disjoint_chain)}",
            f"  string:             {self.yes_no(report.is_string)}",
            f"  gentle:             {self.yes_no(report.is_gentle)}",
        ]
        if certificates.chains:
            lines.append("relation chains: " + " ".join(str(c) for c in certificates.chains))
        if certificates.coloring is not None:
            lines.append("coloring: " + self._format_coloring(certificates.coloring.to_dict()))
        elif certificates.gentle_cover is not None:
            lines.append("gentle cover: " + self._format_coloring(certificates.gentle_cover.to_dict()))
        for violation in report.violations:
            lines.append(f"  - {violation}")
        return "\n".join(lines)

    def _format_coloring(self, classes: Dict[str, List[str]]) -> str:
        return " ".join(f"{label}=[{','.join(arrows)}]" for label, arrows in classes.items())

    # ========================================================================
    # COMPONENTS AND MODULI
    # ========================================================================

    def format_components(self, d: DimensionVector, components: Sequence[Component]) -> str:
        lines = [f"d = {self.format_vector(d.values)}: {len(components)} component(s)"]
        for i, c in enumerate(components, start=1):
            flags = [f"dim={c.dimension}"]
            if c.string_defect is not None:
                flags.append(f"defect={c.string_defect}")
                flags.append("regular" if c.is_regular else "non-regular")
            lines.append(f"  [{i}] {self.format_ranks(c.rank_sequence)}  " + " ".join(flags))
        return "\n".join(lines)

    def format_moduli(self, result: ModuliResult) -> str:
        lines = [
            f"{result.algebra.name or 'algebra'}  d = {self.format_vector(result.dimension_vector.values)}"
            f"  θ = {self.format_vector(result.theta.values)}  seed = {result.seed}  trials = {result.trials}"
        ]
        for i, entry in enumerate(result.components, start=1):
            component = entry.component
            lines.append(f"  [{i}] {self.format_ranks(component.rank_sequence)}  dim={component.dimension}"
                         f"  ->  {entry.shape.text()}")
            if entry.decomposition is not None:
                for f in entry.decomposition.factors:
                    kind = "orbit" if f.is_orbit_closure else "family"
                    lines.append(f"      {f.multiplicity} x {self.format_vector(f.dimension_vector.values)}"
                                 f"  {self.format_ranks(f.component.rank_sequence)}  ({kind})")
            for name, check in entry.checks.items():
                if not check.get('passed', True):
                    lines.append(f"      check {name} FAILED: {check}")
        return "\n".join(lines)

    # ========================================================================
    # ORACLE
    # ========================================================================

    def format_dimension_vectors(self, vectors: Iterable[DimensionVector]) -> str:
        ordered = sorted(vectors, key=lambda v: (v.total, v.values))
        return "\n".join(self.format_vector(v.values) for v in ordered)

    def format_stability(self, semistable: bool, stable: bool) -> str:
        return f"semistable: {self.yes_no(semistable)}\nstable: {self.yes_no(stable)}"

    def format_polystable(self, datum: PolystableDatum) -> str:
        return "\n".join(f"{k} x {self.format_vector(m.dimension_vector.values)}"
                         for m, k in sorted(datum.summands, key=lambda s: s[0].dimension_vector.values))

    # ========================================================================
    # CATALOG
    # ========================================================================

    def format_catalog_list(self, summaries: Sequence[Dict[str, Any]]) -> str:
        lines = []
        for s in summaries:
            lines.append(f"{s['name']:<20} {s['vertices']} vertices  {s['arrows']} arrows  "
                         f"{s['relations']} relations  {s['class']}")
        return "\n".join(lines)

    def format_algebra(self, algebra: BoundQuiverAlgebra) -> str:
        lines = [
            f"{algebra.name}: {len(algebra.vertices)} vertices, {len(algebra.arrows)} arrows, "
            f"{len(algebra.relations)} relation(s)",
            "vertices: " + " ".join(algebra.vertices),
        ]
        lines.extend(f"  {a.id}: {a.tail} -> {a.head}" for a in algebra.arrows)
        if algebra.relations:
            lines.append("relations: " + " ".join(f"({f},{s})" for f, s in algebra.relations))
        return "\n".join(lines)
