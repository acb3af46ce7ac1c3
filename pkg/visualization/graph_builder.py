"""
Graph Builder module for bound quiver visualization.
Generates node/edge dicts and Graphviz DOT with arrows colored by color class.
"""

from typing import Any, Dict, Optional

from models.algebra import BoundQuiverAlgebra

PALETTE = ("red", "blue", "darkgreen", "orange", "purple", "brown", "magenta", "cyan")
UNCOLORED = "black"


class GraphBuilder:
    """Builder for quiver visualizations."""

    def color_classes(self, algebra: BoundQuiverAlgebra) -> Dict[str, Optional[str]]:
        """
        Arrow to color label.

        Gentle algebras use their exact coloring and string algebras their
        gentle cover; otherwise arrows of one relation chain share a label.
        """
        certificates = algebra.certificates
        coloring = certificates.coloring or certificates.gentle_cover
        if coloring is not None:
            return dict(coloring.color_map)
        labels: Dict[str, Optional[str]] = {a: None for a in algebra.arrow_ids}
        for i, chain in enumerate(certificates.chains, start=1):
            for arrow_id in chain.arrows:
                if labels[arrow_id] is None:
                    labels[arrow_id] = f"chain{i}"
        return labels

    def _palette(self, labels: Dict[str, Optional[str]]) -> Dict[str, str]:
        ordered = sorted({label for label in labels.values() if label is not None})
        return {label: PALETTE[i % len(PALETTE)] for i, label in enumerate(ordered)}

    def build_graph(self, algebra: BoundQuiverAlgebra) -> Dict[str, Any]:
        """
        Build a generic graph representation of the algebra.

        Returns:
            Dictionary with nodes, edges and relations
        """
        quiver = algebra.quiver
        labels = self.color_classes(algebra)
        palette = self._palette(labels)

        nodes = []
        for vertex in algebra.vertices:
            nodes.append({
                'id': vertex,
                'label': vertex,
                'group': self._get_node_group(algebra, vertex),
            })

        free = set(algebra.free_arrows())
        edges = []
        for arrow in algebra.arrows:
            label = labels[arrow.id]
            edges.append({
                'id': arrow.id,
                'from': arrow.tail,
                'to': arrow.head,
                'label': arrow.id,
                'color_class': label,
                'color': palette.get(label, UNCOLORED),
                'is_free': arrow.id in free,
            })

        return {
            'nodes': nodes,
            'edges': edges,
            'relations': [list(g) for g in algebra.relations],
            'is_acyclic': quiver.is_acyclic,
        }

    def _get_node_group(self, algebra: BoundQuiverAlgebra, vertex: str) -> str:
        quiver = algebra.quiver
        if not quiver.arrows_into(vertex) and not quiver.arrows_from(vertex):
            return 'isolated'
        if not quiver.arrows_into(vertex):
            return 'source'
        if quiver.is_sink(vertex):
            return 'sink'
        return 'inner'

    def to_dot(self, algebra: BoundQuiverAlgebra) -> str:
        """
        Generate DOT format string for Graphviz visualization.

        Relations are listed in the graph label as first·second in traversal order.
        """
        graph = self.build_graph(algebra)
        title = algebra.name or "Q"
        lines = [f'digraph "{title}" {{', "    rankdir=RL;", "    node [shape=circle];", ""]

        for node in graph['nodes']:
            lines.append(f'    "{node["id"]}";')
        lines.append("")

        for edge in graph['edges']:
            lines.append(f'    "{edge["from"]}" -> "{edge["to"]}" '
                         f'[label="{edge["label"]}", color={edge["color"]}];')

        if graph['relations']:
            rendered = ", ".join(f"{first}·{second}" for first, second in graph['relations'])
            lines.append("")
            lines.append(f'    label="I = <{rendered}>";')

        lines.append("}")
        return "\n".join(lines)

