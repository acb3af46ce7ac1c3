"""
Quiver model.
A finite directed graph with named vertices and named arrows.
"""

from typing import Dict, List, Optional, Sequence, Tuple

from core.errors import DuplicateId, UnknownArrow, UnknownVertex


class Arrow:
    """An arrow ``id: tail -> head``."""

    def __init__(self, id: str, tail: str, head: str):
        """
        Initialize an arrow.

        Args:
            id: Arrow identifier, unique within its quiver
            tail: Vertex the arrow starts at
            head: Vertex the arrow ends at
        """
        self.id = id
        self.tail = tail
        self.head = head

    def __eq__(self, other) -> bool:
        if not isinstance(other, Arrow):
            return False
        return (self.id, self.tail, self.head) == (other.id, other.tail, other.head)

    def __hash__(self) -> int:
        return hash((self.id, self.tail, self.head))

    def __str__(self) -> str:
        return f"{self.id}: {self.tail}->{self.head}"

    def __repr__(self) -> str:
        return f"Arrow(id='{self.id}', tail='{self.tail}', head='{self.head}')"


class Quiver:
    """Finite quiver with declared vertex and arrow order."""

    def __init__(self, vertices: Sequence[str], arrows: Sequence[Arrow]):
        """
        Initialize a quiver.

        Args:
            vertices: Vertex ids in declared order
            arrows: Arrows in declared order

        Raises:
            DuplicateId: If a vertex or arrow id repeats
            UnknownVertex: If an arrow ends at an undeclared vertex
        """
        self.vertices: Tuple[str, ...] = tuple(vertices)
        self.arrows: Tuple[Arrow, ...] = tuple(arrows)
        self._validate()

        self._vertex_index = {v: i for i, v in enumerate(self.vertices)}
        self._arrow_by_id = {a.id: a for a in self.arrows}
        self._outgoing: Dict[str, List[Arrow]] = {v: [] for v in self.vertices}
        self._incoming: Dict[str, List[Arrow]] = {v: [] for v in self.vertices}
        for arrow in self.arrows:
            self._outgoing[arrow.tail].append(arrow)
            self._incoming[arrow.head].append(arrow)

        self._topological_order = self._compute_topological_order()
        self._longest_path: Optional[int] = None

    def _validate(self):
        seen = set()
        for v in self.vertices:
            if v in seen:
                raise DuplicateId("vertex", v)
            seen.add(v)
        arrow_ids = set()
        for arrow in self.arrows:
            if arrow.id in arrow_ids:
                raise DuplicateId("arrow", arrow.id)
            arrow_ids.add(arrow.id)
            for end in (arrow.tail, arrow.head):
                if end not in seen:
                    raise UnknownVertex(end)

    def _compute_topological_order(self) -> Optional[Tuple[str, ...]]:
        """Kahn's algorithm, ties broken by declared order; None if cyclic."""
        indegree = {v: len(self._incoming[v]) for v in self.vertices}
        ready = [v for v in self.vertices if indegree[v] == 0]
        order = []
        while ready:
            ready.sort(key=self._vertex_position)
            v = ready.pop(0)
            order.append(v)
            for arrow in self._outgoing[v]:
                indegree[arrow.head] -= 1
                if indegree[arrow.head] == 0:
                    ready.append(arrow.head)
        if len(order) != len(self.vertices):
            return None
        return tuple(order)

    def _vertex_position(self, v: str) -> int:
        return self.vertices.index(v)

    @property
    def is_acyclic(self) -> bool:
        return self._topological_order is not None

    @property
    def arrow_ids(self) -> Tuple[str, ...]:
        return tuple(a.id for a in self.arrows)

    def topological_order(self) -> Tuple[str, ...]:
        """Vertices ordered so every arrow goes from an earlier to a later vertex."""
        if self._topological_order is None:
            raise ValueError("Quiver has an oriented cycle")
        return self._topological_order

    def longest_path_length(self) -> int:
        """Number of arrows on a longest path (cached)."""
        if self._longest_path is None:
            longest = {v: 0 for v in self.vertices}
            for v in reversed(self.topological_order()):
                for arrow in self._outgoing[v]:
                    longest[v] = max(longest[v], longest[arrow.head] + 1)
            self._longest_path = max(longest.values(), default=0)
        return self._longest_path

    def vertex_index(self, vertex: str) -> int:
        if vertex not in self._vertex_index:
            raise UnknownVertex(vertex)
        return self._vertex_index[vertex]

    def has_vertex(self, vertex: str) -> bool:
        return vertex in self._vertex_index

    def arrow(self, arrow_id: str) -> Arrow:
        if arrow_id not in self._arrow_by_id:
            raise UnknownArrow(arrow_id)
        return self._arrow_by_id[arrow_id]

    def has_arrow(self, arrow_id: str) -> bool:
        return arrow_id in self._arrow_by_id

    def arrows_from(self, vertex: str) -> List[Arrow]:
        self.vertex_index(vertex)
        return list(self._outgoing[vertex])

    def arrows_into(self, vertex: str) -> List[Arrow]:
        self.vertex_index(vertex)
        return list(self._incoming[vertex])

    def is_sink(self, vertex: str) -> bool:
        return not self._outgoing[vertex]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Quiver):
            return False
        return self.vertices == other.vertices and self.arrows == other.arrows

    def __hash__(self) -> int:
        return hash((self.vertices, self.arrows))

    def __str__(self) -> str:
        return f"Quiver(vertices={len(self.vertices)}, arrows={len(self.arrows)})"

    def __repr__(self) -> str:
        return f"Quiver(vertices={list(self.vertices)}, arrows={list(self.arrows)})"
