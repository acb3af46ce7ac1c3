"""
Constructions of explicit modules.

Direct sums, base change, submodules and quotients as modules, and the
string and band modules of a walk. A walk is a start vertex plus a sequence
of letters (arrow_id, sign): sign +1 traverses the arrow forwards, -1
traverses it backwards.
"""

import logging
from typing import Dict, List, Mapping, Sequence, Set, Tuple

import numpy as np

from core.errors import InvalidModule, NotASubmodule
from core.field_linalg import (complement_basis, contains, inv_mod_mat, matmul_mod,
                               solve_mod, zeros)
from models.algebra import BoundQuiverAlgebra
from models.explicit_module import ExplicitModule, Submodule

logger = logging.getLogger(__name__)

Letter = Tuple[str, int]
Walk = Tuple[Letter, ...]


class ModuleBuilder:
    """Stateless module constructions over a fixed prime field."""

    # ========================================================================
    # SUMS, BASE CHANGE, SUBMODULES AND QUOTIENTS
    # ========================================================================

    def direct_sum(self, modules: Sequence[ExplicitModule]) -> ExplicitModule:
        """
        Block-diagonal direct sum; at each vertex the summands' bases are
        stacked in the given order.
        """
        if not modules:
            raise ValueError("direct_sum needs at least one module")
        first = modules[0]
        for other in modules[1:]:
            first.check_compatible(other)
        algebra = first.algebra

        dims = {v: sum(m.dim(v) for m in modules) for v in algebra.vertices}
        matrices = {}
        for arrow in algebra.arrows:
            block = zeros(dims[arrow.head], dims[arrow.tail])
            row = col = 0
            for m in modules:
                h, t = m.dim(arrow.head), m.dim(arrow.tail)
                block[row:row + h, col:col + t] = m.matrix(arrow.id)
                row += h
                col += t
            matrices[arrow.id] = block
        label = " + ".join(m.label for m in modules if m.label)
        canonical = all(m.canonical for m in modules)
        return ExplicitModule(algebra, dims, matrices, first.prime, canonical=canonical, label=label)

    def base_change(self, module: ExplicitModule, g: Mapping[str, np.ndarray]) -> ExplicitModule:
        """g·M with (g·M)(a) = g(ha) M(a) g(ta)⁻¹; vertices missing from g keep their basis."""
        p = module.prime
        inverses = {v: inv_mod_mat(matrix, p) for v, matrix in g.items()}
        matrices = {}
        for arrow in module.algebra.arrows:
            m = module.matrix(arrow.id)
            if arrow.head in g:
                m = matmul_mod(g[arrow.head], m, p)
            if arrow.tail in inverses:
                m = matmul_mod(m, inverses[arrow.tail], p)
            matrices[arrow.id] = m
        return ExplicitModule(module.algebra, module.dims, matrices, p, label=module.label)

    def _check_stable(self, module: ExplicitModule, bases: Mapping[str, np.ndarray]):
        p = module.prime
        for arrow in module.algebra.arrows:
            image = matmul_mod(module.matrix(arrow.id), bases[arrow.tail], p)
            if not contains(bases[arrow.head], image, p):
                raise NotASubmodule(f"Subspaces are not closed under arrow {arrow.id}")

    def restrict(self, module: ExplicitModule, bases: Mapping[str, np.ndarray]) -> ExplicitModule:
        """
        The submodule spanned by the given column bases, as a module in that basis.

        Raises:
            NotASubmodule: If some arrow maps U(ta) outside U(ha)
        """
        p = module.prime
        matrices = {}
        for arrow in module.algebra.arrows:
            head_basis = bases[arrow.head]
            image = matmul_mod(module.matrix(arrow.id), bases[arrow.tail], p)
            if head_basis.shape[1] == 0:
                if np.any(image):
                    raise NotASubmodule(f"Subspaces are not closed under arrow {arrow.id}")
                matrices[arrow.id] = zeros(0, bases[arrow.tail].shape[1])
                continue
            try:
                matrices[arrow.id] = solve_mod(head_basis, image, p)
            except ValueError:
                raise NotASubmodule(f"Subspaces are not closed under arrow {arrow.id}")
        dims = {v: bases[v].shape[1] for v in module.algebra.vertices}
        return ExplicitModule(module.algebra, dims, matrices, p)

    def quotient(self, module: ExplicitModule, submodule: Submodule) -> ExplicitModule:
        """
        M/U with matrices induced on the standard-basis complement of U.

        Raises:
            NotASubmodule: If U is not arrow-stable
        """
        p = module.prime
        bases = submodule.bases
        self._check_stable(module, bases)

        complements: Dict[str, np.ndarray] = {}
        projections: Dict[str, np.ndarray] = {}
        for v in module.algebra.vertices:
            n = module.dim(v)
            u = bases[v]
            c = complement_basis(u, n, p)
            complements[v] = c
            if n == 0:
                projections[v] = zeros(0, 0)
                continue
            full_inverse = inv_mod_mat(np.concatenate([u, c], axis=1), p)
            projections[v] = full_inverse[u.shape[1]:, :]

        matrices = {
            arrow.id: matmul_mod(projections[arrow.head],
                                 matmul_mod(module.matrix(arrow.id), complements[arrow.tail], p), p)
            for arrow in module.algebra.arrows
        }
        dims = {v: complements[v].shape[1] for v in module.algebra.vertices}
        return ExplicitModule(module.algebra, dims, matrices, p)

    # ========================================================================
    # STRINGS AND BANDS
    # ========================================================================

    def letter_ends(self, algebra: BoundQuiverAlgebra, letter: Letter) -> Tuple[str, str]:
        """(start, end) vertices of a letter."""
        arrow = algebra.quiver.arrow(letter[0])
        return (arrow.tail, arrow.head) if letter[1] > 0 else (arrow.head, arrow.tail)

    def walk_vertices(self, algebra: BoundQuiverAlgebra, start: str, walk: Sequence[Letter]) -> List[str]:
        """
        Vertices visited by a walk, start included.

        Raises:
            InvalidModule: If consecutive letters do not meet
        """
        algebra.quiver.vertex_index(start)
        visited = [start]
        for letter in walk:
            begin, end = self.letter_ends(algebra, letter)
            if begin != visited[-1]:
                raise InvalidModule(f"Letter {self.format_letter(letter)} does not start at {visited[-1]}")
            visited.append(end)
        return visited

    def is_reduced(self, algebra: BoundQuiverAlgebra, walk: Sequence[Letter], cyclic: bool = False) -> bool:
        """No letter followed by its inverse and no relation read in either direction."""
        pairs = list(zip(walk, walk[1:]))
        if cyclic and walk:
            pairs.append((walk[-1], walk[0]))
        for (a, s), (b, t) in pairs:
            if a == b and s != t:
                return False
            if s > 0 and t > 0 and algebra.is_relation(a, b):
                return False
            if s < 0 and t < 0 and algebra.is_relation(b, a):
                return False
        return True

    def _walk_module(self, algebra: BoundQuiverAlgebra, start: str, walk: Sequence[Letter],
                     prime: int, cyclic: bool, scalar: int, label: str) -> ExplicitModule:
        visited = self.walk_vertices(algebra, start, walk)
        if cyclic:
            if visited[-1] != start:
                raise InvalidModule("A band walk must return to its start vertex")
            visited = visited[:-1]

        dims: Dict[str, int] = {v: 0 for v in algebra.vertices}
        position = []
        for v in visited:
            position.append(dims[v])
            dims[v] += 1

        matrices = {a.id: zeros(dims[a.head], dims[a.tail]) for a in algebra.arrows}
        n = len(visited)
        for i, (arrow_id, sign) in enumerate(walk):
            j = (i + 1) % n if cyclic else i + 1
            source, target = (i, j) if sign > 0 else (j, i)
            value = scalar if (cyclic and i == 0) else 1
            matrices[arrow_id][position[target], position[source]] = value % prime
        return ExplicitModule(algebra, dims, matrices, prime, canonical=True, label=label)

    def string_module(self, algebra: BoundQuiverAlgebra, start: str, walk: Sequence[Letter],
                      prime: int) -> ExplicitModule:
        """
        The string module M(w): one basis vector per visited vertex, each
        letter acting by 1 between neighbouring basis vectors.

        Raises:
            InvalidModule: If the walk is broken or runs through a relation
        """
        walk = tuple(walk)
        if not self.is_reduced(algebra, walk):
            raise InvalidModule(f"Walk {self.format_walk(walk)} is not a string")
        return self._walk_module(algebra, start, walk, prime, cyclic=False, scalar=1,
                                 label=f"M({self.format_walk(walk) or start})")

    def band_module(self, algebra: BoundQuiverAlgebra, start: str, walk: Sequence[Letter],
                    parameter: int, prime: int) -> ExplicitModule:
        """
        The one-dimensional-parameter band module M(b, λ): the closed walk b
        with the first letter acting by λ and the others by 1.

        Raises:
            InvalidModule: If the walk is not closed and reduced, or λ = 0
        """
        walk = tuple(walk)
        if parameter % prime == 0:
            raise InvalidModule("Band parameter must be nonzero")
        if not walk or not self.is_reduced(algebra, walk, cyclic=True):
            raise InvalidModule(f"Walk {self.format_walk(walk)} is not a band")
        return self._walk_module(algebra, start, walk, prime, cyclic=True, scalar=parameter,
                                 label=f"B({self.format_walk(walk)}; {parameter % prime})")

    def inverse_walk(self, algebra: BoundQuiverAlgebra, start: str,
                     walk: Sequence[Letter]) -> Tuple[str, Walk]:
        end = self.walk_vertices(algebra, start, walk)[-1]
        return end, tuple((a, -s) for a, s in reversed(walk))

    def enumerate_strings(self, algebra: BoundQuiverAlgebra, max_dim: int) -> List[Tuple[str, Walk]]:
        """
        All strings with at most max_dim basis vectors, one per inversion class.

        Returns:
            (start vertex, walk) pairs in canonical order; the representative of
            each class is the smaller of the walk and its inverse
        """
        found: Set[Tuple[str, Walk]] = set()
        stack: List[Tuple[str, Walk, str]] = [(v, (), v) for v in algebra.vertices]
        while stack:
            start, walk, end = stack.pop()
            if walk:
                found.add(min((start, walk), self.inverse_walk(algebra, start, walk)))
            else:
                found.add((start, walk))
            if len(walk) + 1 >= max_dim:
                continue
            options = [((a.id, 1), a.head) for a in algebra.quiver.arrows_from(end)]
            options += [((a.id, -1), a.tail) for a in algebra.quiver.arrows_into(end)]
            for letter, nxt in options:
                candidate = walk + (letter,)
                if self.is_reduced(algebra, candidate[-2:]):
                    stack.append((start, candidate, nxt))
        return sorted(found, key=lambda item: (len(item[1]), item))

    def parse_walk(self, text: str) -> Walk:
        """Parse 'a,-b,c' into letters; '-' marks an inverse letter."""
        letters = []
        for token in (t.strip() for t in text.split(",")):
            if not token:
                continue
            if token.startswith("-"):
                letters.append((token[1:], -1))
            else:
                letters.append((token, 1))
        return tuple(letters)

    def format_letter(self, letter: Letter) -> str:
        return letter[0] if letter[1] > 0 else f"-{letter[0]}"

    def format_walk(self, walk: Sequence[Letter]) -> str:
        return ",".join(self.format_letter(letter) for letter in walk)
