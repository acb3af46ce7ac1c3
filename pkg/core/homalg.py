"""
Homological algebra on explicit modules.

Hom spaces are kernels of the intertwining system φ(ha)M(a) = N(a)φ(ta),
written with row-major vectorization of the unknowns φ(x). Ext is computed
from syzygies 0 -> Ω -> P0 -> M -> 0 built on the projective cover, and
Krull-Schmidt decompositions split endomorphisms along generalized
eigenspaces (Fitting's lemma).
"""

import logging
from dataclasses import dataclass
from itertools import product
from typing import Dict, List, Optional, Tuple

import numpy as np
import sympy

from core.algebra_engine import AlgebraEngine
from core.errors import InvalidModule, NonSplitSummand
from core.field_linalg import (column_space_mod, complement_basis, identity, inv_mod_scalar,
                               is_invertible, matmul_mod, nullspace_mod, rank_mod, zeros)
from core.module_builder import ModuleBuilder
from core.randomness import make_rng
from models.dimension_vector import DimensionVector
from models.explicit_module import ExplicitModule, HomBasis

logger = logging.getLogger(__name__)

Morphism = Dict[str, np.ndarray]

DEFAULT_SPLIT_ATTEMPTS = 8
EXHAUSTIVE_SEARCH_LIMIT = 4096
RANDOM_SEARCH_TRIES = 32


@dataclass
class Syzygy:
    """
    The sequence 0 -> Ω -> P0 -> M -> 0 for a projective cover P0.

    Attributes:
        cover: P0, a direct sum of indecomposable projectives
        kernel: Ω as a module in the basis of its inclusion
        inclusion: Vertex to basis matrix of Ω(x) inside P0(x)
        projection: Vertex to the matrix of P0(x) -> M(x)
        top: Multiplicity of each P_x in P0, i.e. dim of top(M) at x
    """
    cover: ExplicitModule
    kernel: ExplicitModule
    inclusion: Dict[str, np.ndarray]
    projection: Dict[str, np.ndarray]
    top: DimensionVector


class HomologicalAlgebra:
    """
    Hom, Ext, isomorphism and Krull-Schmidt computations over F_p.
    """

    def __init__(self, split_attempts: int = DEFAULT_SPLIT_ATTEMPTS):
        self.split_attempts = split_attempts
        self.algebra_engine = AlgebraEngine()
        self.builder = ModuleBuilder()

    # ========================================================================
    # HOM
    # ========================================================================

    def _hom_system(self, source: ExplicitModule, target: ExplicitModule
                    ) -> Tuple[np.ndarray, Dict[str, Tuple[int, int, int]]]:
        """Coefficient matrix of the intertwining equations and unknown layout."""
        p = source.prime
        algebra = source.algebra
        layout: Dict[str, Tuple[int, int, int]] = {}
        offset = 0
        for v in algebra.vertices:
            rows, cols = target.dim(v), source.dim(v)
            layout[v] = (offset, rows, cols)
            offset += rows * cols

        blocks = []
        for arrow in algebra.arrows:
            h_off, n_h, m_h = layout[arrow.head]
            t_off, n_t, m_t = layout[arrow.tail]
            equations = n_h * m_t
            if equations == 0:
                continue
            block = zeros(equations, offset)
            block[:, h_off:h_off + n_h * m_h] = np.kron(identity(n_h), source.matrix(arrow.id).T)
            block[:, t_off:t_off + n_t * m_t] -= np.kron(target.matrix(arrow.id), identity(m_t))
            blocks.append(block % p)
        system = np.concatenate(blocks, axis=0) if blocks else zeros(0, offset)
        return system, layout

    def hom_space(self, source: ExplicitModule, target: ExplicitModule) -> HomBasis:
        """
        Basis of Hom(M, N).

        Raises:
            FieldMismatch: If the modules live over different algebras or fields
        """
        source.check_compatible(target)
        p = source.prime
        system, layout = self._hom_system(source, target)
        unknowns = system.shape[1]
        if unknowns == 0:
            return HomBasis(source, target, [])
        kernel = nullspace_mod(system, p)

        basis = []
        for k in range(kernel.shape[1]):
            vector = kernel[:, k]
            phi = {}
            for v, (offset, rows, cols) in layout.items():
                phi[v] = vector[offset:offset + rows * cols].reshape(rows, cols).copy()
            basis.append(phi)
        return HomBasis(source, target, basis)

    def hom_dimension(self, source: ExplicitModule, target: ExplicitModule) -> int:
        source.check_compatible(target)
        system, _ = self._hom_system(source, target)
        return system.shape[1] - rank_mod(system, source.prime)

    def end_dimension(self, module: ExplicitModule) -> int:
        return self.hom_dimension(module, module)

    def is_morphism(self, phi: Morphism, source: ExplicitModule, target: ExplicitModule) -> bool:
        p = source.prime
        for arrow in source.algebra.arrows:
            left = matmul_mod(phi[arrow.head], source.matrix(arrow.id), p)
            right = matmul_mod(target.matrix(arrow.id), phi[arrow.tail], p)
            if not np.array_equal(left, right):
                return False
        return True

    # ========================================================================
    # SYZYGIES AND EXT
    # ========================================================================

    def radical(self, module: ExplicitModule, vertex: str) -> np.ndarray:
        """Basis of rad M at a vertex: the span of the images of incoming arrows."""
        incoming = [module.matrix(a.id) for a in module.algebra.quiver.arrows_into(vertex)]
        n = module.dim(vertex)
        if not incoming:
            return zeros(n, 0)
        return column_space_mod(np.concatenate(incoming, axis=1), module.prime)

    def syzygy(self, module: ExplicitModule) -> Syzygy:
        """
        Projective cover and first syzygy of a module.

        A basis of top(M) at x is a complement of rad M(x); each such vector t
        gives a copy of P_x mapping the path w to M(w)t.
        """
        algebra = module.algebra
        p = module.prime
        engine = self.algebra_engine

        copies: List[ExplicitModule] = []
        columns: Dict[str, List[np.ndarray]] = {v: [] for v in algebra.vertices}
        top: Dict[str, int] = {}
        for x in algebra.vertices:
            n = module.dim(x)
            generators = complement_basis(self.radical(module, x), n, p)
            top[x] = generators.shape[1]
            if top[x] == 0:
                continue
            paths = engine.projective_basis(algebra, x)
            projective = engine.projective(algebra, x, p)
            for j in range(generators.shape[1]):
                copies.append(projective)
                for y, ws in paths.items():
                    for w in ws:
                        image = generators[:, j] if not w else matmul_mod(module.path_matrix(w), generators[:, j], p)
                        columns[y].append(image.reshape(-1, 1))

        if copies:
            cover = self.builder.direct_sum(copies)
        else:
            cover = ExplicitModule(algebra, {}, {}, p)
        projection = {
            v: (np.concatenate(columns[v], axis=1) % p if columns[v] else zeros(module.dim(v), 0))
            for v in algebra.vertices
        }

        for v in algebra.vertices:
            if rank_mod(projection[v], p) != module.dim(v):
                raise InvalidModule(f"Projective cover is not surjective at vertex {v}")
        for arrow in algebra.arrows:
            left = matmul_mod(projection[arrow.head], cover.matrix(arrow.id), p)
            right = matmul_mod(module.matrix(arrow.id), projection[arrow.tail], p)
            if not np.array_equal(left, right):
                raise InvalidModule(f"Projective cover does not commute with arrow {arrow.id}")

        inclusion = {v: nullspace_mod(projection[v], p) for v in algebra.vertices}
        kernel = self.builder.restrict(cover, inclusion)
        return Syzygy(cover, kernel, inclusion, projection,
                      DimensionVector.from_mapping(algebra.vertices, top))

    def ext1_dim(self, source: ExplicitModule, target: ExplicitModule) -> int:
        """
        dim Ext^1(M, N) = dim Hom(Ω, N) - dim Hom(P0, N) + dim Hom(M, N).

        dim Hom(P0, N) is Σ top(x) dim N(x) by the projective property.
        """
        source.check_compatible(target)
        syz = self.syzygy(source)
        hom_cover = sum(k * target.dim(x) for x, k in syz.top.items())
        return (self.hom_dimension(syz.kernel, target) - hom_cover
                + self.hom_dimension(source, target))

    def extl_dim(self, degree: int, source: ExplicitModule, target: ExplicitModule) -> int:
        """dim Ext^l(M, N), via Ext^l(M, N) = Ext^1(Ω^{l-1} M, N) for l >= 1."""
        if degree < 0:
            raise ValueError("Ext degree must be non-negative")
        if degree == 0:
            return self.hom_dimension(source, target)
        current = source
        for _ in range(degree - 1):
            current = self.syzygy(current).kernel
            if current.is_zero():
                return 0
        if current.is_zero():
            return 0
        return self.ext1_dim(current, target)

    def ext_dimensions(self, source: ExplicitModule, target: ExplicitModule) -> List[int]:
        """[dim Hom, dim Ext^1, ...] up to the last degree where Ω^l M is nonzero."""
        source.check_compatible(target)
        dims = [self.hom_dimension(source, target)]
        current = source
        while not current.is_zero():
            syz = self.syzygy(current)
            hom_cover = sum(k * target.dim(x) for x, k in syz.top.items())
            dims.append(self.hom_dimension(syz.kernel, target) - hom_cover
                        + self.hom_dimension(current, target))
            current = syz.kernel
        while len(dims) > 1 and dims[-1] == 0:
            dims.pop()
        return dims

    def euler_characteristic(self, source: ExplicitModule, target: ExplicitModule) -> int:
        return sum((-1) ** l * value for l, value in enumerate(self.ext_dimensions(source, target)))

    # ========================================================================
    # ISOMORPHISM
    # ========================================================================

    def is_isomorphism(self, phi: Morphism, source: ExplicitModule) -> bool:
        return all(is_invertible(phi[v], source.prime) if source.dim(v) else True
                   for v in source.algebra.vertices)

    def find_isomorphism(self, source: ExplicitModule, target: ExplicitModule,
                         seed: int = 0) -> Optional[Morphism]:
        """
        An invertible intertwiner M -> N, or None.

        The Hom-dimension conditions are checked first; the search is
        exhaustive over Hom(M, N) when p^dim is small, random otherwise.
        """
        source.check_compatible(target)
        if source.dimension_vector != target.dimension_vector:
            return None
        if source.is_zero():
            return {v: zeros(0, 0) for v in source.algebra.vertices}

        hom = self.hom_space(source, target)
        h = hom.dimension
        if h == 0:
            return None
        if not (h == self.hom_dimension(target, source)
                == self.end_dimension(source) == self.end_dimension(target)):
            return None

        p = source.prime
        if p ** h <= EXHAUSTIVE_SEARCH_LIMIT:
            candidates = product(range(p), repeat=h)
        else:
            rng = make_rng(seed, "isomorphism")
            candidates = (rng.integers(0, p, size=h).tolist() for _ in range(RANDOM_SEARCH_TRIES))
        for coefficients in candidates:
            phi = hom.combination(coefficients)
            if self.is_isomorphism(phi, source):
                return phi
        return None

    def is_isomorphic(self, source: ExplicitModule, target: ExplicitModule, seed: int = 0) -> bool:
        return self.find_isomorphism(source, target, seed) is not None

    # ========================================================================
    # KRULL-SCHMIDT
    # ========================================================================

    def _eigenvalues(self, matrix: np.ndarray, p: int) -> Tuple[List[int], bool]:
        """
        F_p-rational eigenvalues of a square matrix, plus whether its
        characteristic polynomial has an irreducible factor of degree > 1.
        """
        if matrix.shape[0] == 0:
            return [], False
        t = sympy.Symbol("t")
        coefficients = sympy.Matrix(matrix.tolist()).charpoly(t).all_coeffs()
        poly = sympy.Poly.from_list([int(c) % p for c in coefficients], t, modulus=p)
        _, factors = poly.factor_list()
        roots: List[int] = []
        nonsplit = False
        for factor, _ in factors:
            degree = factor.degree()
            if degree == 1:
                c1, c0 = (int(c) for c in factor.all_coeffs())
                roots.append((-c0 * inv_mod_scalar(c1, p)) % p)
            elif degree > 1:
                nonsplit = True
        return sorted(set(roots)), nonsplit

    def _power(self, matrix: np.ndarray, exponent: int, p: int) -> np.ndarray:
        result = identity(matrix.shape[0])
        base = matrix % p
        while exponent:
            if exponent & 1:
                result = matmul_mod(result, base, p)
            base = matmul_mod(base, base, p)
            exponent >>= 1
        return result

    def _fitting_split(self, module: ExplicitModule, phi: Morphism, value: int
                       ) -> Optional[Tuple[ExplicitModule, ExplicitModule]]:
        """
        M = ker (φ - λ)^n ⊕ im (φ - λ)^n, or None when one side is zero.
        """
        p = module.prime
        n = module.total_dimension
        kernels, images = {}, {}
        for v in module.algebra.vertices:
            size = module.dim(v)
            shifted = (phi[v] - value * identity(size)) % p
            power = self._power(shifted, n, p)
            kernels[v] = nullspace_mod(power, p) if size else zeros(0, 0)
            images[v] = column_space_mod(power, p) if size else zeros(0, 0)
        kernel_dim = sum(b.shape[1] for b in kernels.values())
        if kernel_dim == 0 or kernel_dim == n:
            return None
        return self.builder.restrict(module, kernels), self.builder.restrict(module, images)

    def split(self, module: ExplicitModule, seed: int = 0
              ) -> Optional[Tuple[ExplicitModule, ExplicitModule]]:
        """
        A nontrivial direct-sum splitting, or None when M is indecomposable.

        Raises:
            NonSplitSummand: If no splitting was found but some endomorphism has
                an eigenvalue outside F_p
        """
        p = module.prime
        end = self.hom_space(module, module)
        if end.dimension <= 1:
            return None

        rng = make_rng(seed, "split", module.total_dimension)
        candidates = list(end.basis)
        for _ in range(self.split_attempts):
            candidates.append(end.combination(rng.integers(0, p, size=end.dimension).tolist()))

        saw_nonsplit = False
        for phi in candidates:
            values: set = set()
            for v in module.algebra.vertices:
                roots, nonsplit = self._eigenvalues(phi[v], p)
                values.update(roots)
                saw_nonsplit = saw_nonsplit or nonsplit
            for value in sorted(values):
                parts = self._fitting_split(module, phi, value)
                if parts is not None:
                    logger.debug("Split %s into %s + %s", module.dimension_vector,
                                 parts[0].dimension_vector, parts[1].dimension_vector)
                    return parts

        if saw_nonsplit:
            raise NonSplitSummand(
                f"Summand of dimension {module.dimension_vector} has an endomorphism "
                f"with eigenvalues outside F_{p}"
            )
        return None

    def indecomposable_summands(self, module: ExplicitModule, seed: int = 0) -> List[ExplicitModule]:
        """All indecomposable summands, with repetition."""
        if module.is_zero():
            return []
        pending = [module]
        summands: List[ExplicitModule] = []
        counter = 0
        while pending:
            current = pending.pop()
            parts = self.split(current, seed=seed + counter)
            counter += 1
            if parts is None:
                summands.append(current)
            else:
                pending.extend(part for part in parts if not part.is_zero())
        return summands

    def group_isomorphic(self, modules: List[ExplicitModule], seed: int = 0
                         ) -> List[Tuple[ExplicitModule, int]]:
        """Isomorphism classes with multiplicities, in canonical order."""
        classes: List[List] = []
        for module in modules:
            for entry in classes:
                if self.is_isomorphic(entry[0], module, seed):
                    entry[1] += 1
                    break
            else:
                classes.append([module, 1])
        result = [(m, k) for m, k in classes]
        result.sort(key=lambda item: (item[0].dimension_vector.values,
                                      item[0].rank_profile().ranks))
        return result

    def decompose(self, module: ExplicitModule, seed: int = 0) -> List[Tuple[ExplicitModule, int]]:
        """
        Krull-Schmidt decomposition: pairwise non-isomorphic indecomposables
        with multiplicities.

        Raises:
            NonSplitSummand: If a summand does not split over F_p
        """
        return self.group_isomorphic(self.indecomposable_summands(module, seed), seed)

    def is_indecomposable(self, module: ExplicitModule, seed: int = 0) -> bool:
        return not module.is_zero() and self.split(module, seed) is None

    def is_schur(self, module: ExplicitModule) -> bool:
        """End(M) = F_p."""
        return self.end_dimension(module) == 1
