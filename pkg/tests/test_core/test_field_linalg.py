"""
Tests for exact linear algebra over prime fields.
"""

import numpy as np
import pytest

from core.errors import FieldTooSmall
from core.field_linalg import (canonical_key, column_space_mod, complement_basis, contains,
                               count_subspaces, gaussian_binomial, inv_mod_mat, iter_subspaces,
                               matmul_mod, nullspace_mod, random_of_rank, rank_mod, rref_mod,
                               solve_mod, subspace_sum)
from core.randomness import derive_seed, make_rng


class TestElimination:
    """Test RREF, rank, nullspaces and solving."""

    def test_rref(self):
        """Test the reduced form and pivots over F_5."""
        R, pivots = rref_mod(np.array([[2, 4], [1, 2]]), 5)

        assert pivots == [0]
        assert R.tolist() == [[1, 2], [0, 0]]

    def test_rank_depends_on_prime(self):
        """Test a matrix singular mod 3 but not mod 5."""
        A = np.array([[1, 1], [1, 4]])

        assert rank_mod(A, 3) == 1
        assert rank_mod(A, 5) == 2

    def test_rank_of_empty(self):
        """Test empty matrices have rank zero."""
        assert rank_mod(np.zeros((0, 3), dtype=np.int64), 7) == 0

    def test_nullspace(self):
        """Test A·N = 0 and dim N = n - rank."""
        A = np.array([[1, 2, 3], [2, 4, 6]])
        N = nullspace_mod(A, 7)

        assert N.shape == (3, 2)
        assert not np.any(matmul_mod(A, N, 7))

    def test_solve(self):
        """Test solving a consistent system."""
        A = np.array([[1, 1], [0, 1]])
        B = np.array([[3], [1]])
        X = solve_mod(A, B, 5)

        assert np.array_equal(matmul_mod(A, X, 5), B % 5)

    def test_solve_inconsistent(self):
        """Test an inconsistent system raises."""
        with pytest.raises(ValueError):
            solve_mod(np.array([[1, 1], [1, 1]]), np.array([[0], [1]]), 3)

    def test_inverse(self):
        """Test A·A^{-1} = I over F_10007."""
        A = np.array([[2, 3], [5, 7]])
        inverse = inv_mod_mat(A, 10007)

        assert np.array_equal(matmul_mod(A, inverse, 10007), np.eye(2, dtype=np.int64))

    def test_singular_inverse(self):
        """Test singular matrices have no inverse."""
        with pytest.raises(ValueError):
            inv_mod_mat(np.array([[1, 2], [2, 4]]), 5)


class TestSubspaces:
    """Test subspace helpers and enumeration."""

    def test_column_space_and_complement(self):
        """Test a basis plus its complement spans the space."""
        W = np.array([[1], [1], [0]])
        C = complement_basis(W, 3, 2)

        assert C.shape == (3, 2)
        assert rank_mod(np.concatenate([W, C], axis=1), 2) == 3
        assert column_space_mod(np.array([[1, 2], [1, 2]]), 3).shape == (2, 1)

    def test_subspace_sum_and_contains(self):
        """Test sums contain their parts."""
        U = np.array([[1], [0], [0]])
        V = np.array([[0], [1], [0]])
        S = subspace_sum([U, V], 3, 3)

        assert S.shape[1] == 2
        assert contains(S, U, 3)
        assert not contains(U, V, 3)

    def test_canonical_key(self):
        """Test different bases of one subspace share a key."""
        first = np.array([[1, 0], [0, 1], [1, 1]])
        second = np.array([[1, 1], [1, 0], [2, 1]])

        assert canonical_key(first, 3) == canonical_key(second, 3)

    def test_gaussian_binomial(self):
        """Test subspace counts of F_2^3 and F_3^2."""
        assert [gaussian_binomial(3, k, 2) for k in range(4)] == [1, 7, 7, 1]
        assert count_subspaces(2, 3) == 6

    @pytest.mark.parametrize("n,p", [(2, 2), (3, 2), (2, 5), (3, 3)])
    def test_iter_subspaces_counts(self, n, p):
        """Test enumeration visits every subspace exactly once."""
        keys = [canonical_key(U, p) for U in iter_subspaces(n, p)]

        assert len(keys) == count_subspaces(n, p)
        assert len(set(keys)) == len(keys)


class TestRandomness:
    """Test seeded sampling."""

    def test_streams_are_reproducible(self):
        """Test one seed and key give one stream."""
        first = make_rng(7, "component", 2).integers(0, 1000, size=5).tolist()
        second = make_rng(7, "component", 2).integers(0, 1000, size=5).tolist()

        assert first == second
        assert derive_seed(7, "a") == derive_seed(7, "a")
        assert derive_seed(7, "a") != derive_seed(7, "b")

    def test_random_of_rank(self):
        """Test sampled matrices have the requested rank."""
        rng = make_rng(0, "test")
        for rank in range(4):
            assert rank_mod(random_of_rank(rng, 3, 4, rank, 10007), 10007) == rank

    def test_impossible_rank(self):
        """Test an impossible rank exhausts the retries."""
        with pytest.raises(FieldTooSmall):
            random_of_rank(make_rng(0), 1, 1, 2, 2, retries=3)
