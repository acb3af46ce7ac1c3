"""
Exact dense linear algebra over a prime field F_p.

Matrices are numpy int64 arrays with entries in [0, p). Bases of subspaces
are stored as columns. Products stay well inside int64 for the primes this
toolkit uses (p ≤ 10007 and matrices of a few hundred rows).
"""

from itertools import combinations, product
from typing import Iterator, List, Tuple

import numpy as np

from core.errors import FieldTooSmall


def mod_p(A, p: int) -> np.ndarray:
    return np.asarray(A, dtype=np.int64) % p


def zeros(rows: int, cols: int) -> np.ndarray:
    return np.zeros((rows, cols), dtype=np.int64)


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def inv_mod_scalar(a, p: int) -> int:
    a = int(a) % p
    if a == 0:
        raise ZeroDivisionError("0 has no inverse mod p")
    return pow(a, p - 2, p)


def matmul_mod(A: np.ndarray, B: np.ndarray, p: int) -> np.ndarray:
    return (np.asarray(A, dtype=np.int64) @ np.asarray(B, dtype=np.int64)) % p


def rref_mod(A: np.ndarray, p: int) -> Tuple[np.ndarray, List[int]]:
    """RREF over GF(p). Returns (R, pivot_cols)."""
    R = mod_p(np.array(A, dtype=np.int64, copy=True), p)
    m, n = R.shape
    pivots: List[int] = []
    r = 0
    for c in range(n):
        if r == m:
            break
        nonzero = np.nonzero(R[r:, c])[0]
        if nonzero.size == 0:
            continue
        piv = r + int(nonzero[0])
        if piv != r:
            R[[r, piv]] = R[[piv, r]]
        R[r] = (R[r] * inv_mod_scalar(R[r, c], p)) % p
        column = R[:, c].copy()
        column[r] = 0
        R = (R - np.outer(column, R[r])) % p
        pivots.append(c)
        r += 1
    return R, pivots


def rank_mod(A: np.ndarray, p: int) -> int:
    A = np.asarray(A)
    if A.size == 0:
        return 0
    _, pivots = rref_mod(A, p)
    return len(pivots)


def nullspace_mod(A: np.ndarray, p: int) -> np.ndarray:
    """Right nullspace basis of A over GF(p); columns form a basis."""
    A = mod_p(A, p)
    n = A.shape[1]
    R, pivots = rref_mod(A, p)
    pivot_set = set(pivots)
    free = [j for j in range(n) if j not in pivot_set]
    basis = zeros(n, len(free))
    for k, f in enumerate(free):
        basis[f, k] = 1
        if pivots:
            basis[pivots, k] = (-R[:len(pivots), f]) % p
    return basis


def column_space_mod(A: np.ndarray, p: int) -> np.ndarray:
    """Basis (columns of A itself) of the column space of A."""
    A = mod_p(A, p)
    if A.shape[1] == 0:
        return zeros(A.shape[0], 0)
    _, pivots = rref_mod(A, p)
    return A[:, pivots]


def solve_mod(A: np.ndarray, B: np.ndarray, p: int) -> np.ndarray:
    """
    Solve A X = B over GF(p), free variables set to zero.

    Raises:
        ValueError: If the system is inconsistent
    """
    A = mod_p(A, p)
    B = mod_p(B, p)
    if B.ndim == 1:
        B = B.reshape(-1, 1)
    m, n = A.shape
    k = B.shape[1]
    R, pivots = rref_mod(np.concatenate([A, B], axis=1), p)
    if any(c >= n for c in pivots):
        raise ValueError("No solution to linear system over GF(p)")
    X = zeros(n, k)
    for row, c in enumerate(pivots):
        X[c] = R[row, n:]
    return X


def inv_mod_mat(A: np.ndarray, p: int) -> np.ndarray:
    """Gauss-Jordan inverse over GF(p). Raises if singular."""
    n = A.shape[0]
    R, pivots = rref_mod(np.concatenate([mod_p(A, p), identity(n)], axis=1), p)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise ValueError("Matrix not invertible mod p")
    return R[:, n:]


def is_invertible(A: np.ndarray, p: int) -> bool:
    return A.shape[0] == A.shape[1] and rank_mod(A, p) == A.shape[0]


def complement_basis(W: np.ndarray, n: int, p: int) -> np.ndarray:
    """Standard basis vectors extending the independent columns of W to a basis of F_p^n."""
    w = W.shape[1]
    _, pivots = rref_mod(np.concatenate([mod_p(W, p).reshape(n, w), identity(n)], axis=1), p)
    chosen = [c - w for c in pivots if c >= w]
    return identity(n)[:, chosen]


def subspace_sum(bases: List[np.ndarray], n: int, p: int) -> np.ndarray:
    """Independent basis of the sum of the column spaces."""
    if not bases:
        return zeros(n, 0)
    return column_space_mod(np.concatenate(bases, axis=1), p)


def canonical_key(U: np.ndarray, p: int) -> bytes:
    """Hashable key of the column space of U (RREF of its row form)."""
    n = U.shape[0]
    if U.shape[1] == 0:
        return b"%d:" % n
    R, pivots = rref_mod(U.T, p)
    return b"%d:" % n + R[:len(pivots)].tobytes()


def contains(U: np.ndarray, V: np.ndarray, p: int) -> bool:
    """True if the column space of V lies inside the column space of U."""
    if V.shape[1] == 0:
        return True
    return rank_mod(np.concatenate([U, V], axis=1), p) == rank_mod(U, p)


def gaussian_binomial(n: int, k: int, p: int) -> int:
    numerator = 1
    denominator = 1
    for i in range(k):
        numerator *= p ** (n - i) - 1
        denominator *= p ** (i + 1) - 1
    return numerator // denominator


def count_subspaces(n: int, p: int) -> int:
    return sum(gaussian_binomial(n, k, p) for k in range(n + 1))


def iter_subspaces(n: int, p: int) -> Iterator[np.ndarray]:
    """Every subspace of F_p^n exactly once, as an n × k column basis in RREF."""
    for k in range(n + 1):
        for pivots in combinations(range(n), k):
            pivot_set = set(pivots)
            slots = [(i, j) for i, c in enumerate(pivots)
                     for j in range(c + 1, n) if j not in pivot_set]
            for values in product(range(p), repeat=len(slots)):
                rows = zeros(k, n)
                for i, c in enumerate(pivots):
                    rows[i, c] = 1
                for (i, j), v in zip(slots, values):
                    rows[i, j] = v
                yield rows.T.copy()


def random_matrix(rng: np.random.Generator, rows: int, cols: int, p: int) -> np.ndarray:
    return rng.integers(0, p, size=(rows, cols), dtype=np.int64)


def random_of_rank(rng: np.random.Generator, rows: int, cols: int, rank: int, p: int,
                   retries: int = 100) -> np.ndarray:
    """Random rows × cols matrix of exactly the given rank, by rejection."""
    if rank == 0:
        return zeros(rows, cols)
    for _ in range(retries):
        candidate = matmul_mod(random_matrix(rng, rows, rank, p),
                               random_matrix(rng, rank, cols, p), p)
        if rank_mod(candidate, p) == rank:
            return candidate
    raise FieldTooSmall(
        f"Could not sample a rank-{rank} {rows}x{cols} matrix over F_{p} in {retries} tries"
    )


def random_invertible(rng: np.random.Generator, n: int, p: int, retries: int = 100) -> np.ndarray:
    return random_of_rank(rng, n, n, n, p, retries)
