"""
Rank and kernel computations over Q (fraction-free) and over prime fields.

Matrices are numpy object arrays of Python ints so that entries never
overflow; rational input is cleared of denominators row by row first.
"""

import logging
import math
import random
from fractions import Fraction
from functools import reduce
from pathlib import Path
from typing import List, Optional, Sequence, Tuple

import numpy as np
from sympy import prevprime

from src.errors import InconsistencyError, ValidationError

logger = logging.getLogger(__name__)

EXACT = "exact"
MODULAR = "modular"
MODES = (EXACT, MODULAR)


def check_mode(mode: str) -> str:
    if mode not in MODES:
        raise ValidationError(f"arithmetic mode must be one of {MODES}, got {mode!r}")
    return mode


def choose_primes(seed: int = 0, bits: int = 62, count: int = 2) -> Tuple[int, ...]:
    """Distinct primes just below 2**bits, drawn from a local seeded stream."""
    rng = random.Random(f"primes:{seed}:{bits}")
    primes: List[int] = []
    while len(primes) < count:
        candidate = prevprime(rng.randrange(2 ** (bits - 1), 2 ** bits))
        if candidate not in primes:
            primes.append(candidate)
    return tuple(primes)


def as_integer_matrix(matrix) -> np.ndarray:
    """Object array of ints; rows holding Fractions are scaled by the lcm of their denominators."""
    if isinstance(matrix, np.ndarray) and matrix.dtype == object and matrix.ndim == 2:
        if all(type(v) is int for v in matrix.flat):
            return matrix
        rows = matrix.tolist()
    else:
        rows = [list(row) for row in matrix]
    if not rows:
        return np.zeros((0, 0), dtype=object)
    width = len(rows[0])
    out = np.empty((len(rows), width), dtype=object)
    for i, row in enumerate(rows):
        if len(row) != width:
            raise ValidationError(f"ragged matrix: row {i} has {len(row)} entries, expected {width}")
        values = [Fraction(v) for v in row]
        scale = reduce(math.lcm, (v.denominator for v in values), 1)
        out[i, :] = [int(v * scale) for v in values]
    return out


def rank_exact(matrix) -> int:
    """Bareiss fraction-free elimination; every division is exact."""
    A = as_integer_matrix(matrix).copy()
    n_rows, n_cols = A.shape
    rank = 0
    previous = 1
    for col in range(n_cols):
        if rank == n_rows:
            break
        nonzero = np.flatnonzero(A[rank:, col] != 0)
        if nonzero.size == 0:
            continue
        pivot_row = rank + int(nonzero[0])
        if pivot_row != rank:
            A[[rank, pivot_row]] = A[[pivot_row, rank]]
        pivot = A[rank, col]
        below = A[rank + 1:]
        if below.shape[0]:
            A[rank + 1:] = (pivot * below - np.outer(below[:, col], A[rank])) // previous
        previous = pivot
        rank += 1
    return rank


def rref_mod_p(matrix, p: int) -> Tuple[np.ndarray, List[int]]:
    """Reduced row echelon form over F_p and its pivot columns."""
    A = as_integer_matrix(matrix) % p
    n_rows, n_cols = A.shape
    pivots: List[int] = []
    rank = 0
    for col in range(n_cols):
        if rank == n_rows:
            break
        nonzero = np.flatnonzero(A[rank:, col] != 0)
        if nonzero.size == 0:
            continue
        pivot_row = rank + int(nonzero[0])
        if pivot_row != rank:
            A[[rank, pivot_row]] = A[[pivot_row, rank]]
        inv = pow(int(A[rank, col]), -1, p)
        A[rank] = (A[rank] * inv) % p
        others = np.flatnonzero(A[:, col] != 0)
        others = others[others != rank]
        if others.size:
            A[others] = (A[others] - np.outer(A[others, col], A[rank])) % p
        pivots.append(col)
        rank += 1
    return A[:rank], pivots


def rank_mod_p(matrix, p: int) -> int:
    A = as_integer_matrix(matrix) % p
    n_rows, n_cols = A.shape
    rank = 0
    for col in range(n_cols):
        if rank == n_rows:
            break
        nonzero = np.flatnonzero(A[rank:, col] != 0)
        if nonzero.size == 0:
            continue
        pivot_row = rank + int(nonzero[0])
        if pivot_row != rank:
            A[[rank, pivot_row]] = A[[pivot_row, rank]]
        inv = pow(int(A[rank, col]), -1, p)
        A[rank] = (A[rank] * inv) % p
        below = np.flatnonzero(A[rank + 1:, col] != 0) + rank + 1
        if below.size:
            A[below] = (A[below] - np.outer(A[below, col], A[rank])) % p
        rank += 1
    return rank


def rank(matrix, mode: str = EXACT, primes: Sequence[int] = ()) -> int:
    """
    Rank of an integer or rational matrix.

    Exact mode first tries one prime: rank mod p never exceeds the rank over
    Q, so a full-rank answer mod p is already certified. Otherwise it runs
    Bareiss. Modular mode accepts the common value of all primes and falls
    back to Bareiss when they disagree.

    Args:
        matrix: rows of ints or Fractions (or an object ndarray)
        mode: "exact" or "modular"
        primes: primes for the modular passes; chosen from seed 0 when empty

    Returns:
        int rank
    """
    check_mode(mode)
    A = as_integer_matrix(matrix)
    if A.size == 0:
        return 0
    primes = tuple(primes) or choose_primes()
    full = min(A.shape)

    if mode == EXACT:
        if rank_mod_p(A, primes[0]) == full:
            return full
        return rank_exact(A)

    ranks = {rank_mod_p(A, p) for p in primes}
    if len(ranks) == 1:
        return ranks.pop()
    logger.warning(f"modular ranks disagree ({sorted(ranks)}) on a {A.shape[0]}x{A.shape[1]} matrix, using exact elimination")
    return rank_exact(A)


def _primitive(vector: np.ndarray) -> np.ndarray:
    g = reduce(math.gcd, (int(v) for v in vector), 0)
    if g > 1:
        vector = vector // g
    return vector


def kernel_exact(matrix) -> np.ndarray:
    """
    Integer basis of the right kernel, one primitive vector per row.

    Fraction-free Gauss-Jordan: each elimination step cross-multiplies and
    then divides the row by its content.
    """
    A = as_integer_matrix(matrix).copy()
    n_rows, n_cols = A.shape
    pivots: List[int] = []
    rank = 0
    for col in range(n_cols):
        if rank == n_rows:
            break
        nonzero = np.flatnonzero(A[rank:, col] != 0)
        if nonzero.size == 0:
            continue
        pivot_row = rank + int(nonzero[0])
        if pivot_row != rank:
            A[[rank, pivot_row]] = A[[pivot_row, rank]]
        A[rank] = _primitive(A[rank])
        pivot = A[rank, col]
        for i in np.flatnonzero(A[:, col] != 0):
            if i == rank:
                continue
            A[i] = _primitive(pivot * A[i] - A[i, col] * A[rank])
        pivots.append(col)
        rank += 1

    free = [c for c in range(n_cols) if c not in set(pivots)]
    basis = np.zeros((len(free), n_cols), dtype=object)
    for k, f in enumerate(free):
        involved = [i for i in range(rank) if A[i, f] != 0]
        scale = reduce(math.lcm, (int(A[i, pivots[i]]) for i in involved), 1)
        basis[k, f] = scale
        for i in involved:
            basis[k, pivots[i]] = -int(A[i, f]) * (scale // int(A[i, pivots[i]]))
        basis[k] = _primitive(basis[k])
    return basis


def kernel_mod_p(matrix, p: int) -> np.ndarray:
    """Basis of the right kernel over F_p, entries in [0, p)."""
    R, pivots = rref_mod_p(matrix, p)
    n_cols = as_integer_matrix(matrix).shape[1]
    free = [c for c in range(n_cols) if c not in set(pivots)]
    basis = np.zeros((len(free), n_cols), dtype=object)
    for k, f in enumerate(free):
        basis[k, f] = 1
        for i, c in enumerate(pivots):
            basis[k, c] = (-R[i, f]) % p
    return basis


def verify_kernel(matrix, basis: np.ndarray, p: Optional[int] = None) -> None:
    """Raise if some basis vector is not annihilated (mod p when given)."""
    A = as_integer_matrix(matrix)
    if basis.size == 0 or A.size == 0:
        return
    product = A.dot(basis.T)
    if p is not None:
        product = product % p
    if np.any(product != 0):
        raise InconsistencyError("kernel basis does not annihilate the matrix")


def format_matrix(matrix) -> str:
    """One row per line, entries as num/den separated by single spaces."""
    lines = []
    for row in (matrix.tolist() if isinstance(matrix, np.ndarray) else matrix):
        cells = []
        for v in row:
            q = Fraction(v)
            cells.append(f"{q.numerator}/{q.denominator}")
        lines.append(" ".join(cells))
    return "\n".join(lines) + ("\n" if lines else "")


def dump_matrix(matrix, path: Path) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(format_matrix(matrix))
    logger.debug(f"wrote matrix dump {path}")
