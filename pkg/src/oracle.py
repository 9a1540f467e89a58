"""
Ground-truth Hilbert functions and Betti tables of explicit configurations.

The oracle never consults the predictors in src.typevec: it evaluates
monomials (or their first partials, for double points) at the points and
takes ranks.
"""

import logging
import time
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from math import comb
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from config.settings import ARITHMETIC_MODE, DUMP_DIR, DUMP_MATRICES, MODULAR_PRIME_COUNT, PRIME_BITS
from src.configurations import Configuration
from src.errors import InconsistencyError, OracleError, ValidationError
from src.linalg import (
    EXACT,
    MODULAR,
    check_mode,
    choose_primes,
    dump_matrix,
    kernel_exact,
    kernel_mod_p,
    rank,
    rank_mod_p,
    verify_kernel,
)
from src.typevec import BettiTable, OSequence, series_consistent

logger = logging.getLogger(__name__)

__all__ = [
    "ConditionMatrix",
    "HFRecord",
    "OracleResult",
    "monomials",
    "condition_matrix",
    "hilbert_function",
    "generator_degrees",
    "betti_table",
    "analyze",
    "rank",
]


@lru_cache(maxsize=None)
def monomials(d: int) -> Tuple[Tuple[int, int, int], ...]:
    """Exponent vectors of degree d in graded lex order, x > y > z."""
    return tuple((a, b, d - a - b) for a in range(d, -1, -1) for b in range(d - a, -1, -1))


@lru_cache(maxsize=None)
def _monomial_index(d: int) -> Dict[Tuple[int, int, int], int]:
    return {m: i for i, m in enumerate(monomials(d))}


@lru_cache(maxsize=None)
def _shift_columns(d: int) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Column of x*m, y*m, z*m in degree d+1 for each degree-d monomial m."""
    target = _monomial_index(d + 1)
    mons = monomials(d)
    return tuple(
        np.array([target[tuple(e + (1 if k == var else 0) for k, e in enumerate(m))] for m in mons], dtype=np.intp)
        for var in range(3)
    )


@dataclass(frozen=True)
class ConditionMatrix:
    """Linear conditions imposed on degree-d forms by the points of a configuration."""

    degree: int
    rows: np.ndarray = field(repr=False)
    simple_points: int = 0
    double_points: int = 0

    @property
    def shape(self) -> Tuple[int, int]:
        return self.rows.shape


def _powers(v: int, d: int) -> List[int]:
    out = [1]
    for _ in range(d):
        out.append(out[-1] * v)
    return out


def condition_matrix(config: Configuration, d: int) -> ConditionMatrix:
    """
    One row of monomial values per simple point; per double point the values
    of the three first partials. Degree 0 is not meaningful for double points
    and is handled by the callers.
    """
    if d < 1:
        raise ValidationError(f"condition matrices start at degree 1, got {d}")
    mons = monomials(d)
    rows: List[List[int]] = []
    simple = doubled = 0
    for cp in config.points:
        x, y, z = cp.point.integer_coords()
        px, py, pz = _powers(x, d), _powers(y, d), _powers(z, d)
        if cp.multiplicity == 1:
            simple += 1
            rows.append([px[a] * py[b] * pz[c] for a, b, c in mons])
            continue
        doubled += 1
        rows.append([a * px[a - 1] * py[b] * pz[c] if a else 0 for a, b, c in mons])
        rows.append([b * px[a] * py[b - 1] * pz[c] if b else 0 for a, b, c in mons])
        rows.append([c * px[a] * py[b] * pz[c - 1] if c else 0 for a, b, c in mons])
    matrix = np.empty((len(rows), len(mons)), dtype=object)
    for i, row in enumerate(rows):
        matrix[i, :] = row
    return ConditionMatrix(d, matrix, simple, doubled)


@dataclass(frozen=True)
class HFRecord:
    h: Tuple[int, ...]
    delta_h: OSequence
    alpha: int
    sigma: int
    regularity: int
    degree: int
    mode: str = EXACT

    def at(self, t: int) -> int:
        """h(t) for any t >= 0 (constant past sigma)."""
        if t < 0:
            return 0
        return self.h[t] if t < len(self.h) else self.degree

    def to_dict(self) -> dict:
        return {
            "h": list(self.h),
            "delta_h": list(self.delta_h.values),
            "alpha": self.alpha,
            "sigma": self.sigma,
            "regularity": self.regularity,
            "degree": self.degree,
            "mode": self.mode,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "HFRecord":
        return cls(
            h=tuple(data["h"]),
            delta_h=OSequence(tuple(data["delta_h"])),
            alpha=data["alpha"],
            sigma=data["sigma"],
            regularity=data["regularity"],
            degree=data["degree"],
            mode=data.get("mode", EXACT),
        )


@dataclass(frozen=True)
class OracleResult:
    hf: HFRecord
    betti: Optional[BettiTable]
    mode: str
    elapsed: float = 0.0

    def to_dict(self) -> dict:
        return {
            "hf": self.hf.to_dict(),
            "betti": self.betti.to_dict() if self.betti else None,
            "mode": self.mode,
        }


def _resolve(mode: Optional[str], primes: Optional[Sequence[int]]) -> Tuple[str, Tuple[int, ...]]:
    mode = check_mode(mode or ARITHMETIC_MODE)
    primes = tuple(primes) if primes else choose_primes(0, PRIME_BITS, MODULAR_PRIME_COUNT)
    return mode, primes


def _maybe_dump(matrix: ConditionMatrix, dump_dir: Optional[Path], tag: str) -> None:
    if dump_dir is None and not DUMP_MATRICES:
        return
    target = Path(dump_dir) if dump_dir is not None else DUMP_DIR
    dump_matrix(matrix.rows, target / f"{tag}_deg{matrix.degree}.txt")


def hilbert_function(
    config: Configuration,
    mode: Optional[str] = None,
    primes: Optional[Sequence[int]] = None,
    dump_dir: Optional[Path] = None,
) -> HFRecord:
    """
    h(d) = rank of the degree-d condition matrix, until h reaches the length.

    Args:
        config: valid, nonempty configuration
        mode: "exact" or "modular" (defaults to FPLAB_ARITHMETIC_MODE)
        primes: primes for the modular passes
        dump_dir: write each condition matrix here when given

    Returns:
        HFRecord with h(0..sigma)
    """
    mode, primes = _resolve(mode, primes)
    config.validate()
    degree = config.degree
    cap = degree + 1
    tag = config.kind.lower().replace(" ", "_")

    h = [1]
    d = 1
    while h[-1] < degree:
        if d > cap:
            logger.error(f"degree cap {cap} exceeded for {config.description}: h={h}")
            raise OracleError(f"Hilbert function did not reach length {degree} by degree {cap} (h={h})")
        matrix = condition_matrix(config, d)
        _maybe_dump(matrix, dump_dir, tag)
        value = rank(matrix.rows, mode, primes)
        if value < h[-1] or value > degree:
            raise OracleError(f"impossible value h({d})={value} after h({d - 1})={h[-1]} for length {degree}")
        h.append(value)
        logger.debug(f"{config.description}: h({d}) = {value}")
        d += 1
    h.append(degree)

    sigma = len(h) - 1
    delta_h = OSequence.from_array(np.diff(np.array(h, dtype=np.int64), prepend=0))
    alpha = next(t for t in range(sigma + 2) if (h[t] if t < len(h) else degree) < comb(t + 2, 2))
    if delta_h.total != degree:
        raise OracleError(f"Δh sums to {delta_h.total}, expected {degree}")
    return HFRecord(tuple(h), delta_h, alpha, sigma, sigma, degree, mode)


def _new_generators_exact(previous: np.ndarray, d: int, dim_now: int) -> int:
    kernel = kernel_exact(previous)
    verify_kernel(previous, kernel)
    return dim_now - rank(_shifted(kernel, d - 1), EXACT)


def _new_generators_mod_p(previous: np.ndarray, d: int, dim_now: int, dim_prev: int, p: int) -> Optional[int]:
    kernel = kernel_mod_p(previous, p)
    if kernel.shape[0] != dim_prev:
        return None
    return dim_now - rank_mod_p(_shifted(kernel, d - 1), p)


def _shifted(kernel: np.ndarray, e: int) -> np.ndarray:
    """Rows x*f, y*f, z*f for every kernel row f of degree e, in the degree e+1 basis."""
    k = kernel.shape[0]
    out = np.zeros((3 * k, len(monomials(e + 1))), dtype=object)
    for var, columns in enumerate(_shift_columns(e)):
        out[var * k:(var + 1) * k][:, columns] = kernel
    return out


def generator_degrees(
    config: Configuration,
    mode: Optional[str] = None,
    primes: Optional[Sequence[int]] = None,
    hf: Optional[HFRecord] = None,
) -> Tuple[int, ...]:
    """
    Degrees of minimal generators of the ideal of the configuration.

    beta_{1,d} = dim I_d - dim R_1 I_{d-1}, for alpha <= d <= regularity.
    """
    mode, primes = _resolve(mode, primes)
    hf = hf or hilbert_function(config, mode, primes)
    degrees: List[int] = []
    for d in range(hf.alpha, hf.regularity + 1):
        dim_now = comb(d + 2, 2) - hf.at(d)
        if dim_now == 0:
            continue
        dim_prev = comb(d + 1, 2) - hf.at(d - 1) if d >= 1 else 0
        if dim_prev == 0:
            degrees.extend([d] * dim_now)
            continue
        previous = condition_matrix(config, d - 1).rows
        if mode == EXACT:
            count = _new_generators_exact(previous, d, dim_now)
        else:
            counts = {_new_generators_mod_p(previous, d, dim_now, dim_prev, p) for p in primes}
            if len(counts) == 1 and None not in counts:
                count = counts.pop()
            else:
                logger.warning(f"modular generator counts disagree in degree {d} ({counts}), using exact kernel")
                count = _new_generators_exact(previous, d, dim_now)
        if count < 0:
            raise InconsistencyError(f"negative generator count {count} in degree {d}")
        degrees.extend([d] * count)
    return tuple(degrees)


def _betti_from_series(beta1: Sequence[int], hf: HFRecord) -> BettiTable:
    series = np.convolve(np.array([1, -2, 1], dtype=np.int64), hf.delta_h.as_array())
    counts = Counter(beta1)
    beta2: List[int] = []
    for j in range(1, max(len(series), max(beta1) + 1)):
        coefficient = int(series[j]) if j < len(series) else 0
        b2 = coefficient + counts.get(j, 0)
        if b2 < 0:
            raise InconsistencyError(f"negative beta2 coefficient {b2} in degree {j}")
        beta2.extend([j] * b2)
    if len(beta2) != len(beta1) - 1:
        raise InconsistencyError(f"|beta2|={len(beta2)} but |beta1|={len(beta1)}")
    try:
        return BettiTable(tuple(beta1), tuple(beta2))
    except ValidationError as e:
        raise InconsistencyError(f"oracle Betti data violates table invariants: {e}") from e


def betti_table(
    config: Configuration,
    mode: Optional[str] = None,
    primes: Optional[Sequence[int]] = None,
    hf: Optional[HFRecord] = None,
) -> BettiTable:
    """Generator degrees from ranks, syzygy degrees from the Hilbert series."""
    mode, primes = _resolve(mode, primes)
    hf = hf or hilbert_function(config, mode, primes)
    beta1 = generator_degrees(config, mode, primes, hf)
    try:
        table = _betti_from_series(beta1, hf)
    except InconsistencyError:
        if mode != MODULAR:
            raise
        logger.warning(f"modular Betti data inconsistent for {config.description}, escalating to exact mode")
        hf = hilbert_function(config, EXACT, primes)
        table = _betti_from_series(generator_degrees(config, EXACT, primes, hf), hf)
    if not series_consistent(table, hf.delta_h):
        raise InconsistencyError(f"Hilbert-series identity fails for {config.description}")
    return table


def analyze(
    config: Configuration,
    mode: Optional[str] = None,
    primes: Optional[Sequence[int]] = None,
    with_betti: bool = True,
    dump_dir: Optional[Path] = None,
) -> OracleResult:
    mode, primes = _resolve(mode, primes)
    start = time.perf_counter()
    hf = hilbert_function(config, mode, primes, dump_dir)
    betti = betti_table(config, mode, primes, hf) if with_betti else None
    elapsed = time.perf_counter() - start
    logger.info(f"oracle[{mode}] {config.description}: Δh={hf.delta_h} in {elapsed:.2f}s")
    return OracleResult(hf, betti, mode, elapsed)
