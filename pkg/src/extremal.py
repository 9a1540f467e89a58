"""
Extremal Hilbert Function Search

Samples reduced supports whose Hilbert function equals a fixed target,
doubles each one and compares the double schemes against a reference
configuration:

1. C_{t,r} for a generic target (1, 2, ..., t-1, r)
2. C_h for the Hilbert function of a 2-type vector

The reference is consistent when no sampled double scheme drops strictly
below it in any degree, i.e. when it attains the pointwise minimum.
"""

import logging
import random
from dataclasses import dataclass, field
from math import comb
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from config.settings import COORD_BOUND, RETRY_BUDGET
from src.configurations import (
    FREE,
    ConfigPoint,
    Configuration,
    ProjPoint,
    ch_config,
    ct_config,
    ctr_config,
    double,
    free_config,
    generic_pseudo_config,
    points_on_lines,
)
from src.errors import DegeneracyError, SamplingError, ValidationError
from src.oracle import HFRecord, hilbert_function
from src.typevec import OSequence, PseudoTypeVector, TypeVector2, ctr_delta_h, hf_from_type_vector
from src.workers import run_parallel

logger = logging.getLogger(__name__)

CONSISTENT = "consistent"
COUNTEREXAMPLE = "counterexample-found"

GENERIC_STRATEGIES = ("free", "arrangement", "conic", "lines")
TYPE_STRATEGIES = ("linear", "ch", "lines")
SAMPLING_STRATEGIES = ("free", "arrangement", "conic", "lines", "linear", "ch")


def generic_target(delta_h: Sequence[int]) -> Tuple[int, int]:
    """
    Read (t, r) off a generic support Δh (1, 2, ..., t-1, r).

    A full staircase (1, ..., k) is C_{k+1}, returned as (k + 1, 0).
    """
    values = tuple(delta_h)
    k = len(values)
    if not values or any(v != i + 1 for i, v in enumerate(values[:-1])) or not 1 <= values[-1] <= k:
        raise ValidationError(f"{values} is not a generic Hilbert function (1, 2, ..., t-1, r)")
    if values[-1] == k:
        return k + 1, 0
    return k, values[-1]


def pointwise_minimum(hfs: Sequence[HFRecord]) -> Tuple[int, ...]:
    """Degree-wise minimum of Hilbert functions, over the longest of them."""
    if not hfs:
        raise ValidationError("pointwise minimum of no Hilbert functions")
    length = max(len(hf.h) for hf in hfs)
    stacked = np.array([[hf.at(t) for t in range(length)] for hf in hfs], dtype=np.int64)
    return tuple(int(v) for v in stacked.min(axis=0))


def strictly_below_somewhere(candidate: HFRecord, reference: HFRecord) -> bool:
    length = max(len(candidate.h), len(reference.h))
    return any(candidate.at(t) < reference.at(t) for t in range(length))


@dataclass(frozen=True)
class SupportSample:
    seed: int
    strategy: str
    description: str
    support_delta_h: OSequence
    double_hf: HFRecord

    def to_dict(self) -> dict:
        return {
            "seed": self.seed,
            "strategy": self.strategy,
            "description": self.description,
            "support_delta_h": list(self.support_delta_h.values),
            "double_hf": self.double_hf.to_dict(),
        }


class SupportSampler:
    """Draws reduced supports with a fixed Δh, rejecting every candidate that misses it."""

    def __init__(
        self,
        target: OSequence,
        strategies: Sequence[str] = GENERIC_STRATEGIES,
        type_vector: Optional[TypeVector2] = None,
        mode: Optional[str] = None,
        primes: Optional[Sequence[int]] = None,
        retry_budget: int = RETRY_BUDGET,
    ):
        self.target = target
        self.n = target.total
        self.type_vector = type_vector
        self.mode = mode
        self.primes = primes
        self.retry_budget = retry_budget
        unknown = [s for s in strategies if s not in SAMPLING_STRATEGIES]
        if unknown or not strategies:
            raise ValidationError(f"unknown sampling strategies {unknown}")
        if type_vector is None and any(s in ("linear", "ch") for s in strategies):
            raise ValidationError("the linear and ch strategies need a type vector")
        self.strategies = tuple(strategies)

    def _free(self, seed: int) -> Configuration:
        return free_config(self.n, seed)

    def _arrangement(self, seed: int) -> Configuration:
        """n of the pairwise intersections of a line arrangement with a few spare points."""
        count = 2
        while comb(count, 2) < self.n:
            count += 1
        arrangement = ct_config(count + 1, seed)
        chosen = sorted(random.Random(f"arrangement:{seed}").sample(range(len(arrangement.points)), self.n))
        points = tuple(arrangement.points[i] for i in chosen)
        description = f"{self.n} of the C_{count + 1} points seed={seed}"
        return Configuration(points, arrangement.lines, FREE, description).validate()

    def _conic(self, seed: int) -> Configuration:
        """Up to six points [s^2 : s : 1] on the conic y^2 = xz, the rest free."""
        rng = random.Random(f"conic:{seed}")
        on_conic = rng.randint(min(self.n, 3), min(self.n, 6))
        params = rng.sample(range(-COORD_BOUND, COORD_BOUND + 1), on_conic)
        points = [ConfigPoint(ProjPoint.of(s * s, s, 1)) for s in params]
        if self.n > on_conic:
            taken = {cp.point for cp in points}
            extra = free_config(self.n - on_conic, seed).points
            if any(cp.point in taken for cp in extra):
                raise DegeneracyError("free point landed on the conic", seed=seed)
            points.extend(extra)
        description = f"{on_conic} conic + {self.n - on_conic} free points seed={seed}"
        return Configuration(tuple(points), (), FREE, description).validate()

    def _lines(self, seed: int) -> Configuration:
        rng = random.Random(f"lines:{seed}")
        count = rng.randint(2, max(2, self.target.sigma + 1))
        sizes = [0] * count
        for _ in range(self.n):
            sizes[rng.randrange(count)] += 1
        return points_on_lines([s for s in sizes if s], seed)

    def _linear(self, seed: int) -> Configuration:
        return generic_pseudo_config(PseudoTypeVector(self.type_vector.entries), seed, generic_lines=True)

    def _ch(self, seed: int) -> Configuration:
        return ch_config(self.type_vector, seed)

    def sample(self, seed: int) -> SupportSample:
        """
        One accepted support for this seed.

        The strategy rotates with the seed; attempt k of seed s builds its
        candidate from seed s * retry_budget + k.

        Raises:
            SamplingError: when the retry budget passes without a match
        """
        strategy = self.strategies[seed % len(self.strategies)]
        build: Callable[[int], Configuration] = getattr(self, f"_{strategy}")
        for attempt in range(self.retry_budget):
            attempt_seed = seed * self.retry_budget + attempt
            try:
                support = build(attempt_seed)
            except DegeneracyError as e:
                logger.debug(f"{strategy} candidate {attempt_seed} degenerate: {e}")
                continue
            support_hf = hilbert_function(support, self.mode, self.primes)
            if support_hf.delta_h != self.target:
                logger.debug(f"{support.description}: Δh={support_hf.delta_h} rejected")
                continue
            double_hf = hilbert_function(double(support), self.mode, self.primes)
            return SupportSample(seed, strategy, support.description, support_hf.delta_h, double_hf)
        raise SamplingError(
            f"no {strategy} support with Δh={self.target} within {self.retry_budget} attempts", seed=seed
        )


@dataclass
class ExtremalOutcome:
    target: OSequence
    reference: str
    reference_hf: HFRecord
    samples: List[SupportSample]
    minimum: Tuple[int, ...]
    counterexamples: List[SupportSample] = field(default_factory=list)
    failures: List[str] = field(default_factory=list)

    @property
    def reference_attains_minimum(self) -> bool:
        return tuple(self.reference_hf.at(t) for t in range(len(self.minimum))) == self.minimum

    @property
    def verdict(self) -> str:
        return CONSISTENT if not self.counterexamples else COUNTEREXAMPLE

    def to_dict(self) -> dict:
        return {
            "target_delta_h": list(self.target.values),
            "reference": self.reference,
            "reference_hf": self.reference_hf.to_dict(),
            "pointwise_minimum": list(self.minimum),
            "reference_attains_minimum": self.reference_attains_minimum,
            "samples": len(self.samples),
            "strategies": sorted({s.strategy for s in self.samples}),
            "counterexamples": [s.to_dict() for s in self.counterexamples],
            "failures": self.failures,
        }


def compare_against_reference(
    reference: Configuration,
    sampler: SupportSampler,
    trials: int,
    seed: int = 0,
    workers: Optional[int] = None,
) -> ExtremalOutcome:
    """
    Double the reference and `trials` sampled supports, then compare.

    Raises:
        DegeneracyError: if the reference support misses the target Δh
        SamplingError: if no trial produced a support
    """
    if trials < 1:
        raise ValidationError(f"trials must be positive, got {trials}")
    support_hf = hilbert_function(reference, sampler.mode, sampler.primes)
    if support_hf.delta_h != sampler.target:
        raise DegeneracyError(
            f"reference {reference.description} has Δh={support_hf.delta_h}, expected {sampler.target}", seed=seed
        )
    reference_hf = hilbert_function(double(reference), sampler.mode, sampler.primes)

    items = [((seed + k,), (seed + k,)) for k in range(trials)]
    results = run_parallel(sampler.sample, items, workers)
    samples = [r.value for r in results if r.ok]
    failures = [r.error for r in results if not r.ok]
    if not samples:
        raise SamplingError(f"none of {trials} trials produced a support with Δh={sampler.target}", seed=seed)
    if failures:
        logger.warning(f"{len(failures)} of {trials} trials failed to sample a support")

    minimum = pointwise_minimum([reference_hf] + [s.double_hf for s in samples])
    counterexamples = [s for s in samples if strictly_below_somewhere(s.double_hf, reference_hf)]
    for s in counterexamples:
        logger.info(f"double of {s.description} drops below {reference.description}: Δh={s.double_hf.delta_h}")
    return ExtremalOutcome(
        sampler.target, reference.description, reference_hf, samples, minimum, counterexamples, failures
    )


def generic_support_run(
    t: int,
    r: int,
    trials: int,
    seed: int = 0,
    mode: Optional[str] = None,
    primes: Optional[Sequence[int]] = None,
    workers: Optional[int] = None,
) -> ExtremalOutcome:
    """C_{t,r} against supports with Hilbert function (1, ..., t-1, r)."""
    target = ctr_delta_h(t, r)
    reference = ct_config(t, seed) if r == 0 else ctr_config(t, r, seed)
    sampler = SupportSampler(target, GENERIC_STRATEGIES, mode=mode, primes=primes)
    return compare_against_reference(reference, sampler, trials, seed, workers)


def type_support_run(
    T: TypeVector2,
    trials: int,
    seed: int = 0,
    mode: Optional[str] = None,
    primes: Optional[Sequence[int]] = None,
    workers: Optional[int] = None,
) -> ExtremalOutcome:
    """C_h against supports with the Hilbert function of type T."""
    target = hf_from_type_vector(T)
    sampler = SupportSampler(target, TYPE_STRATEGIES, type_vector=T, mode=mode, primes=primes)
    return compare_against_reference(ch_config(T, seed), sampler, trials, seed, workers)
