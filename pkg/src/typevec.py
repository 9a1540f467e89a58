"""
Combinatorial predictors for reduced and double point schemes in P2.

Type vectors, pseudo type vectors, standard O-sequences and the numeric
basic-double-link recursions on Hilbert functions and Betti numbers.
Everything here is a pure function on frozen values.
"""

import itertools
import logging
import re
from dataclasses import dataclass
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

import numpy as np

from src.errors import InconsistencyError, NotAnHVectorError, UnsupportedError, ValidationError

logger = logging.getLogger(__name__)

# Bad-list pattern 1,0,(2,0)*,1 over symbolized difference vectors
_BAD_LIST_PATTERN = re.compile(r"10(?:20)*1")
_ZERO_RUN_SUFFIX = re.compile(r"01*$")

# Double schemes supported on C_{t,r}: first differences for 0 < r < t
_ZTR_TABLE: Dict[Tuple[int, int], Tuple[int, ...]] = {
    (4, 1): (1, 2, 3, 4, 5, 4, 1, 1),
    (4, 2): (1, 2, 3, 4, 5, 5, 2, 2),
    (4, 3): (1, 2, 3, 4, 5, 5, 4, 3),
    (5, 1): (1, 2, 3, 4, 5, 6, 5, 5, 1, 1),
    (5, 2): (1, 2, 3, 4, 5, 6, 6, 5, 2, 2),
    (5, 3): (1, 2, 3, 4, 5, 6, 6, 6, 3, 3),
    (5, 4): (1, 2, 3, 4, 5, 6, 6, 6, 5, 4),
}


def _as_int_tuple(values: Iterable, name: str) -> Tuple[int, ...]:
    if isinstance(values, str):
        raise ValidationError(f"{name} must be a sequence of integers, got a string")
    try:
        out = tuple(int(v) for v in values)
    except (TypeError, ValueError) as e:
        raise ValidationError(f"{name} must be a sequence of integers: {e}") from e
    return out


def parse_vector(text: str) -> Tuple[int, ...]:
    """Parse "2,4,5" (brackets and blanks tolerated) into an integer tuple."""
    cleaned = text.strip().strip("()[]")
    if not cleaned:
        raise ValidationError("empty vector")
    try:
        return tuple(int(part) for part in cleaned.split(","))
    except ValueError as e:
        raise ValidationError(f"malformed vector {text!r}: {e}") from e


def _fmt(values: Sequence[int]) -> str:
    return "(" + ",".join(str(v) for v in values) + ")"


# ============================================================================
# Value types
# ============================================================================

@dataclass(frozen=True)
class TypeVector2:
    """Strictly increasing positive vector (d_1 < ... < d_r)."""

    entries: Tuple[int, ...]

    def __post_init__(self):
        entries = _as_int_tuple(self.entries, "type vector")
        object.__setattr__(self, "entries", entries)
        if not entries:
            raise ValidationError("type vector must have at least one entry")
        if entries[0] < 1:
            raise ValidationError(f"type vector entries must be positive: {_fmt(entries)}")
        for a, b in zip(entries, entries[1:]):
            if a >= b:
                raise ValidationError(f"type vector must be strictly increasing: {_fmt(entries)}")

    @classmethod
    def parse(cls, text: str) -> "TypeVector2":
        return cls(parse_vector(text))

    @property
    def r(self) -> int:
        return len(self.entries)

    @property
    def alpha(self) -> int:
        return len(self.entries)

    @property
    def sigma(self) -> int:
        return self.entries[-1]

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[int]:
        return iter(self.entries)

    def __str__(self) -> str:
        return _fmt(self.entries)


@dataclass(frozen=True)
class PseudoTypeVector:
    """Weakly increasing positive vector in which no value occurs three times."""

    entries: Tuple[int, ...]

    def __post_init__(self):
        entries = _as_int_tuple(self.entries, "pseudo type vector")
        object.__setattr__(self, "entries", entries)
        if not entries:
            raise ValidationError("pseudo type vector must have at least one entry")
        if entries[0] < 1:
            raise ValidationError(f"pseudo type vector entries must be positive: {_fmt(entries)}")
        for a, b in zip(entries, entries[1:]):
            if a > b:
                raise ValidationError(f"pseudo type vector must be weakly increasing: {_fmt(entries)}")
        for a, b, c in zip(entries, entries[1:], entries[2:]):
            if a == b == c:
                raise ValidationError(f"value {a} occurs three times in {_fmt(entries)}")

    @classmethod
    def parse(cls, text: str) -> "PseudoTypeVector":
        return cls(parse_vector(text))

    @property
    def p(self) -> int:
        return len(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[int]:
        return iter(self.entries)

    def __str__(self) -> str:
        return _fmt(self.entries)


@dataclass(frozen=True)
class DiffVector:
    """First difference of a pseudo type vector, with m_0 = 0."""

    entries: Tuple[int, ...]

    def __post_init__(self):
        entries = _as_int_tuple(self.entries, "difference vector")
        object.__setattr__(self, "entries", entries)
        if not entries or entries[0] < 1:
            raise ValidationError(f"difference vector must start with a positive entry: {_fmt(entries)}")
        if any(v < 0 for v in entries):
            raise ValidationError(f"difference vector entries must be nonnegative: {_fmt(entries)}")
        for a, b in zip(entries, entries[1:]):
            if a == 0 and b == 0:
                raise ValidationError(f"difference vector has two consecutive zeros: {_fmt(entries)}")

    def symbols(self) -> str:
        """One character per entry: '0', '1', '2', or 'x' for anything larger."""
        return "".join(str(v) if v <= 2 else "x" for v in self.entries)

    def __iter__(self) -> Iterator[int]:
        return iter(self.entries)

    def __str__(self) -> str:
        return _fmt(self.entries)


@dataclass(frozen=True)
class OSequence:
    """Finitely supported nonnegative sequence indexed from degree 0."""

    values: Tuple[int, ...]

    def __post_init__(self):
        values = list(_as_int_tuple(self.values, "O-sequence"))
        if any(v < 0 for v in values):
            raise ValidationError(f"O-sequence entries must be nonnegative: {_fmt(values)}")
        while values and values[-1] == 0:
            values.pop()
        object.__setattr__(self, "values", tuple(values))

    @classmethod
    def from_array(cls, arr: np.ndarray) -> "OSequence":
        return cls(tuple(int(v) for v in arr))

    def __getitem__(self, degree: int) -> int:
        if degree < 0 or degree >= len(self.values):
            return 0
        return self.values[degree]

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self) -> Iterator[int]:
        return iter(self.values)

    @property
    def total(self) -> int:
        return sum(self.values)

    @property
    def sigma(self) -> int:
        """Index after the last nonzero entry."""
        return len(self.values)

    @property
    def alpha(self) -> int:
        """Least t with values[t] < t + 1."""
        for t in range(len(self.values) + 1):
            if self[t] < t + 1:
                return t
        return len(self.values)

    def as_array(self, length: Optional[int] = None) -> np.ndarray:
        n = len(self.values) if length is None else max(length, len(self.values))
        arr = np.zeros(n, dtype=np.int64)
        arr[:len(self.values)] = self.values
        return arr

    def hilbert_function(self, upto: Optional[int] = None) -> Tuple[int, ...]:
        """Partial sums h(0..upto); defaults to degree sigma, where h has stabilized."""
        upto = self.sigma if upto is None else upto
        return tuple(int(v) for v in np.cumsum(self.as_array(upto + 1))[:upto + 1])

    def is_point_sequence(self) -> bool:
        """Δh(0)=1, Δh(t)=t+1 below alpha, and non-increasing from alpha on."""
        if not self.values or self.values[0] != 1:
            return False
        a = self.alpha
        if any(self[t] != t + 1 for t in range(a)):
            return False
        tail = self.values[a:]
        return all(x >= y for x, y in zip(tail, tail[1:]))

    def __str__(self) -> str:
        return _fmt(self.values)


@dataclass(frozen=True)
class BettiTable:
    """Degrees of minimal generators (beta1) and first syzygies (beta2) of a height-2 ideal."""

    beta1: Tuple[int, ...]
    beta2: Tuple[int, ...]

    def __post_init__(self):
        beta1 = tuple(sorted(_as_int_tuple(self.beta1, "beta1")))
        beta2 = tuple(sorted(_as_int_tuple(self.beta2, "beta2")))
        object.__setattr__(self, "beta1", beta1)
        object.__setattr__(self, "beta2", beta2)
        if len(beta1) < 2 or len(beta1) != len(beta2) + 1:
            raise ValidationError(
                f"Betti table needs |beta1| = |beta2| + 1 >= 2, got {len(beta1)} and {len(beta2)}"
            )
        if beta1[0] < 1:
            raise ValidationError(f"generator degrees must be positive: {_fmt(beta1)}")
        if beta2[0] <= beta1[0]:
            raise ValidationError(f"min(beta2)={beta2[0]} must exceed min(beta1)={beta1[0]}")

    def graded(self) -> Dict[int, Tuple[int, int]]:
        """degree -> (beta1 count, beta2 count)."""
        out: Dict[int, Tuple[int, int]] = {}
        for j in sorted(set(self.beta1) | set(self.beta2)):
            out[j] = (self.beta1.count(j), self.beta2.count(j))
        return out

    def series_numerator(self) -> np.ndarray:
        """Coefficients of 1 - sum t^beta1 + sum t^beta2."""
        top = max(self.beta1[-1], self.beta2[-1])
        coeffs = np.zeros(top + 1, dtype=np.int64)
        coeffs[0] = 1
        np.subtract.at(coeffs, list(self.beta1), 1)
        np.add.at(coeffs, list(self.beta2), 1)
        return coeffs

    def to_dict(self) -> dict:
        return {"beta1": list(self.beta1), "beta2": list(self.beta2)}

    @classmethod
    def from_dict(cls, data: dict) -> "BettiTable":
        return cls(tuple(data["beta1"]), tuple(data["beta2"]))

    def __str__(self) -> str:
        return f"beta1={{{','.join(map(str, self.beta1))}}} beta2={{{','.join(map(str, self.beta2))}}}"


def series_consistent(betti: BettiTable, delta_h: OSequence) -> bool:
    """Check 1 - Σt^β1 + Σt^β2 == (1-t)^2 · Σ Δh(d) t^d exactly."""
    lhs = np.trim_zeros(betti.series_numerator(), "b")
    rhs = np.trim_zeros(np.convolve(np.array([1, -2, 1], dtype=np.int64), delta_h.as_array()), "b")
    return lhs.shape == rhs.shape and bool(np.all(lhs == rhs))


@dataclass(frozen=True)
class PseudoPrediction:
    pseudo_type: PseudoTypeVector
    hf_unique: bool
    delta_h: OSequence
    regularity: Optional[int] = None
    betti_unique: Optional[bool] = None
    betti: Optional[BettiTable] = None
    min_gen_count: Optional[int] = None
    note: str = ""

    def to_dict(self) -> dict:
        return {
            "kind": "pseudo",
            "pseudo_type": list(self.pseudo_type.entries),
            "hf_unique": self.hf_unique,
            "delta_h": list(self.delta_h.values),
            "regularity": self.regularity,
            "betti_unique": self.betti_unique,
            "betti": self.betti.to_dict() if self.betti else None,
            "min_gen_count": self.min_gen_count,
            "note": self.note,
        }


@dataclass(frozen=True)
class DoubleSchemeClassification:
    type_vector: TypeVector2
    pseudo_type: PseudoTypeVector
    hf_unique: bool
    betti_unique: bool
    predicted_delta_h: OSequence
    regularity: int
    predicted_betti: Optional[BettiTable] = None

    def __post_init__(self):
        if self.betti_unique and not self.hf_unique:
            raise InconsistencyError("betti_unique requires hf_unique")
        if (self.predicted_betti is not None) != self.betti_unique:
            raise InconsistencyError("predicted_betti must be present exactly when betti_unique")

    def to_dict(self) -> dict:
        return {
            "kind": "double",
            "type_vector": list(self.type_vector.entries),
            "pseudo_type": list(self.pseudo_type.entries),
            "hf_unique": self.hf_unique,
            "betti_unique": self.betti_unique,
            "delta_h": list(self.predicted_delta_h.values),
            "regularity": self.regularity,
            "betti": self.predicted_betti.to_dict() if self.predicted_betti else None,
        }


# ============================================================================
# Reduced points: type vector <-> Hilbert function
# ============================================================================

def hf_from_type_vector(T: TypeVector2) -> OSequence:
    """
    First difference of the Hilbert function of points of type T.

    Row i (of d_i points) contributes an indicator of length d_i shifted
    right by r - i.

    Args:
        T: 2-type vector

    Returns:
        OSequence Δh with sum(Δh) = sum(T)
    """
    if not isinstance(T, TypeVector2):
        T = TypeVector2(tuple(T))
    r = T.r
    acc = np.zeros(T.sigma, dtype=np.int64)
    for i, d in enumerate(T.entries, start=1):
        shift = r - i
        acc[shift:shift + d] += 1
    return OSequence.from_array(acc)


def type_vector_from_hf(delta_h: Union[OSequence, Sequence[int]]) -> TypeVector2:
    """
    Recover the 2-type vector whose Hilbert function has first difference delta_h.

    Raises:
        NotAnHVectorError: if the peeling goes negative or yields a non-type vector
    """
    if not isinstance(delta_h, OSequence):
        delta_h = OSequence(tuple(delta_h))
    if not delta_h.values or delta_h.values[0] != 1:
        raise NotAnHVectorError(f"{delta_h} does not start with 1")

    r = delta_h.alpha
    current = delta_h.as_array()
    rows: List[int] = []
    for _ in range(r):
        current = np.trim_zeros(current, "b")
        if current.size == 0:
            raise NotAnHVectorError(f"{delta_h} runs out before {r} rows were peeled")
        d = int(current.size)
        current = current - 1
        if (current < 0).any() or current[0] != 0:
            raise NotAnHVectorError(f"{delta_h} is not realizable by points in P2")
        rows.append(d)
        current = current[1:]
    if np.trim_zeros(current, "b").size:
        raise NotAnHVectorError(f"{delta_h} leaves a remainder after {r} rows")

    try:
        T = TypeVector2(tuple(reversed(rows)))
    except ValidationError as e:
        raise NotAnHVectorError(f"{delta_h} peels to {_fmt(rows[::-1])}: {e}") from e
    if hf_from_type_vector(T) != delta_h:
        raise NotAnHVectorError(f"{delta_h} is not the first difference of a points-in-P2 Hilbert function")
    return T


def enumerate_type_vectors(max_sigma: int) -> List[TypeVector2]:
    """All 2-type vectors with last entry <= max_sigma, by length then lexicographically."""
    out: List[TypeVector2] = []
    for length in range(1, max_sigma + 1):
        for combo in itertools.combinations(range(1, max_sigma + 1), length):
            out.append(TypeVector2(combo))
    return out


# ============================================================================
# Pseudo type vectors: conditions and standard O-sequence
# ============================================================================

def first_difference(T: PseudoTypeVector) -> DiffVector:
    if not isinstance(T, PseudoTypeVector):
        T = PseudoTypeVector(tuple(T))
    diffs = np.diff(np.array(T.entries, dtype=np.int64), prepend=0)
    return DiffVector(tuple(int(v) for v in diffs))


def _diff_entries(d: Union[DiffVector, Sequence[int]]) -> Tuple[int, ...]:
    return d.entries if isinstance(d, DiffVector) else DiffVector(tuple(d)).entries


def condition_holds(d: Union[DiffVector, Sequence[int]]) -> bool:
    """True iff between any two zero entries there is an entry greater than 1."""
    entries = _diff_entries(d)
    zeros = [i for i, v in enumerate(entries) if v == 0]
    for left, right in zip(zeros, zeros[1:]):
        if all(v == 1 for v in entries[left + 1:right]):
            return False
    return True


def bad_list_hit(d: Union[DiffVector, Sequence[int]]) -> bool:
    """True iff d contains a contiguous 1,0,1 / 1,0,2,0,1 / 1,0,2,0,2,0,1 / ... segment."""
    vec = d if isinstance(d, DiffVector) else DiffVector(tuple(d))
    return _BAD_LIST_PATTERN.search(vec.symbols()) is not None


def _ci_profile(d1: int, d2: int) -> np.ndarray:
    """Δh of a complete intersection of type (d1, d2) for d2 in {1, 2}."""
    if d2 == 1:
        return np.ones(d1, dtype=np.int64)
    profile = np.full(d1 + 1, 2, dtype=np.int64)
    profile[0] = profile[-1] = 1
    return profile


def standard_osequence(T: PseudoTypeVector) -> OSequence:
    """
    Shifted sum of the s_i sequences of a pseudo type vector.

    With m_0 = 0 and m_{p+1} = infinity, s_i is a run of m_i ones when
    m_{i-1} < m_i < m_{i+1}, the profile 1,2,...,2,1 of length m_i + 1 when
    m_{i-1} = m_i < m_{i+1}, and is skipped when m_{i-1} < m_i = m_{i+1}.
    Each s_i is shifted right by p - i.
    """
    if not isinstance(T, PseudoTypeVector):
        T = PseudoTypeVector(tuple(T))
    m = T.entries
    p = T.p
    acc = np.zeros(m[-1] + p + 1, dtype=np.int64)
    for i in range(1, p + 1):
        cur = m[i - 1]
        prev = m[i - 2] if i > 1 else 0
        nxt = m[i] if i < p else None
        if nxt is not None and cur == nxt:
            continue
        profile = _ci_profile(cur, 2) if prev == cur else _ci_profile(cur, 1)
        shift = p - i
        acc[shift:shift + profile.size] += profile
    out = OSequence.from_array(acc)
    if out.total != sum(m):
        raise InconsistencyError(f"standard O-sequence of {T} has total {out.total}, expected {sum(m)}")
    return out


# ============================================================================
# Basic double links (numeric)
# ============================================================================

def bdl_hf_step(delta_h_X: Union[OSequence, Sequence[int]], d1: int, d2: int) -> OSequence:
    """Δh_Z(t) = Δh_CI(d1,d2)(t) + Δh_X(t - d2)."""
    if d2 not in (1, 2):
        raise UnsupportedError(f"only linear or quadric G are supported, got deg G = {d2}")
    if d1 < 1:
        raise ValidationError(f"deg F must be positive, got {d1}")
    if not isinstance(delta_h_X, OSequence):
        delta_h_X = OSequence(tuple(delta_h_X))
    ci = _ci_profile(d1, d2)
    x = delta_h_X.as_array()
    acc = np.zeros(max(ci.size, x.size + d2), dtype=np.int64)
    acc[:ci.size] += ci
    acc[d2:d2 + x.size] += x
    return OSequence.from_array(acc)


def _complete_intersection_betti(d1: int, d2: int) -> BettiTable:
    return BettiTable((d1, d2), (d1 + d2,))


def bdl_betti_step(b: BettiTable, d1: int, d2: int, f_is_minimal_generator: bool = False) -> BettiTable:
    """
    Mapping-cone update of a Betti table under a basic double link.

    Without a split: beta1' = (beta1 + d2) + {d1}, beta2' = (beta2 + d2) + {d1 + d2}.
    With a split one copy of d1 + d2 cancels from both.
    """
    if d2 not in (1, 2):
        raise UnsupportedError(f"only linear or quadric G are supported, got deg G = {d2}")
    beta1 = [x + d2 for x in b.beta1] + [d1]
    beta2 = [x + d2 for x in b.beta2] + [d1 + d2]
    if f_is_minimal_generator:
        target = d1 + d2
        if target not in beta1:
            raise InconsistencyError(f"cannot split: degree {target} absent from shifted generators {sorted(beta1)}")
        beta1.remove(target)
        beta2.remove(target)
    return BettiTable(tuple(beta1), tuple(beta2))


def bdl_steps(T: PseudoTypeVector) -> List[Tuple[int, int]]:
    """(deg F, deg G) per link: a quadric step for each adjacent equal pair, a linear step otherwise."""
    if not isinstance(T, PseudoTypeVector):
        T = PseudoTypeVector(tuple(T))
    m = T.entries
    steps: List[Tuple[int, int]] = []
    i = 0
    while i < len(m):
        if i + 1 < len(m) and m[i] == m[i + 1]:
            steps.append((m[i], 2))
            i += 2
        else:
            steps.append((m[i], 1))
            i += 1
    return steps


def bdl_run(T: PseudoTypeVector, splits: Iterable[int] = ()) -> Tuple[OSequence, BettiTable]:
    """
    Iterate the links of T from the empty scheme.

    Args:
        T: pseudo type vector
        splits: indices into bdl_steps(T) (>= 1) at which F is a minimal generator

    Returns:
        (Δh, BettiTable) of the resulting scheme
    """
    steps = bdl_steps(T)
    split_at = set(splits)
    if 0 in split_at or any(s >= len(steps) or s < 0 for s in split_at):
        raise ValidationError(f"split indices must lie in 1..{len(steps) - 1}, got {sorted(split_at)}")

    d1, d2 = steps[0]
    delta_h = bdl_hf_step(OSequence(()), d1, d2)
    betti = _complete_intersection_betti(d1, d2)
    for index, (d1, d2) in enumerate(steps[1:], start=1):
        delta_h = bdl_hf_step(delta_h, d1, d2)
        betti = bdl_betti_step(betti, d1, d2, index in split_at)
    return delta_h, betti


def bdl_betti_variants(T: PseudoTypeVector) -> List[BettiTable]:
    """Distinct Betti tables reachable by the recursion over every admissible set of split steps."""
    if not isinstance(T, PseudoTypeVector):
        T = PseudoTypeVector(tuple(T))
    links = range(1, len(bdl_steps(T)))
    variants: List[BettiTable] = []
    for size in range(len(links) + 1):
        for splits in itertools.combinations(links, size):
            try:
                betti = bdl_run(T, splits)[1]
            except (InconsistencyError, ValidationError):
                continue
            if betti not in variants:
                variants.append(betti)
    return variants


def _ends_with_zero_run(d: DiffVector) -> bool:
    """ΔT ends with 0 or with 0 followed only by 1's."""
    return _ZERO_RUN_SUFFIX.search(d.symbols()) is not None


def predict_pseudo(T: PseudoTypeVector) -> PseudoPrediction:
    """Hilbert function, regularity and Betti predictions for a pseudo linear configuration."""
    if not isinstance(T, PseudoTypeVector):
        T = PseudoTypeVector(tuple(T))
    d = first_difference(T)
    delta_h = standard_osequence(T)
    if not condition_holds(d):
        logger.debug(f"{T}: ΔT={d} has zeros separated only by 1's, Hilbert function not type-determined")
        return PseudoPrediction(
            pseudo_type=T,
            hf_unique=False,
            delta_h=delta_h,
            note="realized by the standard configuration, not universal",
        )

    m_p = T.entries[-1]
    regularity = m_p + 1 if _ends_with_zero_run(d) else m_p
    betti_unique = not bad_list_hit(d)
    betti = bdl_run(T)[1] if betti_unique else None
    min_gen_count = T.p + 1 - d.entries.count(0) if betti_unique else None
    return PseudoPrediction(
        pseudo_type=T,
        hf_unique=True,
        delta_h=delta_h,
        regularity=regularity,
        betti_unique=betti_unique,
        betti=betti,
        min_gen_count=min_gen_count,
    )


# ============================================================================
# Double points on linear configurations
# ============================================================================

def associated_pseudo_type(T: TypeVector2) -> PseudoTypeVector:
    """Sorted merge of (n_i) and (2 n_i)."""
    if not isinstance(T, TypeVector2):
        T = TypeVector2(tuple(T))
    return PseudoTypeVector(tuple(sorted(T.entries + tuple(2 * n for n in T.entries))))


def classify_double_scheme(T: TypeVector2) -> DoubleSchemeClassification:
    if not isinstance(T, TypeVector2):
        T = TypeVector2(tuple(T))
    pseudo = associated_pseudo_type(T)
    d = first_difference(pseudo)
    hf_unique = condition_holds(d)
    betti_unique = hf_unique and not bad_list_hit(d)
    return DoubleSchemeClassification(
        type_vector=T,
        pseudo_type=pseudo,
        hf_unique=hf_unique,
        betti_unique=betti_unique,
        predicted_delta_h=standard_osequence(pseudo),
        regularity=2 * T.sigma,
        predicted_betti=bdl_run(pseudo)[1] if betti_unique else None,
    )


def removed_point_type(T: TypeVector2, line_index: int) -> PseudoTypeVector:
    """Type left after deleting one point from line `line_index` (1-based)."""
    if not isinstance(T, TypeVector2):
        T = TypeVector2(tuple(T))
    if not 1 <= line_index <= T.r:
        raise ValidationError(f"line index must lie in 1..{T.r}, got {line_index}")
    entries = list(T.entries)
    entries[line_index - 1] -= 1
    remaining = tuple(sorted(v for v in entries if v > 0))
    try:
        result = PseudoTypeVector(remaining)
    except ValidationError as e:
        raise InconsistencyError(f"removing a point from line {line_index} of {T} gave {_fmt(remaining)}: {e}") from e
    repeats = sum(1 for a, b in zip(remaining, remaining[1:]) if a == b)
    if repeats > 1 or bad_list_hit(first_difference(result)):
        raise InconsistencyError(f"removing a point from line {line_index} of {T} gave {result} with an unexpected Δ")
    return result


# ============================================================================
# C_t, C_{t,r} and their double schemes
# ============================================================================

def _check_tr(t: int, r: int = 0) -> None:
    if t < 2:
        raise ValidationError(f"t must be at least 2, got {t}")
    if not 0 <= r <= t:
        raise ValidationError(f"r must lie in 0..{t}, got {r}")


def ct_delta_h(t: int) -> OSequence:
    _check_tr(t)
    return OSequence(tuple(range(1, t)))


def ctr_delta_h(t: int, r: int) -> OSequence:
    """Support Hilbert function of C_{t,r}: 1, 2, ..., t-1, r."""
    _check_tr(t, r)
    return OSequence(tuple(range(1, t)) + (r,))


def ztr_delta_h(t: int, r: int = 0) -> OSequence:
    """
    Δh of the double scheme on C_{t,r}.

    r = 0 uses the closed form 1, ..., t-1 followed by t-1 copies of t; r = t
    is C_{t+1}. Other r are only known from the table for t in {4, 5}.
    """
    _check_tr(t, r)
    if r == t:
        return ztr_delta_h(t + 1, 0)
    if r == 0:
        return OSequence(tuple(range(1, t)) + (t,) * (t - 1))
    try:
        return OSequence(_ZTR_TABLE[(t, r)])
    except KeyError:
        raise UnsupportedError(f"no tabulated value for Z_{{{t},{r}}}; compute it with the oracle")
