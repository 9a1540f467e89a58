"""
Explicit point configurations in P2 with exact rational coordinates.

Every generator is deterministic in its (type, seed) input: randomness comes
from a local random.Random stream, never the global one.
"""

import logging
import math
import random
from dataclasses import dataclass, replace
from fractions import Fraction
from functools import reduce
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

from config.settings import COORD_BOUND, RETRY_BUDGET
from src.errors import DegeneracyError, ValidationError
from src.typevec import PseudoTypeVector, TypeVector2

logger = logging.getLogger(__name__)

STANDARD_LINEAR = "standard-linear"
SPREAD_OUT = "spread-out"
STANDARD_PSEUDO = "standard-pseudo"
GENERIC_PSEUDO = "generic-pseudo"
LINEAR = "linear"
CT = "Ct"
CTR = "Ctr"
CH = "Ch"
CUBIC = "cubic"
FREE = "free"

KINDS = (STANDARD_LINEAR, SPREAD_OUT, STANDARD_PSEUDO, GENERIC_PSEUDO, LINEAR, CT, CTR, CH, CUBIC, FREE)
LINEAR_KINDS = {STANDARD_LINEAR, SPREAD_OUT, STANDARD_PSEUDO, GENERIC_PSEUDO, LINEAR}


def _to_fraction(value) -> Fraction:
    return Fraction(value)


def _normalize(values: Sequence, what: str) -> Tuple[Fraction, Fraction, Fraction]:
    coords = tuple(_to_fraction(v) for v in values)
    if len(coords) != 3:
        raise ValidationError(f"{what} needs three coordinates, got {len(coords)}")
    last = next((c for c in reversed(coords) if c != 0), None)
    if last is None:
        raise ValidationError(f"{what} coordinates must not all be zero")
    return tuple(c / last for c in coords)


def _cross(a: Sequence[Fraction], b: Sequence[Fraction]) -> Tuple[Fraction, Fraction, Fraction]:
    return (
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    )


def _rational_str(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class ProjPoint:
    """Point of P2, normalized so the last nonzero coordinate is 1."""

    coords: Tuple[Fraction, Fraction, Fraction]

    def __post_init__(self):
        object.__setattr__(self, "coords", _normalize(self.coords, "point"))

    @classmethod
    def of(cls, x, y, z) -> "ProjPoint":
        return cls((x, y, z))

    def integer_coords(self) -> Tuple[int, int, int]:
        """Primitive integer representative of the same projective point."""
        scale = reduce(math.lcm, (c.denominator for c in self.coords), 1)
        ints = [int(c * scale) for c in self.coords]
        g = reduce(math.gcd, ints, 0)
        return tuple(v // g for v in ints)

    def to_list(self) -> List[str]:
        return [_rational_str(c) for c in self.coords]

    def __str__(self) -> str:
        return "[" + ":".join(str(c) for c in self.coords) + "]"


@dataclass(frozen=True)
class LineForm:
    """Linear form aX + bY + cZ, normalized like a point."""

    coeffs: Tuple[Fraction, Fraction, Fraction]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _normalize(self.coeffs, "line"))

    @classmethod
    def horizontal(cls, height) -> "LineForm":
        """The line y = height z."""
        return cls((0, 1, -_to_fraction(height)))

    @classmethod
    def through(cls, p: ProjPoint, q: ProjPoint) -> "LineForm":
        return cls(_cross(p.coords, q.coords))

    def contains(self, point: ProjPoint) -> bool:
        return sum(a * x for a, x in zip(self.coeffs, point.coords)) == 0

    def meet(self, other: "LineForm") -> Optional[ProjPoint]:
        """Intersection point, or None when the lines coincide."""
        c = _cross(self.coeffs, other.coeffs)
        if not any(c):
            return None
        return ProjPoint(c)

    def to_list(self) -> List[str]:
        return [_rational_str(c) for c in self.coeffs]


@dataclass(frozen=True)
class ConfigPoint:
    point: ProjPoint
    multiplicity: int = 1
    line_label: Optional[int] = None  # index into Configuration.lines


@dataclass(frozen=True)
class Configuration:
    points: Tuple[ConfigPoint, ...]
    lines: Tuple[LineForm, ...] = ()
    kind: str = FREE
    description: str = ""

    @property
    def degree(self) -> int:
        """Length of the scheme: 1 per simple point, 3 per double point."""
        return sum(1 if p.multiplicity == 1 else 3 for p in self.points)

    @property
    def is_reduced(self) -> bool:
        return all(p.multiplicity == 1 for p in self.points)

    def support(self) -> List[ProjPoint]:
        return [p.point for p in self.points]

    def __len__(self) -> int:
        return len(self.points)

    def validate(self) -> "Configuration":
        """
        Raise ValidationError if the configuration breaks its kind's invariants.

        Returns:
            self, so generators can chain `return config.validate()`
        """
        if self.kind not in KINDS:
            raise ValidationError(f"unknown configuration kind {self.kind!r}")
        if not self.points:
            raise ValidationError("configuration has no points")
        support = self.support()
        if len(set(support)) != len(support):
            raise ValidationError(f"{self.kind} configuration has repeated points")
        if len(set(self.lines)) != len(self.lines):
            raise ValidationError(f"{self.kind} configuration has repeated lines")

        for cp in self.points:
            if cp.multiplicity not in (1, 2):
                raise ValidationError(f"multiplicity must be 1 or 2, got {cp.multiplicity}")
            if cp.line_label is not None:
                if not 0 <= cp.line_label < len(self.lines):
                    raise ValidationError(f"line label {cp.line_label} out of range")
                if not self.lines[cp.line_label].contains(cp.point):
                    raise ValidationError(f"point {cp.point} is not on its line {cp.line_label}")

        if self.kind in LINEAR_KINDS:
            for cp in self.points:
                if cp.line_label is None:
                    raise ValidationError(f"point {cp.point} of a linear configuration has no line")
                for k, line in enumerate(self.lines):
                    if k != cp.line_label and line.contains(cp.point):
                        raise ValidationError(f"point {cp.point} also lies on foreign line {k}")

        if self.kind in (CT, CTR):
            for cp in self.points:
                incident = sum(1 for line in self.lines if line.contains(cp.point))
                if incident != 2:
                    raise ValidationError(f"intersection point {cp.point} lies on {incident} lines")
        return self

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "description": self.description,
            "lines": [line.to_list() for line in self.lines],
            "points": [
                {"coords": cp.point.to_list(), "multiplicity": cp.multiplicity, "line": cp.line_label}
                for cp in self.points
            ],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Configuration":
        return cls(
            points=tuple(
                ConfigPoint(ProjPoint(tuple(p["coords"])), int(p["multiplicity"]), p.get("line"))
                for p in data["points"]
            ),
            lines=tuple(LineForm(tuple(c)) for c in data.get("lines", [])),
            kind=data["kind"],
            description=data.get("description", ""),
        )


# ============================================================================
# Lattice constructions
# ============================================================================

def _rows_on_heights(row_sizes: Sequence[int], heights: Sequence[int], kind: str, description: str) -> Configuration:
    lines = tuple(LineForm.horizontal(h) for h in heights)
    points = tuple(
        ConfigPoint(ProjPoint.of(j, h, 1), 1, label)
        for label, (size, h) in enumerate(zip(row_sizes, heights))
        for j in range(size)
    )
    return Configuration(points, lines, kind, description).validate()


def standard_linear_config(T: TypeVector2) -> Configuration:
    """Row i at height r - i: points [j : r-i : 1] for 0 <= j < d_i."""
    r = T.r
    return _rows_on_heights(T.entries, [r - i for i in range(1, r + 1)], STANDARD_LINEAR, f"standard {T}")


def spread_out_config(T: TypeVector2) -> Configuration:
    """Row i at height d_r - d_i, so the diagonal points of consecutive rows line up."""
    top = T.sigma
    return _rows_on_heights(T.entries, [top - d for d in T.entries], SPREAD_OUT, f"spread-out {T}")


def standard_pseudo_config(T: PseudoTypeVector) -> Configuration:
    p = T.p
    return _rows_on_heights(T.entries, [p - i for i in range(1, p + 1)], STANDARD_PSEUDO, f"standard pseudo {T}")


def coordinate_triangle_config() -> Configuration:
    """[1:0:0], [0:1:0] on z = 0 and [0:0:1] on x = y: a linear configuration of type (1,2)."""
    lines = (LineForm((1, -1, 0)), LineForm((0, 0, 1)))
    points = (
        ConfigPoint(ProjPoint.of(0, 0, 1), 1, 0),
        ConfigPoint(ProjPoint.of(1, 0, 0), 1, 1),
        ConfigPoint(ProjPoint.of(0, 1, 0), 1, 1),
    )
    return Configuration(points, lines, LINEAR, "coordinate triangle (1,2)").validate()


def double(config: Configuration) -> Configuration:
    """Same support with every point doubled (degree triples)."""
    if not config.is_reduced:
        raise ValidationError("configuration already contains double points")
    points = tuple(replace(cp, multiplicity=2) for cp in config.points)
    return replace(config, points=points, description=f"double of {config.description}".strip())


# ============================================================================
# Random constructions
# ============================================================================

class _Sampler:
    """Seeded integer sampling with a shared retry budget."""

    def __init__(self, seed: int, bound: int = COORD_BOUND, retry_budget: int = RETRY_BUDGET):
        self.seed = seed
        self.bound = bound
        self.retry_budget = retry_budget
        self.rng = random.Random(seed)

    def integer(self) -> int:
        return self.rng.randint(-self.bound, self.bound)

    def vector(self) -> Tuple[int, int, int]:
        return (self.integer(), self.integer(), self.integer())

    def fail(self, what: str) -> DegeneracyError:
        logger.error(f"retry budget of {self.retry_budget} exhausted while sampling {what}")
        return DegeneracyError(f"could not sample {what} within {self.retry_budget} attempts", seed=self.seed)


def _draw_lines(sampler: _Sampler, count: int) -> List[LineForm]:
    """Lines drawn one at a time; each new line avoids old lines and old intersection points."""
    lines: List[LineForm] = []
    crossings: List[ProjPoint] = []
    for index in range(count):
        for attempt in range(sampler.retry_budget):
            coeffs = sampler.vector()
            if not any(coeffs):
                continue
            line = LineForm(coeffs)
            if line in lines or any(line.contains(p) for p in crossings):
                logger.debug(f"line {index} rejected on attempt {attempt + 1}")
                continue
            new_crossings = [line.meet(old) for old in lines]
            if len(set(new_crossings)) != len(new_crossings):
                continue
            crossings.extend(new_crossings)
            lines.append(line)
            break
        else:
            raise sampler.fail(f"line {index + 1} of {count}")
    return lines


def _point_on_line(sampler: _Sampler, line: LineForm, avoid_lines: Sequence[LineForm], taken: set) -> ProjPoint:
    for _ in range(sampler.retry_budget):
        coeffs = sampler.vector()
        if not any(coeffs):
            continue
        crossing = line.meet(LineForm(coeffs))
        if crossing is None or crossing in taken:
            continue
        if any(other.contains(crossing) for other in avoid_lines):
            continue
        return crossing
    raise sampler.fail("a point on a line")


def generic_pseudo_config(
    T: PseudoTypeVector,
    seed: int = 0,
    generic_lines: bool = False,
    bound: int = COORD_BOUND,
    retry_budget: int = RETRY_BUDGET,
) -> Configuration:
    """
    m_i random points on the i-th of p distinct lines.

    By default line i is y = p - i and the x-coordinates are distinct random
    integers in [-bound, bound]. With generic_lines the lines themselves are
    random and each point is cut out by a random second line.
    """
    sampler = _Sampler(seed, bound, retry_budget)
    p = T.p
    if not generic_lines:
        heights = [p - i for i in range(1, p + 1)]
        lines = tuple(LineForm.horizontal(h) for h in heights)
        points = []
        for label, (size, h) in enumerate(zip(T.entries, heights)):
            xs = sampler.rng.sample(range(-bound, bound + 1), size)
            points.extend(ConfigPoint(ProjPoint.of(x, h, 1), 1, label) for x in xs)
        config = Configuration(tuple(points), lines, GENERIC_PSEUDO, f"generic pseudo {T} seed={seed}")
        return config.validate()

    points, lines = _scatter_on_lines(sampler, T.entries)
    config = Configuration(points, lines, GENERIC_PSEUDO, f"generic-lines pseudo {T} seed={seed}")
    return config.validate()


def _scatter_on_lines(sampler: _Sampler, sizes: Sequence[int]) -> Tuple[Tuple[ConfigPoint, ...], Tuple[LineForm, ...]]:
    lines = _draw_lines(sampler, len(sizes))
    taken: set = set()
    points = []
    for label, (size, line) in enumerate(zip(sizes, lines)):
        others = [l for k, l in enumerate(lines) if k != label]
        for _ in range(size):
            point = _point_on_line(sampler, line, others, taken)
            taken.add(point)
            points.append(ConfigPoint(point, 1, label))
    return tuple(points), tuple(lines)


def points_on_lines(sizes: Sequence[int], seed: int = 0) -> Configuration:
    """sizes[i] random points on the i-th of len(sizes) random lines, none on a foreign line."""
    if not sizes or any(s < 0 for s in sizes) or sum(sizes) == 0:
        raise ValidationError(f"line sizes must be nonnegative with a positive sum, got {list(sizes)}")
    points, lines = _scatter_on_lines(_Sampler(seed), sizes)
    sizes_text = ",".join(str(s) for s in sizes)
    return Configuration(points, lines, FREE, f"points on lines ({sizes_text}) seed={seed}").validate()


def free_config(n: int, seed: int = 0, bound: int = COORD_BOUND, retry_budget: int = RETRY_BUDGET) -> Configuration:
    """n distinct random affine points [x : y : 1]."""
    if n < 1:
        raise ValidationError(f"need at least one point, got {n}")
    sampler = _Sampler(seed, bound, retry_budget)
    seen: set = set()
    points = []
    misses = 0
    while len(points) < n:
        point = ProjPoint.of(sampler.integer(), sampler.integer(), 1)
        if point in seen:
            misses += 1
            if misses >= sampler.retry_budget:
                raise sampler.fail(f"{n} distinct points")
            continue
        seen.add(point)
        points.append(ConfigPoint(point))
    return Configuration(tuple(points), (), FREE, f"{n} random points seed={seed}").validate()


def ct_config(t: int, seed: int = 0) -> Configuration:
    """Pairwise intersections of t random lines."""
    if t < 2:
        raise ValidationError(f"t must be at least 2, got {t}")
    lines = _draw_lines(_Sampler(seed), t)
    points = tuple(ConfigPoint(lines[i].meet(lines[j])) for i, j in combinations(range(t), 2))
    return Configuration(points, tuple(lines), CT, f"C_{t} seed={seed}").validate()


def ctr_config(t: int, r: int, seed: int = 0) -> Configuration:
    """
    C_t plus the intersections of a (t+1)-st line with the first r lines.

    The first t lines are the ones ct_config(t, seed) draws, so
    C_t <= C_{t,r} <= C_{t+1} as point sets.
    """
    if t < 2:
        raise ValidationError(f"t must be at least 2, got {t}")
    if not 0 <= r <= t:
        raise ValidationError(f"r must lie in 0..{t}, got {r}")
    lines = _draw_lines(_Sampler(seed), t + 1)
    points = [ConfigPoint(lines[i].meet(lines[j])) for i, j in combinations(range(t), 2)]
    points.extend(ConfigPoint(lines[t].meet(lines[k])) for k in range(r))
    return Configuration(tuple(points), tuple(lines), CTR, f"C_{{{t},{r}}} seed={seed}").validate()


def ch_config(T: TypeVector2, seed: int = 0) -> Configuration:
    """
    k-configuration of type T built on the C_{r+1} skeleton.

    Row i takes the i points lambda_i meets lambda_j (j < i) and lambda_{r+1},
    then n_i - i further random points on lambda_i.
    """
    r = T.r
    for i, n in enumerate(T.entries, start=1):
        if n < i:
            raise ValidationError(f"row {i} of {T} has {n} points, fewer than its {i} skeleton points")
    sampler = _Sampler(seed)
    lines = _draw_lines(sampler, r + 1)
    taken: set = set()
    points: List[ConfigPoint] = []
    for i in range(r, 0, -1):
        own = lines[i - 1]
        skeleton = [own.meet(lines[j - 1]) for j in range(1, i)] + [own.meet(lines[r])]
        for point in skeleton:
            taken.add(point)
            points.append(ConfigPoint(point, 1, i - 1))
        others = [l for k, l in enumerate(lines) if k != i - 1]
        for _ in range(T.entries[i - 1] - i):
            point = _point_on_line(sampler, own, others, taken)
            taken.add(point)
            points.append(ConfigPoint(point, 1, i - 1))
    return Configuration(tuple(points), tuple(lines), CH, f"C_h {T} seed={seed}").validate()


# ============================================================================
# Points on a smooth cubic
# ============================================================================

# y^2 z + y z^2 = x^3 - x z^2, i.e. y^2 + y = x^3 - x; (0, 0) has infinite order
_CUBIC_A1, _CUBIC_A2, _CUBIC_A3, _CUBIC_A4 = 0, 0, 1, -1
_CUBIC_GENERATOR = (Fraction(0), Fraction(0))

Affine = Optional[Tuple[Fraction, Fraction]]


def _cubic_add(P: Affine, Q: Affine) -> Affine:
    """Chord-and-tangent addition; None is the point at infinity."""
    if P is None:
        return Q
    if Q is None:
        return P
    x1, y1 = P
    x2, y2 = Q
    if x1 == x2:
        if y1 + y2 + _CUBIC_A1 * x2 + _CUBIC_A3 == 0:
            return None
        slope = (3 * x1 * x1 + 2 * _CUBIC_A2 * x1 + _CUBIC_A4 - _CUBIC_A1 * y1) / (2 * y1 + _CUBIC_A1 * x1 + _CUBIC_A3)
    else:
        slope = (y2 - y1) / (x2 - x1)
    intercept = y1 - slope * x1
    x3 = slope * slope + _CUBIC_A1 * slope - _CUBIC_A2 - x1 - x2
    y3 = -(slope + _CUBIC_A1) * x3 - intercept - _CUBIC_A3
    return (x3, y3)


def cubic_contains(point: ProjPoint) -> bool:
    x, y, z = point.coords
    return y * y * z + y * z * z == x ** 3 - x * z * z


def points_on_cubic(n: int, seed: int = 0) -> Configuration:
    """n distinct points k*P, k drawn from 1..n+4, on the fixed smooth cubic."""
    if n < 1:
        raise ValidationError(f"need at least one point, got {n}")
    pool = n + 4
    multiples: Dict[int, ProjPoint] = {}
    current: Affine = None
    for k in range(1, pool + 1):
        current = _cubic_add(current, _CUBIC_GENERATOR)
        if current is None:
            break
        multiples[k] = ProjPoint.of(current[0], current[1], 1)
    chosen = sorted(random.Random(seed).sample(sorted(multiples), min(n, len(multiples))))
    points = tuple(ConfigPoint(multiples[k]) for k in chosen)
    if len(set(cp.point for cp in points)) < n:
        raise DegeneracyError(f"only {len(set(cp.point for cp in points))} distinct cubic points for n={n}", seed=seed)
    ks = ",".join(str(k) for k in chosen)
    return Configuration(points, (), CUBIC, f"{n} points k*P on y^2+y=x^3-x, k in {{{ks}}}").validate()
