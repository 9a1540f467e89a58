from dataclasses import dataclass, field
import threading
from typing import Dict, Hashable, List, Tuple

from src.typevec import BettiTable, OSequence


@dataclass
class _DiagramState:
    first_seed: int
    count: int
    delta_h: OSequence


@dataclass
class ObservedDiagram:
    betti: BettiTable
    delta_h: OSequence
    first_seed: int
    count: int


@dataclass
class WitnessSummary:
    key: Hashable
    diagrams: List[ObservedDiagram]
    hf_variants: List[Tuple[OSequence, int]] = field(default_factory=list)  # (Δh, first seed)

    @property
    def betti_varies(self) -> bool:
        return len(self.diagrams) > 1

    @property
    def hf_varies(self) -> bool:
        return len(self.hf_variants) > 1


class DiagramCollector:
    """Record the distinct (Δh, Betti table) outcomes observed per input across seeds."""

    def __init__(self):
        self._lock = threading.Lock()
        self._diagrams: Dict[Hashable, Dict[BettiTable, _DiagramState]] = {}
        self._hfs: Dict[Hashable, Dict[OSequence, int]] = {}

    def record(self, key: Hashable, seed: int, delta_h: OSequence, betti: BettiTable = None) -> bool:
        """Returns True when this observation is new for the key."""
        with self._lock:
            hfs = self._hfs.setdefault(key, {})
            is_new = delta_h not in hfs
            if is_new:
                hfs[delta_h] = seed
            else:
                hfs[delta_h] = min(hfs[delta_h], seed)

            if betti is None:
                return is_new
            diagrams = self._diagrams.setdefault(key, {})
            state = diagrams.get(betti)
            if state is None:
                diagrams[betti] = _DiagramState(first_seed=seed, count=1, delta_h=delta_h)
                return True
            state.count += 1
            state.first_seed = min(state.first_seed, seed)
            return is_new

    def summary(self, key: Hashable) -> WitnessSummary:
        with self._lock:
            diagrams = [
                ObservedDiagram(betti, state.delta_h, state.first_seed, state.count)
                for betti, state in self._diagrams.get(key, {}).items()
            ]
            hfs = sorted(self._hfs.get(key, {}).items(), key=lambda item: item[1])
        diagrams.sort(key=lambda d: (d.first_seed, d.betti.beta1, d.betti.beta2))
        return WitnessSummary(key, diagrams, hfs)

    def keys(self) -> List[Hashable]:
        with self._lock:
            return sorted(set(self._hfs) | set(self._diagrams))
