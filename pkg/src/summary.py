from collections import Counter
from typing import List

from src.report import EXPECTED_NONUNIQUE, MISMATCH, RunReport


class ScanSummary:
    """
    Generates the closing summary of a scan from its per-vector reports.
    """
    def __init__(self, reports: List[RunReport], max_sigma: int, what: str):
        self.reports = reports
        self.max_sigma = max_sigma
        self.what = what

    def counts(self) -> Counter:
        counts = Counter()
        for r in self.reports:
            p = r.predictions
            counts["vectors"] += 1
            counts["hf_unique" if p["hf_unique"] else "hf_nonunique"] += 1
            counts["betti_unique" if p["betti_unique"] else "betti_nonunique"] += 1
            counts[f"verdict:{r.verdict}"] += 1
        return counts

    def witnesses(self) -> List[dict]:
        """Observed variation for every vector whose oracle runs disagreed with a non-unique prediction."""
        witnesses = []
        for r in self.reports:
            if r.verdict != EXPECTED_NONUNIQUE:
                continue
            entry = {"type": r.inputs["type"], "delta_h": r.details.get("observed_delta_h", [])}
            if self.what == "betti":
                entry["diagrams"] = r.details.get("observed_diagrams", [])
            witnesses.append(entry)
        return witnesses

    def mismatches(self) -> List[list]:
        return [r.inputs["type"] for r in self.reports if r.verdict == MISMATCH]

    def to_dict(self) -> dict:
        return {
            "max_sigma": self.max_sigma,
            "what": self.what,
            "counts": dict(sorted(self.counts().items())),
            "witnesses": self.witnesses(),
            "mismatches": self.mismatches(),
        }

    def get_summary(self) -> str:
        """
        Summary text: classification counts, oracle verdicts and witnesses.
        """
        counts = self.counts()
        confirmed = counts["vectors"] - counts["verdict:not-applicable"]
        lines = [
            f"Scan of double points on linear configurations, n_r <= {self.max_sigma}",
            f"vectors: {counts['vectors']}",
            f"Hilbert function unique: {counts['hf_unique']}   not unique: {counts['hf_nonunique']}",
            f"Betti numbers unique: {counts['betti_unique']}   not unique: {counts['betti_nonunique']}",
            f"oracle-confirmed: {confirmed}   match: {counts['verdict:match']}   "
            f"expected-nonunique: {counts['verdict:expected-nonunique']}   mismatch: {counts['verdict:mismatch']}",
        ]

        witnesses = self.witnesses()
        if witnesses:
            lines.append("")
            lines.append("Witnesses:")
        for w in witnesses:
            variants = "; ".join(f"{o['delta_h']} ({o['first']})" for o in w["delta_h"])
            lines.append(f"- {tuple(w['type'])}: Δh {variants}")
            for d in w.get("diagrams", []):
                lines.append(f"    beta1={d['betti']['beta1']} beta2={d['betti']['beta2']} ({d['first']}, x{d['count']})")
        if self.what == "betti" and witnesses:
            lines.append("(distinct diagrams observed are a lower bound on the diagrams that occur)")

        mismatches = self.mismatches()
        if mismatches:
            lines.append("")
            lines.append("Mismatches: " + ", ".join(str(tuple(t)) for t in mismatches))
        return "\n".join(lines)
