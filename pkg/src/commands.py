"""
Command implementations behind the CLI.

Each cmd_* function validates its inputs, runs predictors and (where asked)
the oracle, and returns RunReport objects; src.main only parses arguments,
prints and maps verdicts to exit codes.
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from config.settings import ARITHMETIC_MODE, EXTREMAL_TRIALS, SCAN_MAX_SIGMA, SCAN_SAMPLE_EVERY, SCAN_SEEDS
from src.configurations import (
    Configuration,
    ch_config,
    coordinate_triangle_config,
    ct_config,
    ctr_config,
    double,
    free_config,
    generic_pseudo_config,
    points_on_cubic,
    spread_out_config,
    standard_linear_config,
    standard_pseudo_config,
)
from src.diagrams import betti_diagram, compare_sequences, sequence_table, side_by_side
from src.errors import UnsupportedError, ValidationError
from src.extremal import generic_support_run, generic_target, type_support_run
from src.fixtures import get_fixture
from src.linalg import EXACT, check_mode
from src.oracle import analyze, generator_degrees, hilbert_function
from src.report import (
    MATCH,
    MISMATCH,
    NOT_APPLICABLE,
    Check,
    RunReport,
    verdict_for,
)
from src.summary import ScanSummary
from src.typevec import (
    BettiTable,
    OSequence,
    PseudoTypeVector,
    TypeVector2,
    bdl_betti_variants,
    bdl_run,
    classify_double_scheme,
    ctr_delta_h,
    enumerate_type_vectors,
    hf_from_type_vector,
    predict_pseudo,
    standard_osequence,
    ztr_delta_h,
)
from src.witnesses import DiagramCollector
from src.workers import run_parallel

logger = logging.getLogger(__name__)

CONFIG_CHOICES = ("standard", "spread-out", "standard-pseudo", "generic", "ct", "ctr", "ch")
SCAN_WHAT = ("hf", "betti")


def _yes_no(flag: Optional[bool]) -> str:
    return "-" if flag is None else ("yes" if flag else "no")


def _check_text(checks: Sequence[Check]) -> str:
    lines = []
    for c in checks:
        status = "ok" if c.matches else ("MISMATCH" if c.hard else "differs (expected)")
        lines.append(f"  {c.quantity}: {status}")
        if not c.matches:
            lines.append(f"    predicted: {c.predicted}")
            lines.append(f"    observed:  {c.observed}")
    return "\n".join(lines)


# ============================================================================
# predict
# ============================================================================

def cmd_predict(
    type_vector: Optional[TypeVector2] = None,
    pseudo: Optional[PseudoTypeVector] = None,
    double_scheme: bool = False,
) -> RunReport:
    """Predictor output for a type vector (reduced or doubled) or a pseudo type vector; no oracle run."""
    if (type_vector is None) == (pseudo is None):
        raise ValidationError("predict needs exactly one of --type or --pseudo")
    if pseudo is not None and double_scheme:
        raise ValidationError("--double applies to --type only")

    lines = []
    if pseudo is not None:
        prediction = predict_pseudo(pseudo)
        predictions = prediction.to_dict()
        inputs = {"pseudo": list(pseudo.entries), "double": False}
        lines.append(f"pseudo type {pseudo}")
        betti = prediction.betti
    elif double_scheme:
        classification = classify_double_scheme(type_vector)
        predictions = classification.to_dict()
        inputs = {"type": list(type_vector.entries), "double": True}
        lines.append(f"double points on a linear configuration of type {type_vector}")
        lines.append(f"associated pseudo type {classification.pseudo_type}")
        betti = classification.predicted_betti
    else:
        prediction = predict_pseudo(PseudoTypeVector(type_vector.entries))
        predictions = prediction.to_dict()
        predictions["kind"] = "reduced"
        predictions["delta_h"] = list(hf_from_type_vector(type_vector).values)
        inputs = {"type": list(type_vector.entries), "double": False}
        lines.append(f"linear configuration of type {type_vector}")
        betti = prediction.betti

    lines.append(f"hf unique: {_yes_no(predictions['hf_unique'])}   betti unique: {_yes_no(predictions['betti_unique'])}")
    lines.append(f"Δh: {OSequence(tuple(predictions['delta_h']))}")
    if predictions.get("regularity") is not None:
        lines.append(f"regularity: {predictions['regularity']}")
    if predictions.get("min_gen_count") is not None:
        lines.append(f"minimal generators: {predictions['min_gen_count']}")
    if predictions.get("note"):
        lines.append(f"note: {predictions['note']}")
    if betti is not None:
        lines.append(betti_diagram(betti))

    return RunReport("predict", inputs, NOT_APPLICABLE, predictions=predictions, text="\n".join(lines))


# ============================================================================
# verify
# ============================================================================

@dataclass
class _Expectation:
    predictions: Dict[str, Any] = field(default_factory=dict)
    delta_h: Optional[OSequence] = None
    hf_unique: bool = True
    regularity: Optional[int] = None
    betti: Optional[BettiTable] = None
    betti_unique: bool = False
    reference_betti: Optional[BettiTable] = None  # no-split run, compared softly
    min_gen_count: Optional[int] = None


def build_configuration(
    config_kind: str,
    type_vector: Optional[TypeVector2] = None,
    pseudo: Optional[PseudoTypeVector] = None,
    ct: Optional[Tuple[int, int]] = None,
    seed: int = 0,
    generic_lines: bool = False,
) -> Configuration:
    """Reduced configuration for a verify request."""
    if config_kind not in CONFIG_CHOICES:
        raise ValidationError(f"--config must be one of {', '.join(CONFIG_CHOICES)}, got {config_kind!r}")
    if config_kind in ("ct", "ctr"):
        if ct is None:
            raise ValidationError(f"--config {config_kind} needs --ct t r")
        t, r = ct
        return ct_config(t, seed) if config_kind == "ct" or r == 0 else ctr_config(t, r, seed)
    if ct is not None:
        raise ValidationError("--ct goes with --config ct or ctr")

    if type_vector is not None:
        as_pseudo = PseudoTypeVector(type_vector.entries)
        builders: Dict[str, Callable[[], Configuration]] = {
            "standard": lambda: standard_linear_config(type_vector),
            "spread-out": lambda: spread_out_config(type_vector),
            "standard-pseudo": lambda: standard_pseudo_config(as_pseudo),
            "generic": lambda: generic_pseudo_config(as_pseudo, seed, generic_lines),
            "ch": lambda: ch_config(type_vector, seed),
        }
        return builders[config_kind]()

    if pseudo is not None:
        if config_kind in ("standard", "standard-pseudo"):
            return standard_pseudo_config(pseudo)
        if config_kind == "generic":
            return generic_pseudo_config(pseudo, seed, generic_lines)
        raise ValidationError(f"--config {config_kind} does not apply to a pseudo type vector")
    raise ValidationError("verify needs one of --type, --pseudo or --ct")


def _expectation(
    config_kind: str,
    type_vector: Optional[TypeVector2],
    pseudo: Optional[PseudoTypeVector],
    ct: Optional[Tuple[int, int]],
    double_scheme: bool,
) -> _Expectation:
    if ct is not None:
        t, r = ct
        if not double_scheme:
            delta_h = ctr_delta_h(t, r)
            return _Expectation({"kind": "ctr", "delta_h": list(delta_h.values)}, delta_h)
        try:
            delta_h = ztr_delta_h(t, r)
        except UnsupportedError as e:
            logger.info(f"{e}; reporting the oracle value only")
            return _Expectation()
        return _Expectation({"kind": "ztr", "delta_h": list(delta_h.values)}, delta_h)

    if pseudo is not None:
        if double_scheme:
            raise ValidationError("--double applies to --type and --ct only")
        prediction = predict_pseudo(pseudo)
        return _Expectation(
            prediction.to_dict(),
            prediction.delta_h,
            hf_unique=prediction.hf_unique,
            regularity=prediction.regularity,
            betti=prediction.betti,
            betti_unique=bool(prediction.betti_unique),
            reference_betti=None if prediction.betti_unique or not prediction.hf_unique else bdl_run(pseudo)[1],
            min_gen_count=prediction.min_gen_count,
        )

    if config_kind == "ch":
        if double_scheme:
            return _Expectation()
        delta_h = hf_from_type_vector(type_vector)
        return _Expectation({"kind": "reduced", "delta_h": list(delta_h.values)}, delta_h)

    if not double_scheme:
        prediction = predict_pseudo(PseudoTypeVector(type_vector.entries))
        predictions = prediction.to_dict()
        predictions["kind"] = "reduced"
        return _Expectation(
            predictions,
            hf_from_type_vector(type_vector),
            regularity=prediction.regularity,
            betti=prediction.betti,
            betti_unique=True,
            min_gen_count=prediction.min_gen_count,
        )

    classification = classify_double_scheme(type_vector)
    return _Expectation(
        classification.to_dict(),
        classification.predicted_delta_h,
        hf_unique=classification.hf_unique,
        regularity=classification.regularity,
        betti=classification.predicted_betti,
        betti_unique=classification.betti_unique,
        reference_betti=None if classification.betti_unique else bdl_run(classification.pseudo_type)[1],
    )


def cmd_verify(
    config_kind: str = "standard",
    type_vector: Optional[TypeVector2] = None,
    pseudo: Optional[PseudoTypeVector] = None,
    ct: Optional[Tuple[int, int]] = None,
    double_scheme: bool = False,
    seed: int = 0,
    mode: Optional[str] = None,
    generic_lines: bool = False,
) -> RunReport:
    """
    Build a configuration, run the oracle and compare with the predictors.

    Differences on quantities the predictors only claim for one realization
    (non-unique Hilbert function or Betti table) give expected-nonunique;
    differences on unique quantities give mismatch.
    """
    mode = check_mode(mode or ARITHMETIC_MODE)
    if sum(x is not None for x in (type_vector, pseudo, ct)) != 1:
        raise ValidationError("verify needs exactly one of --type, --pseudo or --ct")
    if ct is not None and config_kind == "ct":
        ct = (ct[0], 0)
    expectation = _expectation(config_kind, type_vector, pseudo, ct, double_scheme)
    support = build_configuration(config_kind, type_vector, pseudo, ct, seed, generic_lines)
    config = double(support) if double_scheme else support
    result = analyze(config, mode)
    hf, betti = result.hf, result.betti

    checks: List[Check] = []
    if expectation.delta_h is not None:
        checks.append(Check("delta_h", expectation.delta_h.values, hf.delta_h.values, hard=expectation.hf_unique))
    if expectation.regularity is not None:
        checks.append(Check("regularity", expectation.regularity, hf.regularity))
    if expectation.betti is not None:
        checks.append(Check("betti", expectation.betti.to_dict(), betti.to_dict()))
    elif expectation.reference_betti is not None:
        checks.append(Check("betti (no-split run)", expectation.reference_betti.to_dict(), betti.to_dict(), hard=False))
    if expectation.min_gen_count is not None:
        checks.append(Check("min_gen_count", expectation.min_gen_count, len(betti.beta1)))
    verdict = verdict_for(checks)

    inputs = {
        "config": config_kind,
        "type": list(type_vector.entries) if type_vector else None,
        "pseudo": list(pseudo.entries) if pseudo else None,
        "ct": list(ct) if ct else None,
        "double": double_scheme,
        "generic_lines": generic_lines,
        "seed": seed,
    }
    lines = [
        f"verify {config.description} [{mode}]",
        f"oracle Δh: {hf.delta_h}   regularity: {hf.regularity}   ({result.elapsed:.2f}s)",
        betti_diagram(betti),
    ]
    if checks:
        lines.append(_check_text(checks))
    lines.append(f"verdict: {verdict}")
    return RunReport(
        "verify",
        inputs,
        verdict,
        predictions=expectation.predictions,
        oracle_results=[result.to_dict()],
        arithmetic_mode=mode,
        details={"checks": [c.to_dict() for c in checks], "configuration": support.to_dict()},
        text="\n".join(lines),
    )


# ============================================================================
# scan
# ============================================================================

def _scan_variant_label(variant: int, seed: int) -> str:
    if variant == 0:
        return "standard"
    if variant == 1:
        return "spread-out"
    return f"generic-lines seed={seed}"


def _scan_support(T: TypeVector2, variant: int, seed: int) -> Configuration:
    if variant == 0:
        return standard_linear_config(T)
    if variant == 1:
        return spread_out_config(T)
    return generic_pseudo_config(PseudoTypeVector(T.entries), seed, generic_lines=True)


def _scan_item(entries: Tuple[int, ...], variant: int, seed: int, what: str, mode: str):
    config = double(_scan_support(TypeVector2(entries), variant, seed))
    if what == "betti":
        result = analyze(config, mode)
        return result.hf.delta_h, result.betti
    return hilbert_function(config, mode).delta_h, None


def cmd_scan(
    max_sigma: Optional[int] = None,
    what: str = "hf",
    seeds: Optional[int] = None,
    sample_every: Optional[int] = None,
    seed: int = 0,
    mode: Optional[str] = None,
    workers: Optional[int] = None,
) -> List[RunReport]:
    """
    Classify every 2-type vector with n_r <= max_sigma; confirm a sample with the oracle.

    Every sample_every-th vector (in canonical order) is doubled on the
    standard, spread-out and `seeds` generic-lines configurations. The last
    report of the returned list is the summary.
    """
    max_sigma = SCAN_MAX_SIGMA if max_sigma is None else max_sigma
    seeds = SCAN_SEEDS if seeds is None else seeds
    sample_every = SCAN_SAMPLE_EVERY if sample_every is None else sample_every
    mode = check_mode(mode or ARITHMETIC_MODE)
    if max_sigma < 1:
        raise ValidationError(f"--max-sigma must be positive, got {max_sigma}")
    if what not in SCAN_WHAT:
        raise ValidationError(f"--what must be one of {SCAN_WHAT}, got {what!r}")
    if seeds < 0 or sample_every < 1:
        raise ValidationError("--seeds must be >= 0 and --sample-every >= 1")

    vectors = enumerate_type_vectors(max_sigma)
    classifications = [classify_double_scheme(T) for T in vectors]
    sampled = [i for i in range(len(vectors)) if i % sample_every == 0]
    items = []
    for i in sampled:
        entries = vectors[i].entries
        for variant in range(2 + seeds):
            variant_seed = seed + variant - 2 if variant >= 2 else seed
            items.append(((i, variant), (entries, variant, variant_seed, what, mode)))
    logger.info(f"scan: {len(vectors)} vectors, {len(sampled)} confirmed with {len(items)} oracle runs")

    collector = DiagramCollector()
    errors: Dict[int, List[str]] = {}
    for result in run_parallel(_scan_item, items, workers):
        i, variant = result.key
        if not result.ok:
            errors.setdefault(i, []).append(result.error)
            continue
        delta_h, betti = result.value
        collector.record(i, variant, delta_h, betti)

    reports: List[RunReport] = []
    sampled_set = set(sampled)
    for i, (T, classification) in enumerate(zip(vectors, classifications)):
        inputs = {"type": list(T.entries), "double": True, "what": what}
        if i not in sampled_set:
            reports.append(RunReport("scan", inputs, NOT_APPLICABLE, predictions=classification.to_dict(), arithmetic_mode=mode))
            continue

        summary = collector.summary(i)
        checks = [
            Check("delta_h", classification.predicted_delta_h.values, dh.values, hard=classification.hf_unique)
            for dh, _ in summary.hf_variants
        ]
        if what == "betti":
            for observed in summary.diagrams:
                if classification.betti_unique:
                    checks.append(Check("betti", classification.predicted_betti.to_dict(), observed.betti.to_dict()))
                elif classification.hf_unique:
                    reference = bdl_run(classification.pseudo_type)[1]
                    checks.append(Check("betti (no-split run)", reference.to_dict(), observed.betti.to_dict(), hard=False))
        verdict = verdict_for(checks)
        details = {
            "observed_delta_h": [
                {"delta_h": list(dh.values), "first": _scan_variant_label(v, seed + v - 2)} for dh, v in summary.hf_variants
            ],
            "errors": errors.get(i, []),
        }
        if what == "betti":
            details["observed_diagrams"] = [
                {
                    "betti": d.betti.to_dict(),
                    "first": _scan_variant_label(d.first_seed, seed + d.first_seed - 2),
                    "count": d.count,
                }
                for d in summary.diagrams
            ]
            details["diagrams_are_lower_bound"] = True
        reports.append(
            RunReport(
                "scan",
                inputs,
                verdict,
                predictions=classification.to_dict(),
                oracle_results=[{"delta_h": list(dh.values)} for dh, _ in summary.hf_variants],
                arithmetic_mode=mode,
                details=details,
            )
        )

    summary = ScanSummary(reports, max_sigma, what)
    overall = MISMATCH if summary.counts()[f"verdict:{MISMATCH}"] else MATCH
    reports.append(
        RunReport(
            "scan",
            {"max_sigma": max_sigma, "what": what, "seeds": seeds, "sample_every": sample_every, "seed": seed, "summary": True},
            overall,
            arithmetic_mode=mode,
            details=summary.to_dict(),
            text=summary.get_summary(),
        )
    )
    return reports


# ============================================================================
# extremal
# ============================================================================

def cmd_extremal(
    ct: Optional[Tuple[int, int]] = None,
    delta_h: Optional[Sequence[int]] = None,
    type_vector: Optional[TypeVector2] = None,
    trials: Optional[int] = None,
    seed: int = 0,
    mode: Optional[str] = None,
    workers: Optional[int] = None,
) -> RunReport:
    """
    Compare the double of C_{t,r} (or C_h for --type) with doubles of sampled
    supports that share its Hilbert function. Verdicts are consistent or
    counterexample-found; a tabulated Z_{t,r} value that the oracle
    contradicts is a mismatch.
    """
    trials = EXTREMAL_TRIALS if trials is None else trials
    mode = check_mode(mode or ARITHMETIC_MODE)
    if sum(x is not None for x in (ct, delta_h, type_vector)) != 1:
        raise ValidationError("extremal needs exactly one of --ct, --delta-h or --type")

    predictions: Dict[str, Any] = {}
    if type_vector is not None:
        inputs: Dict[str, Any] = {"type": list(type_vector.entries)}
        outcome = type_support_run(type_vector, trials, seed, mode, workers=workers)
    else:
        t, r = ct if ct is not None else generic_target(delta_h)
        inputs = {"t": t, "r": r}
        try:
            predictions["delta_h"] = list(ztr_delta_h(t, r).values)
        except UnsupportedError:
            logger.info(f"no tabulated Z_{{{t},{r}}}; comparing samples only")
        outcome = generic_support_run(t, r, trials, seed, mode, workers=workers)
    inputs.update({"trials": trials, "seed": seed})

    verdict = outcome.verdict
    observed = list(outcome.reference_hf.delta_h.values)
    if predictions.get("delta_h") is not None and predictions["delta_h"] != observed:
        logger.error(f"reference Δh {observed} differs from tabulated {predictions['delta_h']}")
        verdict = MISMATCH

    lines = [
        f"extremal: {outcome.reference} against {len(outcome.samples)} sampled supports with Δh={outcome.target} [{mode}]",
        compare_sequences(outcome.reference_hf.h, outcome.minimum, labels=("reference h", "pointwise min")),
        f"reference attains the pointwise minimum: {_yes_no(outcome.reference_attains_minimum)}",
    ]
    for sample in outcome.counterexamples:
        lines.append(f"  below the reference: {sample.description} Δh={sample.double_hf.delta_h}")
    if outcome.failures:
        lines.append(f"  {len(outcome.failures)} trials could not sample a support")
    lines.append(f"verdict: {verdict}")
    return RunReport(
        "extremal",
        inputs,
        verdict,
        predictions=predictions,
        oracle_results=[{"hf": outcome.reference_hf.to_dict(), "betti": None, "mode": mode}],
        arithmetic_mode=mode,
        details=outcome.to_dict(),
        text="\n".join(lines),
    )


# ============================================================================
# reproduce
# ============================================================================

@dataclass
class _Reproduction:
    checks: List[Check] = field(default_factory=list)
    blocks: List[str] = field(default_factory=list)
    oracle_results: List[dict] = field(default_factory=list)
    details: Dict[str, Any] = field(default_factory=dict)

    def compare(self, quantity: str, printed, computed, hard: bool = True) -> None:
        check = Check(quantity, printed, computed, hard)
        self.checks.append(check)
        if isinstance(printed, (list, tuple)) and all(isinstance(v, int) for v in printed):
            self.blocks.append(f"{quantity}:\n" + compare_sequences(printed, list(computed), labels=("printed", "computed")))


def _reproduce_pseudo_3_6_6_7_12_14(fixture, seed: int, workers: Optional[int]) -> _Reproduction:
    out = _Reproduction()
    T = PseudoTypeVector(tuple(fixture["pseudo_type"]))
    out.compare("predicted Δh", fixture["delta_h"], standard_osequence(T).values)
    hf = hilbert_function(standard_pseudo_config(T), EXACT)
    out.oracle_results.append(hf.to_dict())
    out.compare("oracle Δh (standard configuration)", fixture["delta_h"], hf.delta_h.values)
    return out


def _reproduce_ex_2_4_5(fixture, seed: int, workers: Optional[int]) -> _Reproduction:
    out = _Reproduction()
    T = TypeVector2(tuple(fixture["type"]))
    printed = BettiTable.from_dict(fixture["betti"])
    classification = classify_double_scheme(T)
    length = len(fixture["h"]) - 1
    out.compare("predicted h", fixture["h"], classification.predicted_delta_h.hilbert_function(length))
    if classification.predicted_betti is not None:
        out.compare("predicted betti", printed.to_dict(), classification.predicted_betti.to_dict())
    result = analyze(double(spread_out_config(T)), EXACT)
    out.oracle_results.append(result.to_dict())
    out.compare("oracle h", fixture["h"], result.hf.delta_h.hilbert_function(length))
    out.compare("oracle betti", printed.to_dict(), result.betti.to_dict())
    out.blocks.append(side_by_side([betti_diagram(printed), betti_diagram(result.betti)], ["printed", "computed"]))
    return out


def _reproduce_special(fixture, seed: int, workers: Optional[int]) -> _Reproduction:
    out = _Reproduction()
    T = TypeVector2(tuple(fixture["type"]))
    classification = classify_double_scheme(T)
    out.details["hf_unique"] = classification.hf_unique
    out.compare("linked-construction prediction", fixture["spread_out_delta_h"], classification.predicted_delta_h.values)
    for name, builder in (
        ("spread-out", lambda: spread_out_config(T)),
        ("standard", lambda: standard_linear_config(T)),
    ):
        hf = hilbert_function(double(builder()), EXACT)
        out.oracle_results.append(hf.to_dict())
        key = "spread_out_delta_h" if name == "spread-out" else "standard_delta_h"
        out.compare(f"oracle Δh ({name})", fixture[key], hf.delta_h.values)
    return out


def _reproduce_betti_2_3_4_5(fixture, seed: int, workers: Optional[int]) -> _Reproduction:
    """Search the standard, spread-out and generic-lines doubles for both printed diagrams."""
    out = _Reproduction()
    T = TypeVector2(tuple(fixture["type"]))
    printed = [BettiTable.from_dict(d) for d in fixture["diagrams"]]
    classification = classify_double_scheme(T)
    out.compare("predicted Δh", fixture["delta_h"], classification.predicted_delta_h.values)
    reachable = bdl_betti_variants(classification.pseudo_type)
    for k, table in enumerate(printed, start=1):
        out.compare(f"diagram {k} reachable by the linked recursion", True, table in reachable)

    variants = 2 + max(1, SCAN_SEEDS)
    items = [((v,), (T.entries, v, seed + v - 2 if v >= 2 else seed, "betti", EXACT)) for v in range(variants)]
    collector = DiagramCollector()
    for result in run_parallel(_scan_item, items, workers):
        if result.ok:
            delta_h, betti = result.value
            collector.record("betti", result.key[0], delta_h, betti)
    summary = collector.summary("betti")
    observed = [d.betti for d in summary.diagrams]
    for dh, _ in summary.hf_variants:
        out.compare("oracle Δh", fixture["delta_h"], dh.values)
    for k, table in enumerate(printed, start=1):
        out.compare(f"diagram {k} observed", True, table in observed)
    out.details["observed_diagrams"] = [
        {"betti": d.betti.to_dict(), "first": _scan_variant_label(d.first_seed, seed + d.first_seed - 2), "count": d.count}
        for d in summary.diagrams
    ]
    out.details["additional_diagrams"] = [d.to_dict() for d in observed if d not in printed]
    if out.details["additional_diagrams"]:
        logger.info(f"found {len(out.details['additional_diagrams'])} diagram(s) beyond the printed two")
    out.blocks.append(side_by_side([betti_diagram(t) for t in observed], [f"observed {k}" for k in range(1, len(observed) + 1)]))
    return out


def _reproduce_not_unique(fixture, seed: int, workers: Optional[int]) -> _Reproduction:
    out = _Reproduction()
    T = PseudoTypeVector(tuple(fixture["pseudo_type"]))
    prediction = predict_pseudo(T)
    out.compare("predicted Δh", fixture["delta_h"], prediction.delta_h.values)
    out.compare("hf unique", True, prediction.hf_unique)
    out.compare("betti unique", False, prediction.betti_unique)
    tables = []
    for name, config in (("standard", standard_pseudo_config(T)), ("general", generic_pseudo_config(T, seed))):
        result = analyze(config, EXACT)
        out.oracle_results.append(result.to_dict())
        out.compare(f"oracle Δh ({name})", fixture["delta_h"], result.hf.delta_h.values)
        out.compare(f"oracle betti ({name})", fixture[name], result.betti.to_dict())
        tables.append(result.betti)
    out.blocks.append(side_by_side([betti_diagram(t) for t in tables], ["standard", "general"]))
    return out


def _reproduce_supp_diff_hf(fixture, seed: int, workers: Optional[int]) -> _Reproduction:
    out = _Reproduction()
    T = TypeVector2(tuple(fixture["type"]))
    for name, support, key in (
        ("grid", spread_out_config(T), "grid_support_delta_h"),
        ("cubic", points_on_cubic(fixture["cubic_points"], seed), "cubic_support_delta_h"),
    ):
        reduced = hilbert_function(support, EXACT)
        doubled = hilbert_function(double(support), EXACT)
        out.oracle_results.extend([reduced.to_dict(), doubled.to_dict()])
        out.compare(f"support Δh ({name})", fixture[key], reduced.delta_h.values)
        out.compare(f"double Δh ({name})", fixture["double_delta_h"], doubled.delta_h.values)
    return out


def _reproduce_zt_table(fixture, seed: int, workers: Optional[int]) -> _Reproduction:
    out = _Reproduction()
    rows = []
    for row in fixture["rows"]:
        t, r = row["t"], row["r"]
        name = f"Z_{t}" if r == 0 else f"Z_{t},{r}"
        out.compare(f"{name} tabulated", row["delta_h"], ztr_delta_h(t, r).values)
        config = ct_config(t, seed) if r == 0 else ctr_config(t, r, seed)
        hf = hilbert_function(double(config), EXACT)
        out.oracle_results.append(hf.to_dict())
        out.checks.append(Check(f"{name} oracle", row["delta_h"], hf.delta_h.values))
        rows.append((name, list(hf.delta_h.values)))
    contrast = fixture["linear_contrast"]
    T = TypeVector2(tuple(contrast["type"]))
    out.compare(f"linear {T} predicted", contrast["delta_h"], classify_double_scheme(T).predicted_delta_h.values)
    hf = hilbert_function(double(standard_linear_config(T)), EXACT)
    out.checks.append(Check(f"linear {T} oracle", contrast["delta_h"], hf.delta_h.values))
    rows.append((f"linear {T}", list(hf.delta_h.values)))
    out.blocks.append(sequence_table(rows))
    return out


def _reproduce_build_fat(fixture, seed: int, workers: Optional[int]) -> _Reproduction:
    out = _Reproduction()
    config = double(coordinate_triangle_config())
    T = TypeVector2(tuple(fixture["type"]))
    out.compare("predicted Δh", fixture["delta_h"], classify_double_scheme(T).predicted_delta_h.values)
    hf = hilbert_function(config, EXACT)
    out.oracle_results.append(hf.to_dict())
    out.compare("oracle Δh", fixture["delta_h"], hf.delta_h.values)
    out.compare("generator degrees", fixture["beta1"], generator_degrees(config, EXACT, hf=hf))
    return out


def _reproduce_seven_fat(fixture, seed: int, workers: Optional[int]) -> _Reproduction:
    out = _Reproduction()
    n = fixture["points"]
    hf = hilbert_function(double(free_config(n, seed)), EXACT)
    out.oracle_results.append(hf.to_dict())
    out.compare("oracle Δh", fixture["delta_h"], hf.delta_h.values)
    linear_regularity = min(2 * T.sigma for T in enumerate_type_vectors(n) if sum(T.entries) == n)
    out.details["least_linear_regularity"] = linear_regularity
    out.compare("regularity below every linear configuration", True, hf.regularity < linear_regularity)
    return out


_REPRODUCERS: Dict[str, Callable[..., _Reproduction]] = {
    "pseudo-3-6-6-7-12-14": _reproduce_pseudo_3_6_6_7_12_14,
    "ex-2-4-5": _reproduce_ex_2_4_5,
    "special-4-5-8-9-10": _reproduce_special,
    "betti-2-3-4-5": _reproduce_betti_2_3_4_5,
    "not-unique-1-2-2-3": _reproduce_not_unique,
    "supp-diff-hf": _reproduce_supp_diff_hf,
    "zt-table": _reproduce_zt_table,
    "build-fat": _reproduce_build_fat,
    "seven-fat": _reproduce_seven_fat,
}

REPRODUCE_IDS = tuple(_REPRODUCERS)


def cmd_reproduce(example_id: str, seed: int = 0, workers: Optional[int] = None) -> RunReport:
    """Recompute one printed example in exact arithmetic and compare with its fixture."""
    if example_id not in _REPRODUCERS:
        raise UnsupportedError(f"unknown example id {example_id!r}; known ids: {', '.join(REPRODUCE_IDS)}")
    fixture = get_fixture(example_id)
    logger.info(f"reproducing {example_id}: {fixture.location}")
    out = _REPRODUCERS[example_id](fixture, seed, workers)
    verdict = MISMATCH if any(not c.matches for c in out.checks) else MATCH

    lines = [f"reproduce {example_id}", fixture.location, _check_text(out.checks)]
    lines.extend(out.blocks)
    lines.append(f"verdict: {verdict}")
    return RunReport(
        "reproduce",
        {"id": example_id, "seed": seed},
        verdict,
        predictions={"fixture": fixture.data},
        oracle_results=out.oracle_results,
        arithmetic_mode=EXACT,
        details={"location": fixture.location, "checks": [c.to_dict() for c in out.checks], **out.details},
        text="\n".join(lines),
    )
