#!/usr/bin/env python3
"""
Test suite for the command layer.
Tests predict/verify/scan/extremal reports, JSON output, text rendering and
exit codes of the fplab command line.
"""

import json
import os
import pickle
import sys
from pathlib import Path
from types import SimpleNamespace
sys.path.insert(0, str(Path(__file__).parent))

import pytest

from src import commands
from src.commands import (
    REPRODUCE_IDS,
    build_configuration,
    cmd_extremal,
    cmd_predict,
    cmd_reproduce,
    cmd_scan,
    cmd_verify,
)
from src.configurations import SPREAD_OUT, STANDARD_LINEAR
from src.diagrams import betti_diagram, betti_rows, compare_sequences, side_by_side
from src.errors import DegeneracyError, ValidationError, exit_code_for
from src.extremal import SupportSampler, generic_target
from src.fixtures import get_fixture, load_fixtures
from src.main import main
from src.report import (
    CONSISTENT,
    EXPECTED_NONUNIQUE,
    MATCH,
    MISMATCH,
    NOT_APPLICABLE,
    SCHEMA,
    Check,
    RunReport,
    emit_json,
    emit_json_lines,
    parse_json,
    parse_json_lines,
    verdict_for,
    write_reports,
)
from src.summary import ScanSummary
from src.typevec import BettiTable, OSequence, PseudoTypeVector, TypeVector2
from src.witnesses import DiagramCollector
from src.workers import run_parallel


# ============================================================================
# Helpers
# ============================================================================

def make_report(verdict=MATCH, **details):
    return RunReport("verify", {"type": (2, 4, 5)}, verdict, predictions={"delta_h": (1, 2, 3)}, details=details)


def failing_square(x):
    if x < 0:
        raise DegeneracyError("negative input", seed=x)
    return x * x


def worker_pid(_):
    return os.getpid()


# ============================================================================
# predict
# ============================================================================

def test_predict_double_2_4_5():
    report = cmd_predict(TypeVector2((2, 4, 5)), double_scheme=True)
    assert report.verdict == NOT_APPLICABLE
    assert report.predictions["delta_h"] == [1, 2, 3, 4, 5, 6, 6, 3, 2, 1]
    assert report.predictions["hf_unique"] is True
    assert report.predictions["pseudo_type"] == [2, 4, 4, 5, 8, 10]
    assert "Δh:(1,2,3,4,5,6,6,3,2,1)" in report.text.replace(" ", "")


def test_predict_pseudo_and_reduced():
    report = cmd_predict(pseudo=PseudoTypeVector((3, 6, 6, 7, 12, 14)))
    assert report.predictions["delta_h"] == [1, 2, 3, 4, 5, 6, 6, 6, 5, 3, 2, 2, 2, 1]

    report = cmd_predict(TypeVector2((1,)))
    assert report.predictions["delta_h"] == [1]
    assert report.predictions["kind"] == "reduced"


def test_predict_needs_exactly_one_input():
    with pytest.raises(ValidationError):
        cmd_predict()
    with pytest.raises(ValidationError):
        cmd_predict(TypeVector2((1,)), PseudoTypeVector((1,)))
    with pytest.raises(ValidationError):
        cmd_predict(pseudo=PseudoTypeVector((1, 1)), double_scheme=True)


# ============================================================================
# verify
# ============================================================================

def test_verify_single_double_point():
    report = cmd_verify(type_vector=TypeVector2((1,)), double_scheme=True, mode="exact")
    assert report.verdict == MATCH
    assert report.oracle_results[0]["hf"]["delta_h"] == [1, 2]
    assert report.exit_code == 0


def test_verify_reduced_type():
    report = cmd_verify("spread-out", type_vector=TypeVector2((1, 3, 4)), mode="modular")
    assert report.verdict == MATCH
    assert report.oracle_results[0]["hf"]["delta_h"] == [1, 2, 3, 2]


def test_verify_hf_nonunique_pseudo_type():
    T = PseudoTypeVector((1, 1, 2, 2))
    standard = cmd_verify("standard-pseudo", pseudo=T, mode="exact")
    assert standard.verdict == MATCH
    assert standard.oracle_results[0]["hf"]["delta_h"] == [1, 2, 2, 1]

    generic = cmd_verify("generic", pseudo=T, seed=7, mode="exact")
    assert generic.verdict == EXPECTED_NONUNIQUE
    assert generic.oracle_results[0]["hf"]["delta_h"] == [1, 2, 3]
    assert generic.exit_code == 0


def test_verify_double_ct():
    report = cmd_verify("ct", ct=(4, 3), double_scheme=True, mode="modular")
    assert report.inputs["ct"] == [4, 0]
    assert report.verdict == MATCH
    assert report.predictions["delta_h"] == [1, 2, 3, 4, 4, 4]


def test_build_configuration_rejects_bad_requests():
    with pytest.raises(ValidationError):
        build_configuration("ct")
    with pytest.raises(ValidationError):
        build_configuration("spread-out", pseudo=PseudoTypeVector((1, 2)))
    with pytest.raises(ValidationError):
        build_configuration("hexagon", type_vector=TypeVector2((1,)))
    with pytest.raises(ValidationError):
        cmd_verify(type_vector=TypeVector2((1,)), ct=(3, 0))


# ============================================================================
# scan and extremal
# ============================================================================

def test_small_scan():
    reports = cmd_scan(max_sigma=2, what="hf", seeds=1, sample_every=1, mode="exact", workers=2)
    assert len(reports) == 4
    assert [r.inputs["type"] for r in reports[:3]] == [[1], [2], [1, 2]]
    assert all(r.verdict == MATCH for r in reports[:3])
    summary = reports[-1]
    assert summary.inputs["summary"] is True
    assert summary.details["counts"]["vectors"] == 3
    assert summary.details["mismatches"] == []
    assert "vectors: 3" in summary.text


def test_scan_sampling_leaves_the_rest_unconfirmed():
    reports = cmd_scan(max_sigma=3, what="hf", seeds=0, sample_every=3, mode="modular", workers=1)
    vectors = reports[:-1]
    assert len(vectors) == 7
    confirmed = [r for r in vectors if r.verdict != NOT_APPLICABLE]
    assert len(confirmed) == 3


def test_scan_rejects_bad_arguments():
    with pytest.raises(ValidationError):
        cmd_scan(max_sigma=0)
    with pytest.raises(ValidationError):
        cmd_scan(max_sigma=2, what="everything")
    with pytest.raises(ValidationError):
        cmd_scan(max_sigma=2, sample_every=0)


def test_extremal_three_points():
    report = cmd_extremal(ct=(3, 0), trials=4, mode="modular", workers=1)
    assert report.verdict == CONSISTENT
    assert report.predictions["delta_h"] == [1, 2, 3, 3]
    assert report.details["reference_attains_minimum"] is True
    assert report.exit_code == 0


def test_generic_target():
    assert generic_target((1, 2, 3, 2)) == (4, 2)
    assert generic_target((1, 2, 3)) == (4, 0)
    assert generic_target((1,)) == (2, 0)
    with pytest.raises(ValidationError):
        generic_target((1, 3))
    with pytest.raises(ValidationError):
        generic_target((1, 2, 4))


# ============================================================================
# Reports and rendering
# ============================================================================

def test_verdicts():
    assert verdict_for([]) == NOT_APPLICABLE
    assert verdict_for([Check("delta_h", (1, 2), [1, 2])]) == MATCH
    assert verdict_for([Check("delta_h", (1, 2), (1, 1), hard=False)]) == EXPECTED_NONUNIQUE
    assert verdict_for([Check("delta_h", (1, 2), (1, 1)), Check("x", 1, 1, hard=False)]) == MISMATCH
    with pytest.raises(ValidationError):
        make_report("maybe")


def test_report_json():
    report = make_report(observed=[(1, 2)])
    data = json.loads(emit_json(report))
    assert data["schema"] == SCHEMA
    assert data["inputs"]["type"] == [2, 4, 5]
    assert parse_json(emit_json(report)) == report

    stream = emit_json_lines([report, make_report(MISMATCH)])
    parsed = parse_json_lines(stream)
    assert [r.verdict for r in parsed] == [MATCH, MISMATCH]
    assert parsed[1].exit_code == 1

    with pytest.raises(ValidationError):
        parse_json(json.dumps({**data, "schema": "fplab-0"}))
    with pytest.raises(ValidationError):
        parse_json("{not json")


def test_write_reports(tmp_path):
    target = tmp_path / "out" / "report.json"
    assert write_reports([make_report()], str(target)) is None
    assert parse_json(target.read_text()) == make_report()
    text = write_reports([make_report(), make_report()], "-")
    assert len(text.splitlines()) == 2


def test_betti_diagram_layout():
    table = BettiTable((6, 7, 7, 7, 9, 10), (8, 8, 9, 10, 11))
    rows = {row: (b1, b2) for row, _, b1, b2 in betti_rows(table)}
    assert rows[5] == (1, 0)
    assert rows[6] == (3, 2)
    assert rows[7] == (0, 1)
    assert rows[8] == (1, 1)
    assert rows[9] == (1, 1)

    lines = betti_diagram(table).splitlines()
    assert lines[0].split() == ["total:", "1", "6", "5"]
    assert set(lines[1]) == {"-"}
    assert lines[2].split() == ["0:", "1", "-", "-"]
    assert lines[8].split() == ["6:", "-", "3", "2"]


def test_text_helpers():
    marked = compare_sequences((1, 2, 3), (1, 2, 2)).splitlines()
    assert marked[-1].count("^") == 1
    assert compare_sequences((1, 2), (1, 2)).count("^") == 0
    joined = side_by_side(["a\nb", "c"], ["x", "y"]).splitlines()
    assert joined[0].split() == ["x", "y"]
    assert len(joined) == 3


def test_scan_summary_counts():
    reports = [
        RunReport("scan", {"type": [1]}, MATCH, predictions={"hf_unique": True, "betti_unique": True}),
        RunReport(
            "scan",
            {"type": [2, 3, 4, 5]},
            EXPECTED_NONUNIQUE,
            predictions={"hf_unique": True, "betti_unique": False},
            details={"observed_delta_h": [{"delta_h": [1, 2], "first": "standard"}]},
        ),
    ]
    summary = ScanSummary(reports, 5, "hf")
    counts = summary.counts()
    assert counts["vectors"] == 2 and counts["betti_nonunique"] == 1
    assert summary.witnesses()[0]["type"] == [2, 3, 4, 5]
    assert "Witnesses:" in summary.get_summary()


def test_diagram_collector():
    collector = DiagramCollector()
    dh = OSequence((1, 2, 3, 3))
    first = BettiTable((3, 4, 4, 4), (5, 5, 5))
    other = BettiTable((3, 3, 4), (5, 5))
    assert collector.record("k", 4, dh, first)
    assert not collector.record("k", 2, dh, first)
    assert collector.record("k", 7, dh, other)
    summary = collector.summary("k")
    assert summary.betti_varies and not summary.hf_varies
    assert [(d.betti, d.first_seed, d.count) for d in summary.diagrams] == [(first, 2, 2), (other, 7, 1)]
    assert collector.keys() == ["k"]


def test_run_parallel_keeps_order_and_errors():
    items = [((k,), (k - 2,)) for k in range(6)]
    for workers in (1, 3):
        results = run_parallel(failing_square, items, workers)
        assert [r.key for r in results] == [(k,) for k in range(6)]
        assert [r.ok for r in results] == [False, False, True, True, True, True]
        assert results[0].exit_code == 3
        assert [r.value for r in results[2:]] == [0, 1, 4, 9]


def test_run_parallel_uses_worker_processes():
    results = run_parallel(worker_pid, [((k,), (k,)) for k in range(4)], workers=2)
    assert all(r.ok for r in results)
    assert os.getpid() not in {r.value for r in results}


def test_support_sampler_pickles():
    sampler = SupportSampler(OSequence((1, 2, 1)), strategies=("free", "lines"), mode="exact")
    clone = pickle.loads(pickle.dumps(sampler))
    assert clone.strategies == ("free", "lines")
    assert clone.sample(0).support_delta_h == sampler.sample(0).support_delta_h == OSequence((1, 2, 1))


def test_reproduce_ex_2_4_5_doubles_the_spread_out_lattice(monkeypatch):
    seen = []

    def record_kind(config, mode):
        seen.append((config.kind, config.is_reduced))
        raise DegeneracyError("stop after the configuration is built", seed=0)

    monkeypatch.setattr(commands, "analyze", record_kind)
    with pytest.raises(DegeneracyError):
        cmd_reproduce("ex-2-4-5")
    assert seen == [(SPREAD_OUT, False)]


def test_reproduce_special_compares_the_two_lattices(monkeypatch):
    fixture = get_fixture("special-4-5-8-9-10")
    printed = {SPREAD_OUT: fixture["spread_out_delta_h"], STANDARD_LINEAR: fixture["standard_delta_h"]}
    seen = []

    def lattice_hf(config, mode):
        seen.append(config.kind)
        return SimpleNamespace(to_dict=dict, delta_h=OSequence(tuple(printed[config.kind])))

    monkeypatch.setattr(commands, "hilbert_function", lattice_hf)
    report = cmd_reproduce("special-4-5-8-9-10")
    assert seen == [SPREAD_OUT, STANDARD_LINEAR]
    assert report.verdict == MATCH


def test_fixtures():
    fixtures = load_fixtures()
    assert set(REPRODUCE_IDS) <= set(fixtures)
    assert get_fixture("build-fat")["delta_h"] == [1, 2, 3, 3]
    assert all(fixtures[key].location for key in REPRODUCE_IDS)
    assert exit_code_for(DegeneracyError("x", seed=1)) == 3


# ============================================================================
# Command line
# ============================================================================

def test_main_predict(capsys):
    assert main(["predict", "--type", "2,4,5", "--double"]) == 0
    assert "associated pseudo type" in capsys.readouterr().out


def test_main_json_stdout(capsys):
    assert main(["predict", "--pseudo", "1,2,2,3", "--json", "-"]) == 0
    out = capsys.readouterr().out
    report = parse_json(out)
    assert report.predictions["betti_unique"] is False


def test_main_json_file(tmp_path):
    target = tmp_path / "verify.json"
    code = main(["verify", "--type", "1,2", "--double", "--mode", "exact", "--json", str(target)])
    assert code == 0
    assert parse_json(target.read_text()).verdict == MATCH


def test_main_exit_codes():
    assert main(["predict", "--type", "1,3,2"]) == 2
    assert main(["predict", "--pseudo", "2,2,2"]) == 2
    assert main(["verify", "--ct", "6", "2", "--config", "ctr", "--double", "--mode", "modular"]) == 0
    with pytest.raises(SystemExit) as exc:
        main(["reproduce", "no-such-example"])
    assert exc.value.code == 2


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))
