#!/usr/bin/env python3
"""
Test suite for the combinatorial predictors.
Tests type vectors, standard O-sequences, the linked recursions and the
uniqueness classification of double points.
"""

import sys
from pathlib import Path
sys.path.insert(0, str(Path(__file__).parent))

import pytest
import hypothesis.strategies as st
from hypothesis import assume, given, settings

from src.errors import InconsistencyError, NotAnHVectorError, UnsupportedError, ValidationError
from src.typevec import (
    BettiTable,
    DiffVector,
    OSequence,
    PseudoTypeVector,
    TypeVector2,
    associated_pseudo_type,
    bad_list_hit,
    bdl_betti_step,
    bdl_betti_variants,
    bdl_hf_step,
    bdl_run,
    bdl_steps,
    classify_double_scheme,
    condition_holds,
    ct_delta_h,
    ctr_delta_h,
    enumerate_type_vectors,
    first_difference,
    hf_from_type_vector,
    predict_pseudo,
    removed_point_type,
    series_consistent,
    standard_osequence,
    type_vector_from_hf,
    ztr_delta_h,
)

type_vectors = st.sets(st.integers(1, 14), min_size=1, max_size=6).map(lambda s: TypeVector2(tuple(sorted(s))))


@st.composite
def pseudo_type_vectors(draw):
    values = sorted(draw(st.lists(st.integers(1, 10), min_size=1, max_size=7)))
    assume(all(not (a == b == c) for a, b, c in zip(values, values[1:], values[2:])))
    return PseudoTypeVector(tuple(values))


def seq(*values):
    return OSequence(values)


def test_hf_from_type_vector():
    assert hf_from_type_vector(TypeVector2((1, 2, 4, 7))) == seq(1, 2, 3, 4, 2, 1, 1)
    assert hf_from_type_vector(TypeVector2((1,))) == seq(1)
    assert hf_from_type_vector(TypeVector2((2, 5, 6))) == seq(1, 2, 3, 3, 2, 2)
    assert hf_from_type_vector(TypeVector2((2, 5, 6))).total == 13


def test_type_vector_from_hf():
    assert type_vector_from_hf((1, 2, 3, 4, 2, 1, 1)) == TypeVector2((1, 2, 4, 7))
    assert type_vector_from_hf((1,)) == TypeVector2((1,))
    assert type_vector_from_hf((1, 2, 3)) == TypeVector2((1, 2, 3))


@pytest.mark.parametrize("bad", [(1, 3), (2, 1), (1, 2, 1, 2), ()])
def test_type_vector_from_hf_rejects_non_h_vectors(bad):
    with pytest.raises(NotAnHVectorError):
        type_vector_from_hf(bad)


@given(type_vectors)
@settings(max_examples=200)
def test_type_vector_hf_bijection(T):
    delta_h = hf_from_type_vector(T)
    assert delta_h.total == sum(T.entries)
    assert delta_h.is_point_sequence()
    assert delta_h.alpha == T.alpha
    assert delta_h.sigma == T.sigma
    assert type_vector_from_hf(delta_h) == T


def test_vector_validation():
    with pytest.raises(ValidationError):
        TypeVector2((2, 2))
    with pytest.raises(ValidationError):
        TypeVector2((0, 1))
    with pytest.raises(ValidationError):
        PseudoTypeVector((2, 2, 2))
    with pytest.raises(ValidationError):
        PseudoTypeVector((3, 2))
    with pytest.raises(ValidationError):
        DiffVector((1, 0, 0))
    with pytest.raises(ValidationError):
        TypeVector2.parse("1,a")
    assert TypeVector2.parse("[2, 4, 5]") == TypeVector2((2, 4, 5))


def test_osequence_basics():
    s = seq(1, 2, 3, 3, 1, 0, 0)
    assert s.values == (1, 2, 3, 3, 1)
    assert s[7] == 0 and s[-1] == 0
    assert s.sigma == 5
    assert s.alpha == 3
    assert s.hilbert_function() == (1, 3, 6, 9, 10, 10)
    assert s.is_point_sequence()
    assert not seq(1, 2, 1, 2).is_point_sequence()


def test_first_difference():
    assert first_difference(PseudoTypeVector((2, 4, 4, 5, 8, 10))).entries == (2, 2, 0, 1, 3, 2)
    pseudo = associated_pseudo_type(TypeVector2((8, 9, 10, 16, 17, 19, 20)))
    assert first_difference(pseudo).entries == (8, 1, 1, 6, 0, 1, 1, 1, 1, 0, 12, 2, 4, 2)


def test_condition_and_bad_list():
    assert condition_holds(first_difference(PseudoTypeVector((2, 2, 3, 4, 5, 7, 7))))
    assert not condition_holds((6, 0, 1, 0))
    assert not condition_holds((1, 0, 1, 0))
    assert bad_list_hit((1, 1, 0, 1))
    assert bad_list_hit((1, 1, 0, 2, 0, 1))
    assert not bad_list_hit((2, 2, 0, 1, 3, 2))
    assert not bad_list_hit((1, 0, 3, 0, 1))


def test_standard_osequence():
    assert standard_osequence(PseudoTypeVector((3, 6, 6, 7, 12, 14))) == seq(1, 2, 3, 4, 5, 6, 6, 6, 5, 3, 2, 2, 2, 1)
    assert standard_osequence(PseudoTypeVector((2, 4, 4, 5, 8, 10))) == seq(1, 2, 3, 4, 5, 6, 6, 3, 2, 1)
    assert standard_osequence(PseudoTypeVector((1, 2, 2, 3))) == seq(1, 2, 3, 2)
    assert standard_osequence(PseudoTypeVector((1, 1, 2, 2))) == seq(1, 2, 2, 1)


def test_bdl_hf_step():
    assert bdl_hf_step(seq(1), 1, 1) == seq(1, 1)
    assert bdl_hf_step(seq(1, 1), 4, 2) == seq(1, 2, 3, 3, 1)
    with pytest.raises(UnsupportedError):
        bdl_hf_step(seq(1), 3, 3)


def test_bdl_betti_step_split_needs_matching_degree():
    ci = BettiTable((1, 1), (2,))
    assert bdl_betti_step(ci, 2, 1) == BettiTable((2, 2, 2), (3, 3))
    with pytest.raises(InconsistencyError):
        bdl_betti_step(ci, 5, 1, f_is_minimal_generator=True)


def test_bdl_run_examples():
    T = PseudoTypeVector((1, 2, 2, 3))
    assert bdl_steps(T) == [(1, 1), (2, 2), (3, 1)]
    delta_h, betti = bdl_run(T)
    assert delta_h == seq(1, 2, 3, 2)
    assert betti == BettiTable((3, 3, 4, 4), (4, 5, 5))
    assert bdl_run(T, splits=(2,))[1] == BettiTable((3, 3, 4), (5, 5))
    with pytest.raises(ValidationError):
        bdl_run(T, splits=(0,))

    assert bdl_run(PseudoTypeVector((2, 4, 4, 5, 8, 10)))[1] == BettiTable((6, 7, 7, 7, 9, 10), (8, 8, 9, 10, 11))


def test_two_diagrams_for_2_3_4_5():
    pseudo = associated_pseudo_type(TypeVector2((2, 3, 4, 5)))
    assert pseudo.entries == (2, 3, 4, 4, 5, 6, 8, 10)
    no_split = BettiTable((8, 8, 8, 8, 9, 9, 9, 10), (9, 9, 10, 10, 10, 10, 11))
    both_split = BettiTable((8, 8, 8, 8, 9, 10), (10, 10, 10, 10, 11))
    assert bdl_run(pseudo)[1] == no_split
    assert bdl_run(pseudo, splits=(3, 4))[1] == both_split
    variants = bdl_betti_variants(pseudo)
    assert no_split in variants and both_split in variants


@given(pseudo_type_vectors())
@settings(max_examples=150)
def test_linked_recursion_matches_standard_osequence(T):
    delta_h, betti = bdl_run(T)
    assert delta_h == standard_osequence(T)
    assert delta_h.total == sum(T.entries)
    assert series_consistent(betti, delta_h)


@given(type_vectors)
@settings(max_examples=100)
def test_linear_configuration_has_two_linear_steps_per_row(T):
    # strictly increasing entries are all linear links
    pseudo = PseudoTypeVector(T.entries)
    assert all(d2 == 1 for _, d2 in bdl_steps(pseudo))
    assert bdl_run(pseudo)[0] == hf_from_type_vector(T)


def test_predict_pseudo():
    p = predict_pseudo(PseudoTypeVector((1, 2, 3, 4)))
    assert p.hf_unique and p.betti_unique
    assert p.delta_h == seq(1, 2, 3, 4)
    assert p.regularity == 4
    assert p.min_gen_count == 5 == len(p.betti.beta1)

    p = predict_pseudo(PseudoTypeVector((1, 1, 2, 2)))
    assert not p.hf_unique
    assert p.delta_h == seq(1, 2, 2, 1)
    assert p.regularity is None and p.betti is None
    assert "not universal" in p.note

    p = predict_pseudo(PseudoTypeVector((1, 2, 2, 3)))
    assert p.hf_unique and p.betti_unique is False
    assert p.betti is None


def test_classify_double_scheme():
    c = classify_double_scheme(TypeVector2((2, 3, 4, 5)))
    assert c.hf_unique and not c.betti_unique
    assert c.predicted_delta_h == seq(1, 2, 3, 4, 5, 6, 7, 8, 5, 1)
    assert c.regularity == 10
    assert c.predicted_betti is None

    c = classify_double_scheme(TypeVector2((1, 3, 5)))
    assert c.hf_unique and c.betti_unique
    assert c.predicted_betti is not None

    c = classify_double_scheme(TypeVector2((2, 4, 5)))
    assert c.hf_unique
    assert c.predicted_delta_h == seq(1, 2, 3, 4, 5, 6, 6, 3, 2, 1)
    assert c.betti_unique


@given(type_vectors)
@settings(max_examples=200)
def test_classification_invariants(T):
    c = classify_double_scheme(T)
    assert c.regularity == 2 * T.sigma
    assert c.predicted_delta_h.total == 3 * sum(T.entries)
    if c.betti_unique:
        assert c.hf_unique
        assert series_consistent(c.predicted_betti, c.predicted_delta_h)


@given(st.sets(st.integers(0, 7), min_size=1, max_size=6))
def test_odd_type_vectors_are_betti_unique(halves):
    T = TypeVector2(tuple(sorted(2 * k + 1 for k in halves)))
    assert classify_double_scheme(T).betti_unique


def test_removed_point_type():
    assert removed_point_type(TypeVector2((1, 2, 4, 7)), 1) == PseudoTypeVector((2, 4, 7))
    assert removed_point_type(TypeVector2((2, 3)), 2) == PseudoTypeVector((2, 2))
    with pytest.raises(ValidationError):
        removed_point_type(TypeVector2((2, 3)), 3)


def test_ct_and_ztr():
    assert ct_delta_h(4) == seq(1, 2, 3)
    assert ctr_delta_h(4, 2) == seq(1, 2, 3, 2)
    assert ctr_delta_h(4, 0) == ct_delta_h(4)
    assert ztr_delta_h(4, 0) == seq(1, 2, 3, 4, 4, 4)
    assert ztr_delta_h(5, 0) == seq(1, 2, 3, 4, 5, 5, 5, 5)
    assert ztr_delta_h(6, 0) == seq(1, 2, 3, 4, 5, 6, 6, 6, 6, 6)
    assert ztr_delta_h(4, 2) == seq(1, 2, 3, 4, 5, 5, 2, 2)
    assert ztr_delta_h(4, 4) == ztr_delta_h(5, 0)
    with pytest.raises(UnsupportedError):
        ztr_delta_h(6, 2)
    with pytest.raises(ValidationError):
        ztr_delta_h(1, 0)


@given(st.integers(2, 12))
def test_zt_closed_form_totals(t):
    assert ztr_delta_h(t, 0).total == 3 * t * (t - 1) // 2


def test_enumerate_type_vectors():
    assert enumerate_type_vectors(2) == [TypeVector2((1,)), TypeVector2((2,)), TypeVector2((1, 2))]
    assert len(enumerate_type_vectors(6)) == 2 ** 6 - 1


def test_betti_table_invariants():
    with pytest.raises(ValidationError):
        BettiTable((2,), ())
    with pytest.raises(ValidationError):
        BettiTable((3, 3), (3,))
    table = BettiTable((4, 3, 4, 4), (5, 5, 5))
    assert table.beta1 == (3, 4, 4, 4)
    assert table.graded() == {3: (1, 0), 4: (3, 0), 5: (0, 3)}
    assert series_consistent(table, seq(1, 2, 3, 3))
    assert BettiTable.from_dict(table.to_dict()) == table


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))
