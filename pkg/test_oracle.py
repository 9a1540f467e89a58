#!/usr/bin/env python3
"""
Test suite for the oracle and its linear algebra.
Tests ranks and kernels, condition matrices, Hilbert functions and Betti
tables of small explicit configurations in both arithmetic modes.
"""

import sys
from fractions import Fraction
from pathlib import Path
sys.path.insert(0, str(Path(__file__).parent))

import pytest
import sympy
import hypothesis.strategies as st
from hypothesis import given, settings

from src.configurations import (
    ConfigPoint,
    Configuration,
    ProjPoint,
    coordinate_triangle_config,
    ct_config,
    double,
    free_config,
    generic_pseudo_config,
    points_on_cubic,
    standard_linear_config,
    standard_pseudo_config,
)
from src.errors import ValidationError
from src.linalg import (
    EXACT,
    MODULAR,
    as_integer_matrix,
    check_mode,
    choose_primes,
    format_matrix,
    kernel_exact,
    kernel_mod_p,
    rank,
    rank_exact,
    rank_mod_p,
    verify_kernel,
)
from src.oracle import HFRecord, analyze, betti_table, condition_matrix, generator_degrees, hilbert_function, monomials
from src.typevec import BettiTable, OSequence, PseudoTypeVector, TypeVector2, hf_from_type_vector, series_consistent

small_matrices = st.integers(1, 5).flatmap(
    lambda rows: st.integers(1, 5).flatmap(
        lambda cols: st.lists(
            st.lists(st.integers(-4, 4), min_size=cols, max_size=cols), min_size=rows, max_size=rows
        )
    )
)


# ============================================================================
# Linear algebra
# ============================================================================

def test_rank_small_examples():
    assert rank_exact([[1, 2], [2, 4]]) == 1
    assert rank_exact([[1, 0], [0, 1]]) == 2
    assert rank_exact([[0, 0], [0, 0]]) == 0
    assert rank([[Fraction(1, 2), Fraction(1, 3)], [3, 2]]) == 1
    p = choose_primes()[0]
    assert rank_mod_p([[1, 2], [3, 4]], p) == 2
    assert rank_mod_p([[2, 0], [0, 3]], 2) == 1


def test_choose_primes():
    primes = choose_primes(seed=0, bits=31, count=3)
    assert len(set(primes)) == 3
    assert all(sympy.isprime(p) and p < 2 ** 31 for p in primes)
    assert choose_primes(seed=0, bits=31, count=3) == primes


def test_check_mode():
    assert check_mode(EXACT) == EXACT
    with pytest.raises(ValidationError):
        check_mode("approximate")


def test_as_integer_matrix_clears_denominators():
    A = as_integer_matrix([[Fraction(1, 2), 1], [Fraction(1, 3), 0]])
    assert A.tolist() == [[1, 2], [1, 0]]


@given(small_matrices)
@settings(max_examples=100, deadline=None)
def test_rank_agrees_with_sympy(rows):
    expected = sympy.Matrix(rows).rank()
    assert rank_exact(rows) == expected
    assert rank(rows, EXACT) == expected
    assert rank(rows, MODULAR) == expected


@given(small_matrices)
@settings(max_examples=60, deadline=None)
def test_kernels(rows):
    n_cols = len(rows[0])
    basis = kernel_exact(rows)
    assert basis.shape[0] == n_cols - rank_exact(rows)
    verify_kernel(rows, basis)
    p = choose_primes()[0]
    verify_kernel(rows, kernel_mod_p(rows, p), p)


def test_format_matrix():
    assert format_matrix([[1, Fraction(1, 2)], [0, -3]]) == "1/1 1/2\n0/1 -3/1\n"


# ============================================================================
# Condition matrices and Hilbert functions
# ============================================================================

def test_monomials():
    assert monomials(1) == ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    assert monomials(2) == ((2, 0, 0), (1, 1, 0), (1, 0, 1), (0, 2, 0), (0, 1, 1), (0, 0, 2))
    assert len(monomials(5)) == 21


def test_condition_matrix_shapes():
    config = standard_linear_config(TypeVector2((1, 2)))
    assert condition_matrix(config, 2).shape == (3, 6)
    assert condition_matrix(double(config), 2).shape == (9, 6)
    with pytest.raises(ValidationError):
        condition_matrix(config, 0)


def test_single_points():
    simple = Configuration((ConfigPoint(ProjPoint.of(1, 2, 3)),))
    hf = hilbert_function(simple, EXACT)
    assert hf.delta_h == OSequence((1,))
    assert hf.degree == 1 and hf.alpha == 1

    fat = double(simple)
    hf = hilbert_function(fat, EXACT)
    assert hf.h == (1, 3, 3)
    assert hf.delta_h == OSequence((1, 2))
    assert betti_table(fat, EXACT, hf=hf) == BettiTable((2, 2, 2), (3, 3))


@pytest.mark.parametrize("entries", [(1,), (1, 2), (2, 3), (1, 2, 4), (1, 3, 4)])
def test_linear_configurations_follow_their_type(entries):
    T = TypeVector2(entries)
    for config in (standard_linear_config(T), generic_pseudo_config(PseudoTypeVector(entries), 1, True)):
        assert hilbert_function(config, MODULAR).delta_h == hf_from_type_vector(T)


def test_coordinate_triangle_double():
    config = double(coordinate_triangle_config())
    result = analyze(config, EXACT)
    assert result.hf.delta_h == OSequence((1, 2, 3, 3))
    assert result.hf.regularity == 4
    assert generator_degrees(config, EXACT) == (3, 4, 4, 4)
    assert result.betti == BettiTable((3, 4, 4, 4), (5, 5, 5))
    assert series_consistent(result.betti, result.hf.delta_h)


def test_four_lines_double():
    hf = hilbert_function(double(ct_config(4, seed=0)), MODULAR)
    assert hf.delta_h == OSequence((1, 2, 3, 4, 4, 4))


def test_seven_general_double_points():
    hf = hilbert_function(double(free_config(7, seed=0)), MODULAR)
    assert hf.delta_h == OSequence((1, 2, 3, 4, 5, 6))
    assert hf.regularity == 6


def test_ten_points_on_a_cubic():
    hf = hilbert_function(points_on_cubic(10, seed=0), EXACT)
    assert hf.delta_h == OSequence((1, 2, 3, 3, 1))


def test_exact_and_modular_agree():
    config = double(standard_linear_config(TypeVector2((1, 3))))
    exact = analyze(config, EXACT)
    modular = analyze(config, MODULAR)
    assert exact.hf.h == modular.hf.h
    assert exact.betti == modular.betti


def test_standard_and_general_pseudo_betti_differ():
    T = PseudoTypeVector((1, 2, 2, 3))
    standard = analyze(standard_pseudo_config(T), EXACT)
    assert standard.hf.delta_h == OSequence((1, 2, 3, 2))
    assert standard.betti == BettiTable((3, 3, 4, 4), (4, 5, 5))

    general = BettiTable((3, 3, 4), (5, 5))
    observed = [analyze(generic_pseudo_config(T, seed), EXACT).betti for seed in range(3)]
    assert general in observed


def test_hf_record_lookup():
    hf = hilbert_function(double(coordinate_triangle_config()), MODULAR)
    assert hf.at(-1) == 0
    assert hf.at(0) == 1
    assert hf.at(50) == 9
    assert HFRecord.from_dict(hf.to_dict()) == hf


def test_matrix_dump(tmp_path):
    config = coordinate_triangle_config()
    hilbert_function(config, EXACT, dump_dir=tmp_path)
    dumped = sorted(p.name for p in tmp_path.iterdir())
    assert dumped and all(name.startswith("linear_deg") for name in dumped)
    first = (tmp_path / dumped[0]).read_text().splitlines()
    assert len(first) == 3


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))
