"""Normalized-norm sequences: exact staircase values, supremum, violations."""

import math
from fractions import Fraction

import pytest

from pathsig.algebra import NormKind, ScalarKind, TruncatedTensor, tensor_exp
from pathsig.asymptotics import analyze, length_estimate
from pathsig.complexify import lie_generator
from pathsig.paths import PiecewiseLinearPath, path_length, signature
from pathsig.selftest import L_SHAPE_S12_L2, random_staircase

RAT = ScalarKind.RATIONAL


def test_line_exponential_has_constant_roots():
    # exp(v): n! ||v^(x)n / n!|| = ||v||^n by norm multiplicativity, so a_n = L
    v = [Fraction(3), Fraction(-4)]
    g = tensor_exp(TruncatedTensor.from_level(2, 6, 1, v, RAT))
    for kind, length in ((NormKind.L1_PROJECTIVE, 7.0),
                         (NormKind.L2_HILBERT_SCHMIDT, 5.0)):
        rep = analyze(g, kind, length=length)
        for t in rep.terms:
            assert t.a == pytest.approx(length, rel=1e-12)
        assert rep.sup == pytest.approx(length, rel=1e-12)
        assert rep.ratio == pytest.approx(1.0, rel=1e-12)
        assert not rep.violations


def test_staircase_roots_equal_length_exactly():
    stair = PiecewiseLinearPath([[0, 0], [1, 0], [1, 1]])
    g = signature(stair, 8)
    L = path_length(stair, NormKind.L1_PROJECTIVE)
    assert L == 2
    # derivation: a monotone path has nonnegative coefficients that sum to L^n/n!
    for n in range(1, 9):
        lvl = g.level(n)
        assert all(c >= 0 for c in lvl)
        assert sum(lvl) == L**n / math.factorial(n)
    rep = analyze(g, NormKind.L1_PROJECTIVE, length=L)
    for t in rep.terms:
        assert Fraction(t.b_exact) == L**t.n
        assert t.a == pytest.approx(2.0, rel=1e-14)
    assert rep.sup == pytest.approx(2.0, rel=1e-14)


def test_even_pattern_reports_even_degrees_only():
    g = tensor_exp(lie_generator("[1,2]", 2).embed(8))
    rep = analyze(g, NormKind.L1_PROJECTIVE)
    defined = [t.n for t in rep.terms if t.a is not None]
    assert defined == [2, 4, 6, 8]
    undefined = [t.n for t in rep.terms if t.a is None]
    assert undefined == [1, 3, 5, 7]
    assert not rep.violations


def test_violations_empty_for_group_like(rng):
    pts = [[Fraction(rng.randint(-3, 3), 2) for _ in range(2)] for _ in range(4)]
    g = signature(PiecewiseLinearPath(pts), 8)
    for kind in NormKind:
        assert analyze(g, kind).violations == ()


def test_violation_detected_when_level_is_erased():
    g = signature(PiecewiseLinearPath([[0, 0], [1, 0], [1, 1], [2, 1]]), 6)
    levels = [list(lvl) for lvl in g.levels]
    levels[4] = [Fraction(0)] * 16
    broken = TruncatedTensor(2, 6, RAT, levels)
    rep = analyze(broken, NormKind.L1_PROJECTIVE)
    assert (1, 3) in rep.violations or (2, 2) in rep.violations


def test_supremum_nondecreasing_in_depth(rng):
    pts = [[Fraction(rng.randint(-4, 4), 4) for _ in range(2)] for _ in range(4)]
    p = PiecewiseLinearPath(pts)
    sups = []
    for depth in (2, 4, 6, 8):
        rep = length_estimate(p, NormKind.L2_HILBERT_SCHMIDT, depth)
        if rep.sup is not None:
            sups.append(rep.sup)
    assert sups == sorted(sups)


def test_single_segment_ratio_is_one():
    p = PiecewiseLinearPath([[0, 0, 0], [1, 2, 2]])
    for kind in NormKind:
        for depth in (1, 3, 5):
            rep = length_estimate(p, kind, depth)
            assert rep.ratio == pytest.approx(1.0, rel=1e-12)
            assert rep.sup_within_length


def test_out_and_back_reports_trivial():
    p = PiecewiseLinearPath([[0, 0], [1, 1], [0, 0]])
    rep = length_estimate(p, NormKind.L1_PROJECTIVE, 6)
    assert rep.trivial
    assert rep.sup is None and rep.ratio is None
    assert all(t.a is None for t in rep.terms)
    assert rep.sup_within_length  # vacuously: nothing exceeds the length


def test_l_shape_l2_regression_value():
    p = PiecewiseLinearPath([[0, 0], [1, 0], [1, 1]])
    rep = length_estimate(p, NormKind.L2_HILBERT_SCHMIDT, 12)
    assert rep.sup == pytest.approx(L_SHAPE_S12_L2, abs=1e-9)
    assert rep.sup <= 2.0
    rep2 = length_estimate(p, NormKind.L2_HILBERT_SCHMIDT, 2)
    assert rep.sup >= rep2.sup


def test_random_staircases_hit_length_exactly(rng):
    for _ in range(3):
        stair = random_staircase(rng, rng.randint(2, 5))
        L = path_length(stair, NormKind.L1_PROJECTIVE)
        g = signature(stair, 6)
        rep = analyze(g, NormKind.L1_PROJECTIVE, length=L)
        for t in rep.terms:
            assert Fraction(t.b_exact) == L**t.n
        assert rep.sup == pytest.approx(float(L), rel=1e-12)


def test_decay_bound_reported(rng):
    pts = [[Fraction(rng.randint(-4, 4), 8) for _ in range(2)] for _ in range(5)]
    p = PiecewiseLinearPath(pts)
    for kind in NormKind:
        rep = length_estimate(p, kind, 8)
        assert rep.sup_within_length


def test_analyze_requires_unit_constant_term():
    with pytest.raises(ValueError):
        analyze(TruncatedTensor.zero(2, 4, RAT), NormKind.L1_PROJECTIVE)


def test_report_serialization_shape():
    p = PiecewiseLinearPath([[0, 0], [1, 0], [1, 1]])
    rep = length_estimate(p, NormKind.L1_PROJECTIVE, 4)
    data = rep.to_dict()
    assert data["norm"] == "l1proj"
    assert data["scalar"] == "rational"
    assert [t["n"] for t in data["terms"]] == [1, 2, 3, 4]
    assert data["sup"] == rep.sup
    assert data["sup_within_length"] is True
