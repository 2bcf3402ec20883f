import json
import math
import warnings
from fractions import Fraction

import numpy as np
import pytest

from eqseq import harness as hs
from eqseq.errors import BudgetExceeded, DivisibilityViolation, EvenModulus
from eqseq.measures import pattern_sum
from eqseq.sequences import BinarySequence, euler_threshold_sequence

# brute-force values from oracles.periodic_sum / oracles.threshold_bits
LHS_FIXTURES = {5: 9, 9: 3, 15: 161, 21: 83, 25: 45, 35: 681, 49: 119}


@pytest.mark.parametrize("m", [5, 15, 21, 25, 35, 49])
def test_lhs_direct_fixtures(m):
    lhs = hs.theorem_lhs_direct(m)
    assert lhs == LHS_FIXTURES[m]
    seq = euler_threshold_sequence(m)
    assert lhs == pattern_sum(seq, (0, m, 2 * m, 3 * m))
    assert abs(lhs) <= seq.period
    assert (lhs - seq.period) % 2 == 0


def test_lhs_direct_small_k_warns():
    with pytest.warns(hs.SmallMultiplierWarning):
        assert hs.theorem_lhs_direct(9) == LHS_FIXTURES[9]


def test_lhs_direct_all_zero_injection():
    zeros = BinarySequence(np.zeros(125, dtype=np.int8))
    assert hs.theorem_lhs_direct(25, zeros) == 125


@pytest.mark.parametrize("m", [5, 15, 21, 25])
def test_cross_route(m):
    assert abs(hs.theorem_lhs_via_characters(m) - hs.theorem_lhs_direct(m)) < hs.CROSS_ROUTE_TOLERANCE


def test_constant_cross_term():
    # with every factor replaced by the constant 1/m the unit sum is k phi(m) / m^4
    m = 25
    exp = hs.character_expansion(m)
    assert abs(exp.cross_terms[(0, 0, 0, 0)] - 5 * 20 / m**4) < 1e-12
    assert exp.nonunit_part == 5 * (25 - 20)
    assert len(exp.cross_terms) == 16


def test_expansion_budget():
    with pytest.raises(BudgetExceeded):
        hs.character_expansion(25, budget=10)


def test_report_main_terms():
    r = hs.theorem_report(25)
    assert r.main_term == Fraction(175, 3)
    assert r.corollary_main == Fraction(125, 3)
    assert r.corollary == {"family": "prime_power", "p": 5, "tau": 2}
    assert r.theorem_applies and r.cross_route_ok
    r21 = hs.theorem_report(21)
    assert r21.corollary_main == Fraction(245, 3)
    assert r21.period == 147
    assert hs.theorem_report(15).corollary_main is None


def test_report_fields():
    r = hs.theorem_report(49)
    assert r.k == 7 and r.period == 343
    assert r.error == pytest.approx(119 - 147)
    assert r.bound_expr == pytest.approx(42 / 6 * 7**1.5 * math.log(49) ** 4)
    assert r.normalized == pytest.approx(119 / math.sqrt(343))


def test_report_small_k_flagged():
    r = hs.theorem_report(9)
    assert not r.theorem_applies
    assert r.warnings
    assert r.cross_route_ok


def test_report_json_is_deterministic():
    a = hs.reports_to_json([hs.theorem_report(21)])
    b = hs.reports_to_json([hs.theorem_report(21)])
    assert a == b
    assert json.loads(a)[0]["main_num"] == 91


def test_report_csv_columns():
    text = hs.reports_to_csv([hs.theorem_report(21)])
    header, row = text.strip().split("\n")
    assert header.split(",") == hs.CSV_COLUMNS
    assert row.startswith("21,7,147,83,")


def test_baseline_single_trial():
    b = hs.random_baseline(50, (0, 3), 1, seed=9)
    assert b.mean_abs == b.max_abs == b.percentile95


def test_baseline_deterministic():
    a = hs.random_baseline(147, (0, 21, 42, 63), 50, seed=4)
    b = hs.random_baseline(147, (0, 21, 42, 63), 50, seed=4)
    assert a == b
    assert hs.random_baseline(147, (0, 21, 42, 63), 50, seed=5) != a


def test_baseline_matches_pattern_sum():
    rng = np.random.default_rng(11)
    bits = rng.integers(0, 2, size=(1, 60), dtype=np.int8)[0]
    b = hs.random_baseline(60, (0, 7, 9), 1, seed=11)
    assert b.mean_abs == pytest.approx(abs(pattern_sum(BinarySequence(bits), (0, 7, 9))) / math.sqrt(60))


def test_sweep():
    out = hs.sweep([{"p": 5, "tau": 1}, {"p": 7, "tau": 1}, {"p": 11, "tau": 1}])
    assert [r.period for r in out] == [25, 49, 121]
    assert [r.period for r in hs.sweep(["p=3,q=7"])] == [147]
    assert hs.sweep([]) == []


def test_sweep_collects_errors_in_order():
    out = hs.sweep(["p=3,q=5", 25, "m=8"], threads=2)
    assert isinstance(out[0], hs.SweepFailure) and "DivisibilityViolation" in out[0].error
    assert isinstance(out[1], hs.TheoremReport) and out[1].m == 25
    assert isinstance(out[2], hs.SweepFailure)


def test_modulus_for():
    assert hs.modulus_for("p=3,tau=3") == 27
    assert hs.modulus_for({"p": 5, "q": 11}) == 55
    assert hs.modulus_for("fermat=7") == 7
    with pytest.raises(DivisibilityViolation):
        hs.modulus_for({"p": 3, "q": 5})
    with pytest.raises(EvenModulus):
        hs.modulus_for(12)
