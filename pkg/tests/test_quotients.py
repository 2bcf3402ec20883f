import os
import random

import numpy as np
import pytest

from eqseq import quotients as qu
from eqseq.errors import EvenModulus, ModulusTooSmall, NotPrime, TableTooLarge
from eqseq.numtheory import euler_phi

import oracles


@pytest.mark.parametrize("m,n,expected", [(9, 2, 7), (5, 1, 0), (5, 10, 0), (7, 3, 6)])
def test_euler_quotient_examples(m, n, expected):
    assert qu.euler_quotient(m, n) == expected
    assert oracles.euler_quotient(m, n) == expected


@pytest.mark.parametrize("p,n,expected", [(3, 2, 1), (5, 2, 3), (5, 6, 4)])
def test_fermat_quotient_examples(p, n, expected):
    assert qu.fermat_quotient(p, n) == expected


def test_fermat_quotient_requires_odd_prime():
    with pytest.raises(NotPrime):
        qu.fermat_quotient(9, 2)
    with pytest.raises(NotPrime):
        qu.fermat_quotient(2, 3)


def test_modulus_validation():
    with pytest.raises(EvenModulus):
        qu.euler_quotient(8, 3)
    with pytest.raises(ModulusTooSmall):
        qu.euler_quotient(1, 3)


def test_negative_and_large_arguments_reduce():
    m = 21
    k = qu.period_multiplier(m)
    for n in (-1, -22, 10**9 + 7, 3 * k * m + 5):
        assert qu.euler_quotient(m, n) == qu.euler_quotient(m, n % (k * m))


@pytest.mark.parametrize("m", [3, 5, 7, 9, 11, 15, 21, 25, 27, 35])
def test_quotient_matches_full_precision_oracle(m):
    table = qu.quotient_table(m)
    assert [int(v) for v in table.values] == [oracles.euler_quotient(m, t) for t in range(table.period)]


@pytest.mark.parametrize("m,k", [(25, 5), (21, 7), (3, 3), (9, 3), (15, 15), (49, 7)])
def test_period_multiplier(m, k):
    assert qu.period_multiplier(m) == k
    assert oracles.minimal_quotient_period(m) == k


def test_quotient_table_examples():
    t5 = qu.quotient_table(5)
    assert len(t5) == 25
    assert t5.values[2] == 3 and t5.values[7] == 0
    assert t5.values[0] == t5.values[5] == t5.values[10] == 0
    t9 = qu.quotient_table(9)
    assert len(t9) == 27 and t9.values[2] == 7
    assert t9.phi_m == 6 and t9.k == 3


def test_quotient_table_cap():
    with pytest.raises(TableTooLarge):
        qu.quotient_table(101, cap=1000)


def test_table_is_immutable():
    t = qu.quotient_table(5)
    with pytest.raises(ValueError):
        t.values[0] = 1


@pytest.mark.parametrize("m", [5, 9, 15, 21, 25, 33, 45, 49])
def test_multiplicativity_and_shift_rule(m):
    table = qu.quotient_table(m)
    km, k, phi = table.period, table.k, euler_phi(m)
    q = table.values
    units = np.nonzero(table.unit_mask())[0]
    for n1 in units:
        assert np.array_equal(q[(n1 * units) % km], (q[n1] + q[units]) % m)
    for n in units[units < m]:
        inv = pow(int(n), -1, m)
        for c in range(k):
            assert q[(n + c * m) % km] == (q[n] + c * inv * phi) % m


@pytest.mark.parametrize("m", [7, 27, 55, 99])
def test_periodicity_random_points(m):
    rng = random.Random(m)
    k = qu.period_multiplier(m)
    for _ in range(100):
        t = rng.randrange(10**6)
        assert qu.euler_quotient(m, t) == qu.euler_quotient(m, t + k * m)


def test_family_periods():
    for p, tau in [(3, 1), (3, 2), (3, 4), (5, 2), (7, 2), (11, 1), (13, 2)]:
        assert qu.period_multiplier(p**tau) == p
    for p, q in [(3, 7), (3, 13), (5, 11), (3, 19), (7, 29), (5, 31)]:
        assert qu.period_multiplier(p * q) == q


@pytest.mark.slow
@pytest.mark.skipif(not os.environ.get("EQSEQ_SLOW"), reason="set EQSEQ_SLOW=1; about 3 minutes")
def test_multiplicativity_all_pairs_exhaustive():
    for m in range(3, 200, 2):
        table = qu.quotient_table(m)
        q, km = table.values, table.period
        units = np.nonzero(table.unit_mask())[0]
        for n1 in units:
            assert np.array_equal(q[(n1 * units) % km], (q[n1] + q[units]) % m), (m, n1)
