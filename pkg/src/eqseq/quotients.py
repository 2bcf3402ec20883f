"""Fermat and Euler quotients and full-period quotient tables.

For odd ``m`` and ``gcd(n, m) = 1`` the Euler quotient is
``Q_m(n) = ((n**phi(m) mod m**2) - 1) / m  mod m``; it is 0 for ``gcd(n, m) > 1``.
``Q_m`` is periodic with period ``k*m`` where ``k = m / gcd(m, phi(m))``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import numtheory as nt
from .errors import ConsistencyFailure, EvenModulus, ModulusTooSmall, NotPrime, TableTooLarge

DEFAULT_TABLE_CAP = 10**7


def check_modulus(m: int) -> None:
    if m < 3:
        raise ModulusTooSmall(f"modulus must be >= 3, got {m}")
    if m % 2 == 0:
        raise EvenModulus(f"modulus must be odd, got {m}")


def euler_quotient(m: int, n: int) -> int:
    check_modulus(m)
    if nt.gcd(n % m, m) != 1:
        return 0
    m2 = m * m
    r = nt.mod_pow(n % m2, nt.euler_phi(m), m2)
    return ((r - 1) // m) % m


def fermat_quotient(p: int, n: int) -> int:
    if p < 3 or not nt.is_prime(p):
        raise NotPrime(f"{p} is not an odd prime")
    return euler_quotient(p, n)


def _raw_multiplier(m: int) -> int:
    return m // nt.gcd(m, nt.euler_phi(m))


def _quotients_over(m: int, n: np.ndarray) -> np.ndarray:
    """Vectorised Q_m over an array of nonnegative integers."""
    m2 = m * m
    r = nt.mod_pow_array(n % m2, nt.euler_phi(m), m2)
    q = ((r - 1) // m) % m
    q[np.gcd(n % m, m) != 1] = 0
    return q.astype(np.int64)


def period_multiplier(m: int) -> int:
    """Smallest ``k`` with ``Q_m`` being ``k*m``-periodic.

    The closed form ``m / gcd(m, phi(m))`` is confirmed by scanning one period
    against the next, and every proper divisor of ``k`` is checked to fail.
    """
    check_modulus(m)
    k = _raw_multiplier(m)
    km = k * m
    n = np.arange(2 * km, dtype=np.int64)
    q = _quotients_over(m, n)
    if not np.array_equal(q[:km], q[km:]):
        raise ConsistencyFailure(f"Q_{m} is not {km}-periodic although k={k} by formula")
    for d in nt.factorize(k).divisors() if k > 1 else []:
        if d == k:
            continue
        if np.array_equal(q[:km], q[d * m : d * m + km]):
            raise ConsistencyFailure(f"Q_{m} has smaller period {d * m} than {km}")
    return k


@dataclass(frozen=True)
class QuotientTable:
    m: int
    k: int
    phi_m: int
    values: np.ndarray = field(repr=False)

    @property
    def period(self) -> int:
        return self.k * self.m

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, t: int) -> int:
        return int(self.values[t % self.period])

    def unit_mask(self) -> np.ndarray:
        return np.gcd(np.arange(self.period), self.m) == 1


def quotient_table(m: int, cap: int = DEFAULT_TABLE_CAP) -> QuotientTable:
    check_modulus(m)
    k = _raw_multiplier(m)
    if k * m > cap:
        raise TableTooLarge(f"table of {k * m} entries exceeds cap {cap}")
    k = period_multiplier(m)
    values = _quotients_over(m, np.arange(k * m, dtype=np.int64))
    values.flags.writeable = False
    return QuotientTable(m=m, k=k, phi_m=nt.euler_phi(m), values=values)
