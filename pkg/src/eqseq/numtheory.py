"""Exact integer primitives: gcd, modular powers and inverses, factorization,
Euler's totient and the Moebius function.

Python integers are arbitrary precision, so there is no overflow concern in the
scalar routines. :func:`mod_pow_array` is the vectorised variant used to fill
quotient tables; it stays in int64 and therefore caps the modulus so that the
product of two residues fits in 63 bits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import InvalidArgument, NonInvertible, OutOfRange

FACTORIZE_LIMIT = 2**50

# residues below this bound multiply without leaving int64
_INT64_SAFE_MODULUS = 3_037_000_499


@dataclass(frozen=True)
class Factorization:
    n: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        prod = 1
        last = 1
        for p, e in self.factors:
            if p <= last or e < 1:
                raise InvalidArgument(f"non-canonical factor list {self.factors}")
            prod *= p**e
            last = p
        if prod != self.n:
            raise InvalidArgument(f"factors {self.factors} do not multiply to {self.n}")

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    def is_prime(self) -> bool:
        return len(self.factors) == 1 and self.factors[0][1] == 1

    def divisors(self) -> list[int]:
        divs = [1]
        for p, e in self.factors:
            divs = [d * p**i for d in divs for i in range(e + 1)]
        return sorted(divs)


def gcd(a: int, b: int) -> int:
    return math.gcd(a, b)


def mod_pow(base: int, exponent: int, modulus: int) -> int:
    """``base**exponent mod modulus`` with the result in ``[0, modulus)``."""
    if modulus < 2:
        raise InvalidArgument(f"modulus must be >= 2, got {modulus}")
    if exponent < 0:
        raise InvalidArgument("exponent must be nonnegative")
    return pow(base, exponent, modulus)


def mod_pow_array(base: np.ndarray, exponent: int, modulus: int) -> np.ndarray:
    """Elementwise square-and-multiply over an integer array."""
    if modulus < 2:
        raise InvalidArgument(f"modulus must be >= 2, got {modulus}")
    if exponent < 0:
        raise InvalidArgument("exponent must be nonnegative")
    if modulus > _INT64_SAFE_MODULUS:
        return np.array([pow(int(b), exponent, modulus) for b in base], dtype=object)
    b = np.mod(np.asarray(base, dtype=np.int64), modulus)
    result = np.ones_like(b)
    e = exponent
    while e:
        if e & 1:
            result = (result * b) % modulus
        b = (b * b) % modulus
        e >>= 1
    return result % modulus


def mod_inverse(a: int, modulus: int) -> int:
    if modulus < 2:
        raise InvalidArgument(f"modulus must be >= 2, got {modulus}")
    try:
        return pow(a, -1, modulus)
    except ValueError:
        raise NonInvertible(f"{a} is not invertible modulo {modulus}") from None


@lru_cache(maxsize=4096)
def factorize(n: int) -> Factorization:
    """Trial division up to sqrt(n)."""
    if n < 1:
        raise InvalidArgument(f"factorize needs n >= 1, got {n}")
    if n > FACTORIZE_LIMIT:
        raise OutOfRange(f"{n} exceeds the factorization bound 2**50")
    factors = []
    rest = n
    for p in (2, 3):
        e = 0
        while rest % p == 0:
            rest //= p
            e += 1
        if e:
            factors.append((p, e))
    # candidates 6j +- 1
    d = 5
    step = 2
    while d * d <= rest:
        e = 0
        while rest % d == 0:
            rest //= d
            e += 1
        if e:
            factors.append((d, e))
        d += step
        step = 6 - step
    if rest > 1:
        factors.append((rest, 1))
    return Factorization(n, tuple(factors))


def is_prime(n: int) -> bool:
    return n >= 2 and factorize(n).is_prime()


def euler_phi(n: int) -> int:
    if n < 1:
        raise InvalidArgument(f"euler_phi needs n >= 1, got {n}")
    result = 1
    for p, e in factorize(n).factors:
        result *= (p - 1) * p ** (e - 1)
    return result


def moebius(n: int) -> int:
    if n < 1:
        raise InvalidArgument(f"moebius needs n >= 1, got {n}")
    factors = factorize(n).factors
    if any(e > 1 for _, e in factors):
        return 0
    return -1 if len(factors) % 2 else 1


def radical_part(n: int, primes) -> int:
    """Largest divisor of ``n`` built only from ``primes``."""
    out = 1
    for p, e in factorize(n).factors:
        if p in primes:
            out *= p**e
    return out
