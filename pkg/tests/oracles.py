"""Slow, literal reference implementations used only as test oracles.

Nothing here imports from eqseq: every quantity is rebuilt from its definition
with plain Python integers and cmath.
"""

import cmath
import itertools
import math


def totient(n):
    return sum(1 for t in range(1, n + 1) if math.gcd(t, n) == 1)


def moebius(n):
    if n == 1:
        return 1
    primes = 0
    d = 2
    while d * d <= n:
        if n % d == 0:
            n //= d
            if n % d == 0:
                return 0
            primes += 1
        d += 1
    if n > 1:
        primes += 1
    return (-1) ** primes


def euler_quotient(m, n):
    """Full-precision (n^phi(m) - 1)/m mod m."""
    if math.gcd(n, m) != 1:
        return 0
    n %= m * m
    power = n ** totient(m)
    assert (power - 1) % m == 0
    return ((power - 1) // m) % m


def threshold_bits(m, period):
    return [1 if 2 * euler_quotient(m, t) >= m else 0 for t in range(period)]


def periodic_sum(bits, shifts):
    T = len(bits)
    return sum((-1) ** sum(bits[(n + d) % T] for d in shifts) for n in range(T))


def theta(bits, k):
    """Max over all increasing patterns, no d1 = 0 reduction."""
    T = len(bits)
    return max(abs(periodic_sum(bits, D)) for D in itertools.combinations(range(T), k))


def aperiodic_measure(bits, N, k):
    """C_k straight from the definition: all U <= N-k+1, all D with d_k <= N-U."""
    best = 0
    for U in range(1, N - k + 2):
        for D in itertools.combinations(range(N - U + 1), k):
            s = sum((-1) ** sum(bits[n + d] for d in D) for n in range(U))
            best = max(best, abs(s))
    return best


def ramanujan(N, n):
    return sum(cmath.exp(2j * cmath.pi * t * n / N) for t in range(N) if math.gcd(t, N) == 1)


def counting(m):
    R = range((m + 1) // 2, m)
    c1 = sum(1 for l1, l2, l3 in itertools.product(R, R, R) if (2 * l2 - l1 - l3) % m == 0)
    c2 = sum(1 for l1, l2, l4 in itertools.product(R, R, R) if (3 * l2 - 2 * l1 - l4) % m == 0)
    c3 = sum(
        1
        for l1, l2, l3, l4 in itertools.product(R, R, R, R)
        if (2 * l2 - l1 - l3) % m == 0 and (3 * l2 - 2 * l1 - l4) % m == 0
    )
    return c1, c2, c3


def minimal_quotient_period(m):
    """Smallest P = k*m (k | m) with Q_m(n + P) = Q_m(n) on [0, m^2)."""
    values = [euler_quotient(m, n) for n in range(2 * m * m)]
    for k in range(1, m + 1):
        if m % k == 0 and all(values[n] == values[n + k * m] for n in range(m * m)):
            return k
    raise AssertionError("Q_m is always m^2-periodic")


def xi(m, k):
    """Xi over the full quadruple grid with f evaluated by cmath on each use."""
    h = (m - 1) // 2
    A = [a for a in range(-h, h + 1) if a]

    def f(a):
        return sum(cmath.exp(-2j * cmath.pi * a * l / m) for l in range((m + 1) // 2, m))

    total = 0
    for a1, a2, a3, a4 in itertools.product(A, repeat=4):
        if (a1 + a2 + a3 + a4) % m == 0 and (a2 + 2 * a3 + 3 * a4) % k == 0:
            total += f(a1) * f(a2) * f(a3) * f(a4)
    return total
