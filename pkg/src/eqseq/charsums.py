"""Dirichlet characters, Ramanujan and Gauss sums, and the exponential sums
that appear in the order-4 correlation analysis of Euler-quotient sequences.

Characters are stored exactly, as exponents: ``chi(n) = exp(2*pi*i*e/order)``
with ``e = -1`` marking ``gcd(n, N) > 1``. Complex numbers only appear when a
sum is formed.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from . import numtheory as nt
from .config import default_budget
from .errors import (
    BudgetExceeded,
    CharacterOrderMismatch,
    InvalidArgument,
    NoUnitRepresentative,
    RoundingResidueTooLarge,
    ToleranceExceeded,
)
from .quotients import check_modulus, quotient_table

ZERO = -1
ROUNDING_TOLERANCE = 1e-6
TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class CharacterTable:
    modulus: int
    order: int
    exponents: np.ndarray = field(repr=False)

    def __post_init__(self):
        exps = np.asarray(self.exponents, dtype=np.int64).copy()
        if exps.shape != (self.modulus,):
            raise InvalidArgument(f"need {self.modulus} exponents, got {exps.shape}")
        if self.order < 1:
            raise InvalidArgument("order must be positive")
        units = exps != ZERO
        exps[units] %= self.order
        exps.flags.writeable = False
        object.__setattr__(self, "exponents", exps)

    @property
    def unit_mask(self) -> np.ndarray:
        return self.exponents != ZERO

    def exponent(self, n: int) -> int:
        return int(self.exponents[n % self.modulus])

    def __call__(self, n: int) -> complex:
        e = self.exponent(n)
        if e == ZERO:
            return 0j
        return _root(e, self.order)

    def values(self) -> np.ndarray:
        out = np.zeros(self.modulus, dtype=np.complex128)
        u = self.unit_mask
        out[u] = np.exp(1j * TWO_PI * self.exponents[u] / self.order)
        return out

    def is_trivial(self) -> bool:
        return bool((self.exponents[self.unit_mask] == 0).all())

    def conjugate(self) -> "CharacterTable":
        return character_power(self, -1)


def trivial_character(N: int) -> CharacterTable:
    exps = np.where(np.gcd(np.arange(N), N) == 1, 0, ZERO)
    return CharacterTable(N, 1, exps)


def _root(e: int, order: int) -> complex:
    """exp(2 pi i e / order) with the exponent reduced first."""
    return cmath.exp(1j * TWO_PI * (e % order) / order)


def additive_character(N: int, x: int) -> complex:
    if N < 1:
        raise InvalidArgument("modulus must be positive")
    r = x % N
    # exact values at quarter turns keep the trivial cases free of 1e-16 noise
    if (4 * r) % N == 0:
        return (1 + 0j, 1j, -1 + 0j, -1j)[4 * r // N]
    return _root(r, N)


def _sum_roots(exponents: np.ndarray, order: int) -> complex:
    """Sum of exp(2 pi i e / order) over an integer array, via a histogram."""
    counts = np.bincount(np.mod(exponents, order), minlength=order)
    nz = np.nonzero(counts)[0]
    return complex(np.sum(counts[nz] * np.exp(1j * TWO_PI * nz / order)))


# -- Ramanujan sums ----------------------------------------------------------


def _round_checked(z: complex, what: str) -> int:
    r = round(z.real)
    residue = abs(z - r)
    if residue >= ROUNDING_TOLERANCE:
        raise RoundingResidueTooLarge(f"{what}: {z} is {residue:.3g} away from an integer")
    return int(r)


def ramanujan_sum(N: int, n: int, route: str = "formula") -> int:
    """c_N(n), the sum of e_N(t n) over units t modulo N."""
    if N < 2:
        raise InvalidArgument("Ramanujan sums need N >= 2")
    if route == "direct":
        t = np.arange(N, dtype=np.int64)
        t = t[np.gcd(t, N) == 1]
        return _round_checked(_sum_roots(t * (n % N), N), f"c_{N}({n})")
    if route == "formula":
        M = N // nt.gcd(n % N, N)
        return nt.moebius(M) * nt.euler_phi(N) // nt.euler_phi(M)
    raise InvalidArgument(f"unknown route {route!r}")


def ramanujan_residue(N: int, n: int) -> float:
    t = np.arange(N, dtype=np.int64)
    t = t[np.gcd(t, N) == 1]
    z = _sum_roots(t * (n % N), N)
    return abs(z - round(z.real))


# -- the chi_km family -------------------------------------------------------


def chi_km(m: int) -> CharacterTable:
    """The character n -> e_m(Q_m(n)) on units, modulo k*m."""
    check_modulus(m)
    table = quotient_table(m)
    exps = np.where(table.unit_mask(), table.values, ZERO)
    return CharacterTable(table.period, m, exps)


def character_power(chi: CharacterTable, j: int) -> CharacterTable:
    o = chi.order
    g = math.gcd(j % o, o)  # gcd(0, o) = o, so j = 0 gives order 1
    new_order = o // g
    exps = chi.exponents.copy()
    u = chi.unit_mask
    exps[u] = ((exps[u] * (j % o)) % o) // g
    return CharacterTable(chi.modulus, new_order, exps)


def is_periodic_multiplicative(chi: CharacterTable) -> bool:
    """Full scan of chi(ab) = chi(a) chi(b) plus the zero pattern."""
    N = chi.modulus
    a = np.arange(N, dtype=np.int64)
    if not np.array_equal(chi.unit_mask, np.gcd(a, N) == 1):
        return False
    if N > 1 and chi.exponent(1) != 0:
        return False
    units = a[chi.unit_mask]
    e = chi.exponents
    for x in units:
        lhs = e[(x * units) % N]
        rhs = (e[x] + e[units]) % chi.order
        if not np.array_equal(lhs, rhs):
            return False
    return True


def conductor(chi: CharacterTable) -> int:
    """Smallest d | N such that chi(a) = 1 for every unit a = 1 mod d."""
    N = chi.modulus
    a = np.arange(N, dtype=np.int64)
    u = chi.unit_mask
    for d in nt.factorize(N).divisors():
        sel = u & ((a - 1) % d == 0)
        if (chi.exponents[sel] == 0).all():
            return d
    return N


def primitive_part(chi: CharacterTable) -> CharacterTable:
    """The primitive character modulo the conductor that induces chi.

    A trivial chi yields the degenerate character modulo 1.
    """
    d = conductor(chi)
    N = chi.modulus
    exps = np.full(d, ZERO, dtype=np.int64)
    for r in range(d):
        if math.gcd(r, d) != 1:
            continue
        for a in range(r, N, d):
            if chi.exponents[a] != ZERO:
                exps[r] = chi.exponents[a]
                break
        else:
            raise NoUnitRepresentative(f"no unit modulo {N} lies in class {r} mod {d}")
    return CharacterTable(d, chi.order, exps)


# -- Gauss sums ----------------------------------------------------------------


def _gauss_direct_all(chi: CharacterTable, ns: np.ndarray) -> np.ndarray:
    """G(n, chi) for every n in ``ns``, summing chi(t) e_N(t n) term by term.

    Each term's phase is the exact fraction (e N + t n o) / (o N).
    """
    N, o = chi.modulus, chi.order
    t = np.arange(N, dtype=np.int64)[chi.unit_mask]
    e = chi.exponents[chi.unit_mask]
    big = o * N
    out = np.empty(len(ns), dtype=np.complex128)
    for i, n in enumerate(ns):
        num = (e * N + (t * (int(n) % N) % N) * o) % big
        out[i] = np.exp(1j * TWO_PI * num / big).sum()
    return out


@dataclass(frozen=True)
class _GaussData:
    N: int
    conductor: int
    primitive: CharacterTable
    N1: int
    g1: complex  # G(1, chi*)
    phi_N: int


def _gauss_data(chi: CharacterTable) -> _GaussData:
    N = chi.modulus
    d = conductor(chi)
    prim = primitive_part(chi)
    N1 = nt.radical_part(N, set(nt.factorize(d).primes)) if d > 1 else 1
    g1 = complex(_gauss_direct_all(prim, np.array([1]))[0])
    return _GaussData(N, d, prim, N1, g1, nt.euler_phi(N))


def _gauss_formula(data: _GaussData, n: int) -> complex:
    N, Nstar, prim = data.N, data.conductor, data.primitive
    if Nstar != data.N1 // math.gcd(n, data.N1):
        return 0j
    g = math.gcd(n, N)
    B = N // (Nstar * g)
    mu = nt.moebius(B)
    if mu == 0:
        return 0j
    left = prim(n // g)
    if left == 0:
        return 0j
    return left.conjugate() * prim(B) * mu * (data.phi_N / nt.euler_phi(N // g)) * data.g1


def gauss_sums(chi: CharacterTable, ns, route: str = "direct") -> np.ndarray:
    """Vectorised :func:`gauss_sum` over several n, sharing the setup work."""
    ns = np.asarray(ns, dtype=np.int64)
    if route == "direct":
        return _gauss_direct_all(chi, ns)
    if route == "formula":
        data = _gauss_data(chi)
        return np.array([_gauss_formula(data, int(n)) for n in ns], dtype=np.complex128)
    raise InvalidArgument(f"unknown route {route!r}")


def gauss_sum(chi: CharacterTable, n: int, route: str = "direct") -> complex:
    return complex(gauss_sums(chi, [n], route)[0])


def gauss_tolerance(N: int) -> float:
    return 1e-6 * math.sqrt(N)


def gauss_sum_checked(chi: CharacterTable, n: int) -> tuple[complex, complex]:
    """Both routes; raises ToleranceExceeded when they disagree."""
    direct = gauss_sum(chi, n, "direct")
    formula = gauss_sum(chi, n, "formula")
    if abs(direct - formula) >= gauss_tolerance(chi.modulus):
        raise ToleranceExceeded(f"G({n}, chi) mod {chi.modulus}: direct {direct} vs formula {formula}")
    return direct, formula


# -- shifted-product character sums ------------------------------------------


def has_order_dividing(chi: CharacterTable, m: int) -> bool:
    return bool(((chi.exponents[chi.unit_mask] * m) % chi.order == 0).all())


def lemma1_sum(m: int, k: int, chi: CharacterTable, a) -> complex:
    """sum_{t < km} chi(t^a1 (t+m)^a2 (t+2m)^a3 (t+3m)^a4).

    Each factor is read as chi^{a_i} evaluated at t + i m, so every term with a
    non-unit t vanishes (also for a_i = 0, where chi^0 is the principal
    character). Negative a_i are conjugates.
    """
    check_modulus(m)
    if k < 1 or m % k:
        raise InvalidArgument(f"k={k} must be a positive divisor of m={m}")
    a = tuple(int(v) for v in a)
    if len(a) != 4:
        raise InvalidArgument("need exactly four exponents")
    km = k * m
    if chi.modulus != km:
        raise InvalidArgument(f"character modulus {chi.modulus} is not k*m = {km}")
    if not has_order_dividing(chi, m):
        raise CharacterOrderMismatch("chi^m is not the trivial character")
    t = np.arange(km, dtype=np.int64)
    units = t[chi.unit_mask]
    total = np.zeros(len(units), dtype=np.int64)
    for i, ai in enumerate(a):
        total += ai * chi.exponents[(units + i * m) % km]
    return _sum_roots(total, chi.order)


# -- the constrained quadruple sum and lattice counts ------------------------


def upper_half_sum(m: int, a: int) -> complex:
    """f(a) = sum over l in [(m+1)/2, m-1] of e_m(-a l), summed term by term."""
    ls = np.arange((m + 1) // 2, m, dtype=np.int64)
    return complex(np.exp(-1j * TWO_PI * ((a * ls) % m) / m).sum())


def upper_half_table(m: int) -> np.ndarray:
    """f(a) for every residue a mod m, via the geometric-series closed form."""
    h = (m + 1) // 2
    a = np.arange(m)
    out = np.empty(m, dtype=np.complex128)
    out[0] = m - h
    z = np.exp(-1j * TWO_PI * a[1:] / m)
    # sum_{l=h}^{m-1} z^l = (z^h - z^m) / (1 - z), with z^m = 1
    out[1:] = (z**h - 1.0) / (1.0 - z)
    return out


def _symmetric_range(m: int) -> np.ndarray:
    h = (m - 1) // 2
    return np.concatenate([np.arange(-h, 0), np.arange(1, h + 1)])


def _check_xi_args(m: int, k: int) -> None:
    check_modulus(m)
    if k < 1 or m % k:
        raise InvalidArgument(f"k={k} must be a positive divisor of m={m}")


def xi_sum(m: int, k: int, route: str = "factored", budget: int | None = None) -> complex:
    """The constrained sum over 1 <= |a_i| <= (m-1)/2 of prod_i f(a_i).

    Constraints: a1+a2+a3+a4 = 0 mod m and a2+2a3+3a4 = 0 mod k.
    """
    _check_xi_args(m, k)
    budget = default_budget() if budget is None else budget
    A = _symmetric_range(m)
    work = len(A) ** 4 if route == "direct" else len(A) ** 3
    if work > budget:
        raise BudgetExceeded(f"xi_sum({m}, {k}) needs {work} iterations, budget is {budget}")
    if route == "direct":
        return _xi_direct(m, k, A)
    if route == "factored":
        return _xi_factored(m, k, A)
    raise InvalidArgument(f"unknown route {route!r}")


def _xi_direct(m: int, k: int, A: np.ndarray) -> complex:
    ls = np.arange((m + 1) // 2, m, dtype=np.int64)
    a2, a3, a4 = (g.ravel() for g in np.meshgrid(A, A, A, indexing="ij"))
    total = 0j
    for a1 in A:
        keep = ((a1 + a2 + a3 + a4) % m == 0) & ((a2 + 2 * a3 + 3 * a4) % k == 0)
        if not keep.any():
            continue
        quad = np.stack([np.full(keep.sum(), a1), a2[keep], a3[keep], a4[keep]], axis=1)
        # f(a_i) by summing over l for every entry of every quadruple
        f = np.exp(-1j * TWO_PI * ((quad[:, :, None] * ls) % m) / m).sum(axis=2)
        total += f.prod(axis=1).sum()
    return complex(total)


def _xi_factored(m: int, k: int, A: np.ndarray) -> complex:
    f = upper_half_table(m)
    a2, a3, a4 = np.meshgrid(A, A, A, indexing="ij")
    r1 = (-(a2 + a3 + a4)) % m  # a1 is the unique symmetric representative
    keep = (r1 != 0) & ((a2 + 2 * a3 + 3 * a4) % k == 0)
    prod = f[r1[keep]] * f[a2[keep] % m] * f[a3[keep] % m] * f[a4[keep] % m]
    return complex(prod.sum())


def xi_tolerance(m: int) -> float:
    return 1e-6 * m**4


def counting_sums(m: int, budget: int | None = None) -> tuple[int, int, int]:
    """Lattice counts over l_i in [(m+1)/2, m-1]:

    c1 = #{(l1,l2,l3): 2 l2 = l1 + l3 mod m}
    c2 = #{(l1,l2,l4): 3 l2 = 2 l1 + l4 mod m}
    c3 = #{(l1,l2,l3,l4): both}

    Enumerates (l1, l2) and solves for l3 and l4.
    """
    check_modulus(m)
    budget = default_budget() if budget is None else budget
    h = (m + 1) // 2
    if (m - h) ** 2 > budget:
        raise BudgetExceeded(f"counting_sums({m}) exceeds budget {budget}")
    l1, l2 = np.meshgrid(np.arange(h, m), np.arange(h, m), indexing="ij")
    in3 = (2 * l2 - l1) % m >= h
    in4 = (3 * l2 - 2 * l1) % m >= h
    return int(in3.sum()), int(in4.sum()), int((in3 & in4).sum())
