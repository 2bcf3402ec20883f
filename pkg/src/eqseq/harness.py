"""End-to-end check of the order-4 correlation sum of Euler-quotient sequences.

For the threshold sequence s of period km the quantity of interest is

    LHS(m) = sum_{t < km} (-1)^(s_t + s_{t+m} + s_{t+2m} + s_{t+3m}),

with predicted main term km - (2/3) k phi(m). LHS is computed twice:

* directly, from the bits;
* through characters: for units t, (-1)^(s_t) = 1/m - (2/m) sum_{a != 0} f(a) chi(t)^a
  with chi = chi_km and f(a) = sum_{l=(m+1)/2}^{m-1} e_m(-a l). Multiplying the
  four expansions gives 16 cross terms, each a weighted sum of shifted
  character sums. All those character sums are produced at once as the 4-d
  inverse DFT of the histogram of (Q(t), Q(t+m), Q(t+2m), Q(t+3m)) over units.
  Non-units contribute +1 each, k (m - phi(m)) in total.

The asymptotic error term is never asserted; reports carry the bound
expression next to the observed error.
"""

from __future__ import annotations

import csv
import io
import itertools
import json
import logging
import math
import re
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Any, Iterable

import numpy as np

from . import numtheory as nt
from .charsums import upper_half_table
from .config import default_budget
from .errors import BudgetExceeded, DivisibilityViolation, EqseqError, InvalidArgument, NotPrime
from .measures import ShiftPattern, _as_pattern
from .quotients import check_modulus, quotient_table
from .sequences import BinarySequence, euler_threshold_sequence

log = logging.getLogger(__name__)

CROSS_ROUTE_TOLERANCE = 1e-3
BASELINE_GENERATOR = "numpy.random.default_rng (PCG64)"

CSV_COLUMNS = [
    "m", "k", "period", "lhs_direct", "lhs_characters", "main_num", "main_den",
    "corollary_main_num", "corollary_main_den", "error", "bound_expr", "normalized",
    "theorem_applies",
]


class SmallMultiplierWarning(UserWarning):
    """k <= 3: the sum is defined but the main-term prediction does not apply."""


def _warn_small_k(m: int, k: int) -> None:
    if k <= 3:
        warnings.warn(f"m={m} has period multiplier k={k} <= 3", SmallMultiplierWarning, stacklevel=3)


def shifted_sum(seq: BinarySequence, shifts: Iterable[int]) -> int:
    """sum_t prod_i (-1)^(s_{t + d_i}) with every index taken mod the period."""
    x = seq.signs()
    prod = np.ones(seq.period, dtype=np.int64)
    for d in shifts:
        prod *= np.roll(x, -(d % seq.period))
    return int(prod.sum())


def theorem_lhs_direct(m: int, seq: BinarySequence | None = None) -> int:
    """Order-4 sum at shifts (0, m, 2m, 3m).

    ``seq`` substitutes a different sequence of the same period, which is how the
    degenerate all-zero case is exercised.
    """
    if seq is None:
        seq = euler_threshold_sequence(m)
    k = seq.period // m
    if k * m != seq.period:
        raise InvalidArgument(f"period {seq.period} is not a multiple of m={m}")
    _warn_small_k(m, k)
    return shifted_sum(seq, (0, m, 2 * m, 3 * m))


@dataclass
class CharacterExpansion:
    m: int
    k: int
    nonunit_part: int
    cross_terms: dict[tuple[int, ...], complex]

    @property
    def value(self) -> complex:
        return self.nonunit_part + sum(self.cross_terms.values())


def character_expansion(m: int, budget: int | None = None) -> CharacterExpansion:
    check_modulus(m)
    budget = default_budget() if budget is None else budget
    work = 16 * m**4
    if work > budget:
        raise BudgetExceeded(f"character expansion for m={m} needs {work} iterations, budget is {budget}")
    table = quotient_table(m)
    k, km = table.k, table.period
    _warn_small_k(m, k)
    t = np.nonzero(table.unit_mask())[0]
    q = [table.values[(t + i * m) % km] for i in range(4)]

    flat = ((q[0] * m + q[1]) * m + q[2]) * m + q[3]
    hist = np.bincount(flat, minlength=m**4).reshape(m, m, m, m).astype(np.float64)
    # sums[a] = sum over units t of e_m(a1 Q(t) + a2 Q(t+m) + a3 Q(t+2m) + a4 Q(t+3m))
    sums = np.fft.ifftn(hist) * float(m**4)

    f = upper_half_table(m)
    weight = -2.0 / m * f
    weight[0] = 0.0
    const = np.zeros(m, dtype=np.complex128)
    const[0] = 1.0 / m

    terms = {}
    for subset in itertools.product((0, 1), repeat=4):
        acc = sums
        for use in reversed(subset):  # contract the last axis each time
            acc = acc @ (weight if use else const)
        terms[subset] = complex(acc)
    return CharacterExpansion(m, k, k * (m - table.phi_m), terms)


def theorem_lhs_via_characters(m: int, budget: int | None = None) -> float:
    return character_expansion(m, budget).value.real


def classify_modulus(m: int) -> dict[str, Any] | None:
    """Recognise m = p^tau or m = p q with p | q - 1."""
    factors = nt.factorize(m).factors
    if len(factors) == 1:
        p, tau = factors[0]
        return {"family": "prime_power", "p": p, "tau": tau}
    if len(factors) == 2 and factors[0][1] == factors[1][1] == 1:
        p, q = factors[0][0], factors[1][0]
        if (q - 1) % p == 0:
            return {"family": "two_prime", "p": p, "q": q}
    return None


def main_term(m: int, k: int) -> Fraction:
    return Fraction(k * m) - Fraction(2, 3) * k * nt.euler_phi(m)


def corollary_main_term(m: int) -> Fraction | None:
    fam = classify_modulus(m)
    if fam is None:
        return None
    if fam["family"] == "prime_power":
        return Fraction(fam["p"] ** (fam["tau"] + 1), 3)
    p, q = fam["p"], fam["q"]
    return Fraction(p * q * q, 3) + Fraction(2 * q * q, 3)


def bound_expression(m: int, k: int) -> float:
    return nt.euler_phi(m) / nt.euler_phi(k) * k**1.5 * math.log(m) ** 4


@dataclass
class BaselineStats:
    period: int
    pattern: tuple[int, ...]
    trials: int
    seed: int
    mean_abs: float
    max_abs: float
    percentile95: float
    generator: str = BASELINE_GENERATOR

    def to_dict(self) -> dict:
        d = asdict(self)
        d["pattern"] = list(self.pattern)
        return d


@dataclass
class TheoremReport:
    m: int
    k: int
    period: int
    lhs_direct: int
    lhs_characters: float
    lhs_characters_imag: float
    main_term: Fraction
    corollary_main: Fraction | None
    corollary: dict | None
    error: float
    bound_expr: float
    normalized: float
    theorem_applies: bool
    warnings: list[str] = field(default_factory=list)
    baseline: BaselineStats | None = None

    @property
    def cross_route_gap(self) -> float:
        return abs(self.lhs_characters - self.lhs_direct)

    @property
    def cross_route_ok(self) -> bool:
        return self.cross_route_gap < CROSS_ROUTE_TOLERANCE

    def to_dict(self) -> dict:
        cm = self.corollary_main
        out = {
            "m": self.m,
            "k": self.k,
            "period": self.period,
            "lhs_direct": self.lhs_direct,
            "lhs_characters": self.lhs_characters,
            "lhs_characters_imag": self.lhs_characters_imag,
            "cross_route_gap": self.cross_route_gap,
            "cross_route_ok": self.cross_route_ok,
            "main_num": self.main_term.numerator,
            "main_den": self.main_term.denominator,
            "corollary_main_num": cm.numerator if cm is not None else None,
            "corollary_main_den": cm.denominator if cm is not None else None,
            "corollary": self.corollary,
            "error": self.error,
            "error_over_main": self.error / float(self.main_term) if self.main_term else None,
            "bound_expr": self.bound_expr,
            "normalized": self.normalized,
            "theorem_applies": self.theorem_applies,
            "warnings": self.warnings,
        }
        if self.baseline is not None:
            out["baseline"] = self.baseline.to_dict()
        return out

    def csv_row(self) -> list:
        d = self.to_dict()
        return ["" if d[c] is None else d[c] for c in CSV_COLUMNS]


def theorem_report(m: int, budget: int | None = None) -> TheoremReport:
    check_modulus(m)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", SmallMultiplierWarning)
        seq = euler_threshold_sequence(m)
        k = seq.period // m
        lhs = theorem_lhs_direct(m, seq)
        expansion = character_expansion(m, budget)
    notes = sorted({str(w.message) for w in caught})
    main = main_term(m, k)
    fam = classify_modulus(m)
    z = expansion.value
    return TheoremReport(
        m=m,
        k=k,
        period=k * m,
        lhs_direct=lhs,
        lhs_characters=z.real,
        lhs_characters_imag=z.imag,
        main_term=main,
        corollary_main=corollary_main_term(m),
        corollary=fam,
        error=lhs - float(main),
        bound_expr=bound_expression(m, k),
        normalized=lhs / math.sqrt(k * m),
        theorem_applies=k > 3,
        warnings=notes,
    )


def random_baseline(T: int, pattern, trials: int, seed: int) -> BaselineStats:
    """Pattern sums of uniform random +-1 sequences of period T, scaled by sqrt(T)."""
    pattern = _as_pattern(pattern)
    if trials < 1:
        raise InvalidArgument("trials must be >= 1")
    if pattern.shifts[-1] >= T:
        raise InvalidArgument(f"pattern {pattern.shifts} does not fit period {T}")
    rng = np.random.default_rng(seed)
    bits = rng.integers(0, 2, size=(trials, T), dtype=np.int8)
    x = 1 - 2 * bits.astype(np.int64)
    prod = np.ones_like(x)
    for d in pattern.shifts:
        prod *= np.roll(x, -d, axis=1)
    scaled = np.abs(prod.sum(axis=1)) / math.sqrt(T)
    return BaselineStats(
        period=T,
        pattern=pattern.shifts,
        trials=trials,
        seed=seed,
        mean_abs=float(scaled.mean()),
        max_abs=float(scaled.max()),
        percentile95=float(np.percentile(scaled, 95)),
    )


# -- sweeps ------------------------------------------------------------------


def _require_odd_prime(p: int) -> None:
    if p < 3 or not nt.is_prime(p):
        raise NotPrime(f"{p} is not an odd prime")


def modulus_for(spec) -> int:
    """Resolve ``25``, ``"m=25"``, ``{"p": 5, "tau": 2}`` or ``{"p": 3, "q": 7}`` to m."""
    if isinstance(spec, str):
        spec = parse_spec(spec)
    if isinstance(spec, int):
        check_modulus(spec)
        return spec
    spec = dict(spec)
    if "m" in spec:
        check_modulus(spec["m"])
        return spec["m"]
    if "fermat" in spec:
        _require_odd_prime(spec["fermat"])
        return spec["fermat"]
    if "p" in spec and "tau" in spec:
        _require_odd_prime(spec["p"])
        if spec["tau"] < 1:
            raise InvalidArgument("tau must be >= 1")
        return spec["p"] ** spec["tau"]
    if "p" in spec and "q" in spec:
        p, q = spec["p"], spec["q"]
        _require_odd_prime(p)
        _require_odd_prime(q)
        if p == q:
            raise InvalidArgument("p and q must differ")
        if (q - 1) % p:
            raise DivisibilityViolation(f"{p} does not divide {q} - 1")
        return p * q
    raise InvalidArgument(f"cannot interpret parameter spec {spec!r}")


_SPEC_ITEM = re.compile(r"^\s*(m|p|q|tau|fermat)\s*=\s*(\d+)\s*$")


def parse_spec(text: str) -> dict[str, int] | int:
    text = text.strip()
    if text.isdigit():
        return int(text)
    out = {}
    for part in text.split(","):
        match = _SPEC_ITEM.match(part)
        if not match:
            raise InvalidArgument(f"bad parameter spec {text!r}")
        out[match.group(1)] = int(match.group(2))
    return out


@dataclass
class SweepFailure:
    spec: Any
    error: str

    def to_dict(self) -> dict:
        return {"spec": self.spec if not isinstance(self.spec, dict) else dict(self.spec), "error": self.error}


def sweep(params, budget: int | None = None, threads: int = 1) -> list[TheoremReport | SweepFailure]:
    params = list(params)

    def run(spec):
        try:
            return theorem_report(modulus_for(spec), budget)
        except EqseqError as exc:
            log.warning("sweep item %r failed: %s", spec, exc)
            return SweepFailure(spec, f"{type(exc).__name__}: {exc}")

    if threads > 1 and len(params) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(run, params))
    return [run(spec) for spec in params]


def reports_to_json(items) -> str:
    return json.dumps([item.to_dict() for item in items], indent=2, sort_keys=True)


def reports_to_csv(items) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for item in items:
        if isinstance(item, TheoremReport):
            writer.writerow(item.csv_row())
    return buf.getvalue()
