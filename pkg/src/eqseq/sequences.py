"""Threshold binary sequences built from Euler and Fermat quotients.

Bit ``t`` is 0 when ``Q_m(t)/m < 1/2`` and 1 otherwise. For odd ``m`` this is
the integer test ``Q_m(t) >= (m + 1) // 2``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

import numpy as np

from . import numtheory as nt
from .errors import DivisibilityViolation, InvalidArgument, NotPrime
from .quotients import DEFAULT_TABLE_CAP, QuotientTable, quotient_table


@dataclass(frozen=True)
class BinarySequence:
    bits: np.ndarray = field(repr=False)
    provenance: dict[str, Any] = field(default_factory=dict)
    quotients: QuotientTable | None = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        bits = np.asarray(self.bits, dtype=np.int8)
        if bits.ndim != 1 or len(bits) == 0:
            raise InvalidArgument("a sequence needs a nonempty 1-d bit array")
        if not np.isin(bits, (0, 1)).all():
            raise InvalidArgument("bits must be 0 or 1")
        bits.flags.writeable = False
        object.__setattr__(self, "bits", bits)

    @property
    def period(self) -> int:
        return len(self.bits)

    def __len__(self) -> int:
        return len(self.bits)

    def signs(self) -> np.ndarray:
        """The +-1 view ``(-1)**s_t``."""
        return 1 - 2 * self.bits.astype(np.int64)

    def to_bitstring(self) -> str:
        return "".join("1" if b else "0" for b in self.bits)

    @classmethod
    def from_bitstring(cls, text: str, **provenance) -> "BinarySequence":
        text = text.strip()
        if not text or set(text) - {"0", "1"}:
            raise InvalidArgument("bit string must consist of 0/1 characters")
        return cls(np.frombuffer(text.encode(), dtype=np.uint8) - ord("0"), provenance)


def _require_odd_prime(p: int) -> None:
    if p < 3 or not nt.is_prime(p):
        raise NotPrime(f"{p} is not an odd prime")


def euler_threshold_sequence(m: int, cap: int = DEFAULT_TABLE_CAP) -> BinarySequence:
    table = quotient_table(m, cap=cap)
    bits = (table.values >= (m + 1) // 2).astype(np.int8)
    return BinarySequence(bits, {"construction": "euler", "m": m, "k": table.k}, table)


def _relabel(seq: BinarySequence, **provenance) -> BinarySequence:
    return BinarySequence(seq.bits, {**provenance, "m": seq.provenance["m"], "k": seq.provenance["k"]}, seq.quotients)


def prime_power_sequence(p: int, tau: int, cap: int = DEFAULT_TABLE_CAP) -> BinarySequence:
    _require_odd_prime(p)
    if tau < 1:
        raise InvalidArgument("tau must be >= 1")
    return _relabel(euler_threshold_sequence(p**tau, cap), construction="prime_power", p=p, tau=tau)


def two_prime_sequence(p: int, q: int, cap: int = DEFAULT_TABLE_CAP) -> BinarySequence:
    _require_odd_prime(p)
    _require_odd_prime(q)
    if p == q:
        raise InvalidArgument("p and q must be distinct")
    if (q - 1) % p:
        raise DivisibilityViolation(f"{p} does not divide {q} - 1")
    return _relabel(euler_threshold_sequence(p * q, cap), construction="two_prime", p=p, q=q)


def fermat_sequence(p: int, cap: int = DEFAULT_TABLE_CAP) -> BinarySequence:
    _require_odd_prime(p)
    return _relabel(euler_threshold_sequence(p, cap), construction="fermat", p=p)
