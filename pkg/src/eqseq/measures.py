"""Periodic pattern sums and the correlation measures of order k.

Periodic mode evaluates

    theta_k(S) = max_D | sum_{n<T} (-1)^(s_{n+d_1} + ... + s_{n+d_k}) |

with indices mod T. Because a pattern sum is invariant under a common cyclic
shift of all d_i, the search fixes d_1 = 0. Aperiodic mode evaluates the
Mauduit-Sarkozy measure C_k(S, N) on the first N terms, with the same
reduction: shifting D by c is the same as sliding the window start, so the
maximum over (U, D) equals the maximum over d_1 = 0 patterns of the largest
window sum, i.e. max(prefix) - min(prefix).

Ties resolve to the first maximiser in lexicographic pattern order.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .config import default_budget
from .errors import BudgetExceeded, InvalidArgument, ShiftOutOfRange
from .sequences import BinarySequence

# rows of partial products processed per matrix product
_BATCH_ELEMENTS = 1 << 22


@dataclass(frozen=True)
class ShiftPattern:
    shifts: tuple[int, ...]

    def __post_init__(self):
        shifts = tuple(int(d) for d in self.shifts)
        if not shifts:
            raise InvalidArgument("a shift pattern needs at least one shift")
        if shifts[0] < 0 or any(b <= a for a, b in zip(shifts, shifts[1:])):
            raise InvalidArgument(f"shifts must be nonnegative and strictly increasing: {shifts}")
        object.__setattr__(self, "shifts", shifts)

    @classmethod
    def of(cls, *shifts: int) -> "ShiftPattern":
        return cls(tuple(shifts))

    @property
    def order(self) -> int:
        return len(self.shifts)

    def shifted(self, c: int, period: int) -> "ShiftPattern":
        return ShiftPattern(tuple(sorted((d + c) % period for d in self.shifts)))


@dataclass
class CorrelationReport:
    order: int
    mode: str
    value: int
    argmax: ShiftPattern
    normalized: float
    exhaustive: bool
    work_budget_used: int
    length: int
    window: int | None = None  # U, aperiodic mode only
    extra: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        out = {
            "order": self.order,
            "mode": self.mode,
            "value": int(self.value),
            "argmax": list(self.argmax.shifts),
            "normalized": float(self.normalized),
            "exhaustive": self.exhaustive,
            "work_budget_used": int(self.work_budget_used),
        }
        if self.window is not None:
            out["U"] = self.window
            out["N"] = self.length
        return out


def _as_pattern(pattern) -> ShiftPattern:
    return pattern if isinstance(pattern, ShiftPattern) else ShiftPattern(tuple(pattern))


def pattern_sum(seq: BinarySequence, pattern: ShiftPattern | Sequence[int]) -> int:
    pattern = _as_pattern(pattern)
    T = seq.period
    if pattern.shifts[-1] >= T:
        raise ShiftOutOfRange(f"shift {pattern.shifts[-1]} is not below the period {T}")
    x = seq.signs()
    prod = np.ones(T, dtype=np.int64)
    for d in pattern.shifts:
        prod *= np.roll(x, -d)
    return int(prod.sum())


def _check_budget(work: int, budget: int | None) -> int:
    budget = default_budget() if budget is None else budget
    if work > budget:
        raise BudgetExceeded(f"exhaustive search needs {work} iterations, budget is {budget}")
    return work


def periodic_correlation_measure(
    seq: BinarySequence, order: int, budget: int | None = None
) -> CorrelationReport:
    T = seq.period
    if order < 1 or order > T:
        raise InvalidArgument(f"order must lie in [1, {T}]")
    work = _check_budget(math.comb(T - 1, order - 1) * T, budget)
    x = seq.signs().astype(np.float64)

    if order == 1:
        best = int(x.sum())
        return _periodic_report(order, abs(best), (0,), T, work)

    # circ[d, n] = x[(n + d) % T]
    idx = (np.arange(T)[:, None] + np.arange(T)[None, :]) % T
    circ = x[idx]

    best_val = -1
    best_pat: tuple[int, ...] = ()
    inner = order - 2
    batch = max(1, _BATCH_ELEMENTS // T)
    prefixes = itertools.combinations(range(1, T), inner)
    while True:
        chunk = list(itertools.islice(prefixes, batch))
        if not chunk:
            break
        pre = np.array(chunk, dtype=np.int64).reshape(len(chunk), inner)
        partial = np.broadcast_to(x, (len(chunk), T)).copy()
        for j in range(inner):
            partial *= circ[pre[:, j]]
        sums = np.abs(partial @ circ.T)  # sums[b, d] over all last shifts d
        last = pre[:, -1] if inner else np.zeros(len(chunk), dtype=np.int64)
        sums[np.arange(T)[None, :] <= last[:, None]] = -1.0
        flat = int(np.argmax(sums))
        b, d = divmod(flat, T)
        val = int(round(sums[b, d]))
        if val > best_val:
            best_val = val
            best_pat = (0, *map(int, pre[b]), d)
    return _periodic_report(order, best_val, best_pat, T, work)


def _periodic_report(order, value, pattern, T, work) -> CorrelationReport:
    return CorrelationReport(
        order=order,
        mode="periodic",
        value=value,
        argmax=ShiftPattern(tuple(pattern)),
        normalized=value / math.sqrt(T),
        exhaustive=True,
        work_budget_used=work,
        length=T,
    )


def aperiodic_correlation_measure(
    seq: BinarySequence, N: int, order: int, budget: int | None = None
) -> CorrelationReport:
    if N < 1 or N > seq.period:
        raise InvalidArgument(f"N must lie in [1, {seq.period}]")
    if order < 1 or order > N:
        raise InvalidArgument(f"order must lie in [1, {N}]")
    work = _check_budget(math.comb(N - 1, order - 1) * N, budget)
    x = seq.signs()[:N]
    # windows[d, n] = x[n + d], zero past the end
    padded = np.concatenate([x, np.zeros(N, dtype=np.int64)])
    windows = padded[np.arange(N)[:, None] + np.arange(N)[None, :]]

    best = (-1, (), 0)
    heads = itertools.combinations(range(1, N), order - 2) if order > 1 else [None]
    for head in heads:
        if head is None:
            rows, first = windows[:1], 0
            head = ()
        else:
            first = head[-1] + 1 if head else 1
            if first >= N:
                continue
            q = x.copy()
            for d in head:
                q = q * windows[d]
            rows = q[None, :] * windows[first:]
        csum = np.zeros((rows.shape[0], N + 1), dtype=np.int64)
        np.cumsum(rows, axis=1, out=csum[:, 1:])
        hi = csum.argmax(axis=1)
        lo = csum.argmin(axis=1)
        span = np.arange(len(hi))
        spread = csum[span, hi] - csum[span, lo]
        r = int(np.argmax(spread))
        if spread[r] > best[0]:
            a, b = sorted((int(hi[r]), int(lo[r])))
            base = (0,) if order == 1 else (0, *head, first + r)
            best = (int(spread[r]), tuple(d + a for d in base), b - a)
    value, shifts, U = best
    return CorrelationReport(
        order=order,
        mode="aperiodic",
        value=value,
        argmax=ShiftPattern(shifts),
        normalized=value / math.sqrt(N),
        exhaustive=True,
        work_budget_used=work,
        length=N,
        window=U,
    )
