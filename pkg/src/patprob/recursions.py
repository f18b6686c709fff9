"""Exact recursions for the first-occurrence and occurrence probabilities.

For a pattern with bifix indicator h over an alphabet of size L, p_k is the
probability that the first occurrence ends exactly at position k of a
uniform random word, and P_k = sum_{i<=k} p_i is the probability of at
least one occurrence in a random word of length k. Three independent
routes compute the same table:

  * the long recursion on p_k, with the full history sum,
  * the differenced (n+1)-term recursion on p_k,
  * the direct recursion on P_k (with p recovered as first differences).

All three use exact arithmetic only; an underflowing subtraction means a
transcription bug and aborts instead of clamping.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from typing import Iterator

from .numerics import ExactProb
from .patterns import BifixIndicator


@dataclass(frozen=True)
class ProbTable:
    """Per-k table of p_k and P_k (exact), with the method that produced it."""

    h: BifixIndicator
    L: int
    upto: int
    p: tuple[ExactProb, ...]
    P: tuple[ExactProb, ...]
    method: str

    def __post_init__(self) -> None:
        n = self.h.n
        if len(self.p) != self.upto + 1 or len(self.P) != self.upto + 1:
            raise ValueError("table arrays must cover k = 0..upto")
        zero = ExactProb.zero(self.L)
        for k in range(min(self.upto, n - 1) + 1):
            if self.p[k] != zero or self.P[k] != zero:
                raise ValueError(f"p_{k} and P_{k} must be 0 below the pattern length")
        running = zero
        for k in range(self.upto + 1):
            running = running + self.p[k]
            if running != self.P[k]:
                raise ValueError(f"P_{k} does not equal the prefix sum of p")
        if self.upto >= 0 and ExactProb.one(self.L) < self.P[self.upto]:
            raise ValueError("P exceeded 1")

    @property
    def n(self) -> int:
        return self.h.n

    def to_json_dict(self) -> dict:
        return {
            "h": self.h.text(),
            "L": self.L,
            "n": self.n,
            "method": self.method,
            "rows": [
                {"k": k, "p": self.p[k].to_json_dict(), "P": self.P[k].to_json_dict()}
                for k in range(self.upto + 1)
            ],
        }

    def to_csv(self, digits: int = 12) -> str:
        lines = ["k,p,P"]
        for k in range(self.upto + 1):
            lines.append(f"{k},{self.p[k].to_decimal(digits)},{self.P[k].to_decimal(digits)}")
        return "\n".join(lines) + "\n"


def _border_coeffs(h: BifixIndicator, L: int) -> list[tuple[int, ExactProb]]:
    """(i, 1/L**(n-i)) for every border position i with h_i = 1."""
    n = h.n
    return [(i, ExactProb.inv_power(L, n - i)) for i in range(1, n) if h.bits[i - 1] == 1]


def _prefix_sums(p: list[ExactProb], L: int) -> list[ExactProb]:
    out = []
    running = ExactProb.zero(L)
    for value in p:
        running = running + value
        out.append(running)
    return out


def p_table_long(h: BifixIndicator, L: int, upto: int) -> ProbTable:
    """p_k = 1/L**n - (1/L**n) * sum_{i=n}^{k-n} p_i - sum_i h_i/L**(n-i) * p_{k-n+i}.

    The middle sum is empty while k < 2n.
    """
    if upto < 0:
        raise ValueError(f"upto must be >= 0, got {upto}")
    n = h.n
    zero = ExactProb.zero(L)
    inv_ln = ExactProb.inv_power(L, n)
    borders = _border_coeffs(h, L)
    p = [zero] * min(n, upto + 1)
    mid = zero  # sum of p_i for n <= i <= k - n
    for k in range(n, upto + 1):
        if k - n >= n:
            mid = mid + p[k - n]
        subtrahend = inv_ln * mid
        for i, coeff in borders:
            subtrahend = subtrahend + coeff * p[k - n + i]
        p.append(inv_ln - subtrahend)
    return ProbTable(h, L, upto, tuple(p), tuple(_prefix_sums(p, L)), "long-recursion")


def p_table_short(h: BifixIndicator, L: int, upto: int) -> ProbTable:
    """(n+1)-term recursion obtained by differencing the long one.

    p_{k+1} = p_k - p_{k+1-n}/L**n - sum_i h_i/L**(n-i) * (p_{k-n+i+1} - p_{k-n+i}).
    Positive and negative contributions are accumulated separately so the
    nonnegative arithmetic type never sees an intermediate negative.
    """
    if upto < 0:
        raise ValueError(f"upto must be >= 0, got {upto}")
    n = h.n
    zero = ExactProb.zero(L)
    inv_ln = ExactProb.inv_power(L, n)
    borders = _border_coeffs(h, L)
    p = [zero] * min(n, upto + 1)
    if upto >= n:
        p.append(inv_ln)
    for k in range(n, upto):
        pos = p[k]
        neg = inv_ln * p[k + 1 - n]
        for i, coeff in borders:
            pos = pos + coeff * p[k - n + i]
            neg = neg + coeff * p[k - n + i + 1]
        p.append(pos - neg)
    return ProbTable(h, L, upto, tuple(p), tuple(_prefix_sums(p, L)), "short-recursion")


def iter_P(h: BifixIndicator, L: int) -> Iterator[ExactProb]:
    """Yield P_0, P_1, ... indefinitely, keeping only a window of n+1 values.

    P_{k+1} = 1/L**n + P_k - P_{k+1-n}/L**n
              - sum_i h_i/L**(n-i) * (P_{k-n+i+1} - P_{k-n+i}).
    """
    n = h.n
    zero = ExactProb.zero(L)
    inv_ln = ExactProb.inv_power(L, n)
    borders = _border_coeffs(h, L)
    window: deque[ExactProb] = deque(maxlen=n + 1)  # P_{k-n} .. P_k
    for _ in range(n):
        window.append(zero)
        yield zero
    window.append(inv_ln)
    yield inv_ln
    while True:
        pos = inv_ln + window[n]
        neg = inv_ln * window[1]
        for i, coeff in borders:
            pos = pos + coeff * window[i]
            neg = neg + coeff * window[i + 1]
        nxt = pos - neg
        window.append(nxt)  # maxlen evicts P_{k-n}
        yield nxt


def P_table(h: BifixIndicator, L: int, upto: int) -> ProbTable:
    """Table built from the direct recursion on P; p recovered by differencing."""
    if upto < 0:
        raise ValueError(f"upto must be >= 0, got {upto}")
    P = list(itertools.islice(iter_P(h, L), upto + 1))
    p = [ExactProb.zero(L)]
    for k in range(1, upto + 1):
        p.append(P[k] - P[k - 1])
    return ProbTable(h, L, upto, tuple(p), tuple(P), "P-recursion")


def P_at(h: BifixIndicator, L: int, k: int) -> ExactProb:
    """Single P_k without materializing the table (constant memory in k)."""
    if k < 0:
        raise ValueError(f"k must be >= 0, got {k}")
    return next(itertools.islice(iter_P(h, L), k, None))


def expected_wait_closed(h: BifixIndicator, L: int) -> int:
    """Expected first-occurrence position: L**n + sum_i h_i * L**i, exactly."""
    return L**h.n + sum(L**i for i in range(1, h.n) if h.bits[i - 1] == 1)


@dataclass(frozen=True)
class SeriesResult:
    """Partial sum of sum_k (1 - P_k) with its estimated tail bound."""

    value: float
    tail_bound: float
    upto: int
    converged: bool

    def to_json_dict(self) -> dict:
        return {
            "value": self.value,
            "tail_bound": self.tail_bound,
            "upto": self.upto,
            "converged": self.converged,
        }


# Ratio window that must agree before the geometric tail bound is trusted.
_STABLE_RATIOS = 5
_RATIO_SPREAD = 1e-4


def expected_wait_series(
    h: BifixIndicator, L: int, tol: float, k_max: int = 50_000
) -> SeriesResult:
    """Approximate the expected wait as sum_{k=0..K} (1 - P_k).

    Stops at the smallest K <= k_max whose estimated tail is below `tol`.
    The tail is bounded geometrically from the empirical decay ratio
    r = (1 - P_K) / (1 - P_{K-1}) once the last few ratios are below 1 and
    agree closely; the linear recursion's dominant-root decay justifies the
    geometric model. If k_max is hit first the partial result is flagged
    as unconverged.
    """
    if tol <= 0:
        raise ValueError(f"tol must be positive, got {tol}")
    one = ExactProb.one(L)
    total = ExactProb.zero(L)
    ratios: deque[float] = deque(maxlen=_STABLE_RATIOS)
    prev_q = None
    bound = float("inf")
    upto = 0
    for k, P_k in enumerate(iter_P(h, L)):
        q = one - P_k
        total = total + q
        q_float = float(q)
        if prev_q is not None and prev_q > 0.0:
            ratios.append(q_float / prev_q)
        prev_q = q_float
        upto = k
        if len(ratios) == _STABLE_RATIOS:
            r = max(ratios)
            if r < 1.0 and max(ratios) - min(ratios) <= _RATIO_SPREAD:
                bound = q_float * r / (1.0 - r)
                if bound < tol:
                    return SeriesResult(float(total), bound, k, True)
        if k >= k_max:
            break
    return SeriesResult(float(total), bound, upto, False)
