"""Words, bifix indicators, the jump-target mapping and class census.

A bifix of a word is a proper prefix that is also a suffix (a border).
The bifix indicator of a length-n pattern is the binary word h_1..h_{n-1}
with h_i = 1 exactly when the length-i prefix equals the length-i suffix.
Indicator positions follow the 1-based convention in all text output;
storage is 0-based.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass

from .budget import DEFAULT_ENUM_BUDGET, check_enum_budget


class Ordering(enum.Enum):
    """Componentwise partial-order verdict for indicator or jump-word pairs."""

    EQUAL = "equal"
    LESS = "less"
    GREATER = "greater"
    INCOMPARABLE = "incomparable"


@dataclass(frozen=True)
class Word:
    """A finite word over the alphabet {0, ..., alphabet_size - 1}."""

    symbols: tuple[int, ...]
    alphabet_size: int

    def __post_init__(self) -> None:
        if self.alphabet_size < 2:
            raise ValueError(f"alphabet size must be >= 2, got {self.alphabet_size}")
        for sym in self.symbols:
            if not 0 <= sym < self.alphabet_size:
                raise ValueError(
                    f"symbol {sym} out of range for alphabet size {self.alphabet_size}"
                )

    def __len__(self) -> int:
        return len(self.symbols)

    @classmethod
    def parse(cls, text: str, alphabet_size: int) -> Word:
        """Parse "10011" (alphabets up to 10) or "0,1,12,3" (larger alphabets)."""
        text = text.strip()
        if not text:
            raise ValueError("empty word")
        if "," in text:
            symbols = tuple(int(part) for part in text.split(","))
        else:
            if alphabet_size > 10:
                raise ValueError(
                    f"alphabet size {alphabet_size} needs comma-separated symbols"
                )
            if not text.isdigit():
                raise ValueError(f"malformed word {text!r}: expected digits")
            symbols = tuple(int(ch) for ch in text)
        return cls(symbols, alphabet_size)

    def text(self) -> str:
        if self.alphabet_size <= 10:
            return "".join(str(s) for s in self.symbols)
        return ",".join(str(s) for s in self.symbols)


@dataclass(frozen=True)
class BifixIndicator:
    """Binary word h_1..h_{n-1} marking the border lengths of a length-n pattern."""

    bits: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.bits) < 1:
            raise ValueError("indicator needs at least one bit (pattern length >= 2)")
        for bit in self.bits:
            if bit not in (0, 1):
                raise ValueError(f"indicator bits must be 0 or 1, got {bit}")

    @property
    def n(self) -> int:
        """Length of the patterns this indicator describes."""
        return len(self.bits) + 1

    @classmethod
    def parse(cls, text: str) -> BifixIndicator:
        text = text.strip()
        if not text or set(text) - {"0", "1"}:
            raise ValueError(f"malformed indicator {text!r}: expected a binary string")
        return cls(tuple(int(ch) for ch in text))

    def text(self) -> str:
        return "".join(str(b) for b in self.bits)


@dataclass(frozen=True)
class SWord:
    """Jump targets s_0..s_{n-1} with 0 <= s_i <= i, defining a chase chain."""

    targets: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.targets:
            raise ValueError("jump-target word must be nonempty")
        for i, target in enumerate(self.targets):
            if not 0 <= target <= i:
                raise ValueError(f"target s_{i}={target} violates 0 <= s_{i} <= {i}")

    @property
    def n(self) -> int:
        return len(self.targets)

    @classmethod
    def parse(cls, text: str) -> SWord:
        try:
            targets = tuple(int(part) for part in text.strip().split(","))
        except ValueError as exc:
            raise ValueError(f"malformed jump-target word {text!r}") from exc
        return cls(targets)

    def text(self) -> str:
        return ",".join(str(t) for t in self.targets)


def bifix_indicator(word: Word) -> BifixIndicator:
    """Bifix indicator of a pattern, computed from its border chain.

    Runs in O(n) via the classic failure-function construction; the
    quadratic prefix/suffix comparison serves as the test oracle.
    """
    n = len(word)
    if n < 2:
        raise ValueError(f"patterns must have length >= 2, got {n}")
    b = word.symbols
    fail = [0] * n  # fail[i] = longest proper border of b[:i+1]
    k = 0
    for i in range(1, n):
        while k > 0 and b[i] != b[k]:
            k = fail[k - 1]
        if b[i] == b[k]:
            k += 1
        fail[i] = k
    bits = [0] * (n - 1)
    length = fail[n - 1]
    while length > 0:
        bits[length - 1] = 1
        length = fail[length - 1]
    return BifixIndicator(tuple(bits))


def compare_indicators(h: BifixIndicator, h_prime: BifixIndicator) -> Ordering:
    """Componentwise partial order; LESS means h <= h' with h != h'."""
    if len(h.bits) != len(h_prime.bits):
        raise ValueError(f"indicator lengths differ: {len(h.bits)} vs {len(h_prime.bits)}")
    le = all(a <= b for a, b in zip(h.bits, h_prime.bits))
    ge = all(a >= b for a, b in zip(h.bits, h_prime.bits))
    if le and ge:
        return Ordering.EQUAL
    if le:
        return Ordering.LESS
    if ge:
        return Ordering.GREATER
    return Ordering.INCOMPARABLE


def _strict_positions(h: BifixIndicator, h_prime: BifixIndicator) -> list[int]:
    """1-based positions with h_i = 0 and h'_i = 1, for a strictly ordered pair."""
    if compare_indicators(h, h_prime) is not Ordering.LESS:
        raise ValueError("indicator pair is not strictly ordered (need h < h')")
    return [i + 1 for i, (a, b) in enumerate(zip(h.bits, h_prime.bits)) if a == 0 and b == 1]


def k0_of_pair(h: BifixIndicator, h_prime: BifixIndicator) -> int:
    """n plus the first 1-based position where h lacks a border that h' has.

    This is the classical statement of the separation threshold for a
    strictly ordered indicator pair. It is NOT sharp in general: the
    occurrence probabilities of the two classes can stay equal beyond it.
    See k0_sharp for the threshold at which they provably diverge.
    """
    return h.n + min(_strict_positions(h, h_prime))


def k0_sharp(h: BifixIndicator, h_prime: BifixIndicator) -> int:
    """Sharp separation threshold for a strictly ordered indicator pair.

    Equals the chain-comparison threshold of the associated jump-target
    words: the occurrence probabilities of the two classes agree exactly
    for k < k0_sharp and separate strictly for every k >= k0_sharp.
    Equivalently 2n - max{i : h_i = 0 and h'_i = 1}.
    """
    return comparison_threshold(s_from_h(h), s_from_h(h_prime))


def s_from_h(h: BifixIndicator) -> SWord:
    """Jump-target word (0, 1-h_{n-1}, 1-h_{n-2}, ..., 1-h_1) of an indicator."""
    n = h.n
    targets = [0] + [1 - h.bits[n - i - 1] for i in range(1, n)]
    return SWord(tuple(targets))


def compare_swords(s: SWord, s_prime: SWord) -> Ordering:
    if s.n != s_prime.n:
        raise ValueError(f"jump-target word lengths differ: {s.n} vs {s_prime.n}")
    le = all(a <= b for a, b in zip(s.targets, s_prime.targets))
    ge = all(a >= b for a, b in zip(s.targets, s_prime.targets))
    if le and ge:
        return Ordering.EQUAL
    if ge:
        return Ordering.GREATER
    if le:
        return Ordering.LESS
    return Ordering.INCOMPARABLE


def comparison_threshold(s: SWord, s_prime: SWord) -> int:
    """n + 1 + min{i - s_i : s_i > s'_i} for a strictly ordered pair s > s'.

    The chains of s and s' have identical reach probabilities below this
    index and strictly ordered ones from it onward.
    """
    if compare_swords(s, s_prime) is not Ordering.GREATER:
        raise ValueError("jump-target pair is not strictly ordered (need s > s')")
    gaps = [i - a for i, (a, b) in enumerate(zip(s.targets, s_prime.targets)) if a > b]
    return s.n + 1 + min(gaps)


@dataclass(frozen=True)
class CensusClass:
    """One bifix class: exact population plus a capped list of representatives."""

    indicator: BifixIndicator
    count: int
    representatives: tuple[Word, ...]


def census(
    n: int,
    alphabet_size: int,
    budget: int = DEFAULT_ENUM_BUDGET,
    max_representatives: int = 4,
) -> dict[BifixIndicator, CensusClass]:
    """Partition all length-n words by bifix indicator via exhaustive enumeration.

    Keys are exactly the indicators realizable at (n, alphabet_size); class
    sizes sum to alphabet_size**n. At most `max_representatives` words are
    retained per class (enumeration order, hence deterministic).
    """
    if n < 2:
        raise ValueError(f"census needs pattern length >= 2, got {n}")
    if alphabet_size < 2:
        raise ValueError(f"alphabet size must be >= 2, got {alphabet_size}")
    check_enum_budget(alphabet_size**n, budget, f"census(n={n}, L={alphabet_size})")
    counts: dict[BifixIndicator, int] = {}
    reps: dict[BifixIndicator, list[Word]] = {}
    for symbols in itertools.product(range(alphabet_size), repeat=n):
        word = Word(symbols, alphabet_size)
        h = bifix_indicator(word)
        counts[h] = counts.get(h, 0) + 1
        kept = reps.setdefault(h, [])
        if len(kept) < max_representatives:
            kept.append(word)
    return {
        h: CensusClass(h, counts[h], tuple(reps[h]))
        for h in sorted(counts, key=lambda ind: ind.bits)
    }
