"""Deterministic 64-bit random streams.

All randomness in the package flows through :class:`Stream`, a splitmix64
generator.  Streams are derived from a master seed and string labels, so a
whole pipeline run is a pure function of its (instance, params, seed)
arguments.  Reproducibility is promised per build of this package, not
across other implementations.
"""

from __future__ import annotations

from fractions import Fraction

_MASK = (1 << 64) - 1


def _splitmix64(state: int) -> tuple[int, int]:
    state = (state + 0x9E3779B97F4A7C15) & _MASK
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return state, z ^ (z >> 31)


def _fold_label(seed: int, label: str) -> int:
    # FNV-1a over the utf-8 bytes, then one scramble round.
    h = 0xCBF29CE484222325
    for b in label.encode("utf-8"):
        h = ((h ^ b) * 0x100000001B3) & _MASK
    _, out = _splitmix64((seed ^ h) & _MASK)
    return out


class Stream:
    """Sequential splitmix64 stream with labelled child derivation."""

    __slots__ = ("_state",)

    def __init__(self, seed: int):
        self._state = seed & _MASK

    def derive(self, label: str) -> "Stream":
        """Child stream; does not advance this stream."""
        return Stream(_fold_label(self._state, label))

    def spawn(self, label: str, index: int) -> "Stream":
        return Stream(_fold_label(self._state, f"{label}:{index}"))

    def u64(self) -> int:
        self._state, value = _splitmix64(self._state)
        return value

    def randrange(self, n: int) -> int:
        """Uniform integer in [0, n) by rejection sampling."""
        if n <= 0:
            raise ValueError("randrange bound must be positive")
        limit = _MASK - (_MASK + 1) % n
        while True:
            v = self.u64()
            if v <= limit:
                return v % n

    def bernoulli(self, p: Fraction | float) -> bool:
        """Exact coin flip: true with probability floor(p * 2^64) / 2^64."""
        if p <= 0:
            return False
        if p >= 1:
            return True
        threshold = (Fraction(p).numerator << 64) // Fraction(p).denominator
        return self.u64() < threshold

    def choice(self, seq):
        return seq[self.randrange(len(seq))]

    def shuffle(self, items: list) -> None:
        for i in range(len(items) - 1, 0, -1):
            j = self.randrange(i + 1)
            items[i], items[j] = items[j], items[i]

    def sample(self, seq, k: int) -> list:
        """k distinct elements, order randomised (partial Fisher-Yates)."""
        items = list(seq)
        if k > len(items):
            raise ValueError("sample larger than population")
        for i in range(k):
            j = i + self.randrange(len(items) - i)
            items[i], items[j] = items[j], items[i]
        return items[:k]
