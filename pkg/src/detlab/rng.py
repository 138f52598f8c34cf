"""Portable 64-bit pseudo-random generator.

Generated automata are part of the fixture contract, so the random stream is
pinned to SplitMix64 (Steele, Lea & Flood 2014) rather than to Python's
Mersenne Twister.  Any implementation reproducing the recurrence below and the
rejection rule in :meth:`SplitMix64.below` produces identical automata.
"""

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15


class SplitMix64:
    """SplitMix64 stream seeded with an arbitrary integer (reduced mod 2**64)."""

    def __init__(self, seed: int = 0):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + GOLDEN_GAMMA) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def below(self, bound: int) -> int:
        """Uniform integer in ``[0, bound)`` by rejection of the biased tail."""
        if bound <= 0:
            raise ValueError("bound must be positive")
        limit = ((1 << 64) // bound) * bound
        while True:
            x = self.next_u64()
            if x < limit:
                return x % bound

    def randint(self, lo: int, hi: int) -> int:
        """Uniform integer in the closed range ``[lo, hi]``."""
        return lo + self.below(hi - lo + 1)

    def random(self) -> float:
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))

    def sample(self, population: int, k: int) -> list[int]:
        """First ``k`` entries of a partial Fisher-Yates shuffle of ``range(population)``."""
        if not 0 <= k <= population:
            raise ValueError(f"cannot sample {k} of {population}")
        pool = list(range(population))
        for i in range(k):
            j = i + self.below(population - i)
            pool[i], pool[j] = pool[j], pool[i]
        return pool[:k]

    def permutation(self, n: int) -> list[int]:
        return self.sample(n, n)

    def nonempty_subset(self, n: int) -> frozenset[int]:
        """Uniform non-empty subset of ``range(n)``."""
        while True:
            mask = self.below(1 << n)
            if mask:
                return frozenset(i for i in range(n) if mask >> i & 1)
