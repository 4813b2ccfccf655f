"""SplitMix64 pseudo-random generator.

A fixed, fully specified generator so that seeded experiments reproduce
bit-for-bit across platforms and implementations (the stdlib Mersenne
Twister seeding is not part of any portable contract).
"""

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15


class SplitMix64:
    def __init__(self, seed=0):
        if seed < 0:
            raise ValueError("seed must be a non-negative 64-bit integer")
        self.state = seed & MASK64

    def next_u64(self):
        self.state = (self.state + GOLDEN_GAMMA) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def random(self):
        """Uniform float in [0, 1) with 53 bits of precision."""
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))

    def bit(self):
        return self.next_u64() >> 63

    def randrange(self, start, stop=None):
        """Uniform integer in [start, stop) (or [0, start)), unbiased via rejection."""
        if stop is None:
            start, stop = 0, start
        n = stop - start
        if n <= 0:
            raise ValueError("empty range")
        limit = (1 << 64) - ((1 << 64) % n)
        while True:
            x = self.next_u64()
            if x < limit:
                return start + x % n

    def getrandbits(self, k):
        out = 0
        filled = 0
        while filled < k:
            out |= self.next_u64() << filled
            filled += 64
        return out & ((1 << k) - 1)

    def split(self):
        """Independent child generator seeded from this stream."""
        return SplitMix64(self.next_u64())


def derive_seed(seed, index):
    """The ``index``-th output of ``SplitMix64(seed)``, computed in O(1)."""
    rng = SplitMix64((seed + index * GOLDEN_GAMMA) & MASK64)
    return rng.next_u64()
