"""Portable 64-bit generator for reproducible sampling.

The generator is xoshiro256** seeded through splitmix64, with bounded
integers drawn by rejection, so any implementation of the same published
algorithms reproduces the exact draw sequence from a seed:

- splitmix64: state += 0x9E3779B97F4A7C15; z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EB; output z ^ (z >> 31).
  Four successive outputs form the xoshiro256** state s0..s3.
- xoshiro256** step: output rotl(s1 * 5, 7) * 9; then
  t = s1 << 17; s2 ^= s0; s3 ^= s1; s1 ^= s2; s0 ^= s3; s2 ^= t;
  s3 = rotl(s3, 45). All arithmetic modulo 2^64.
- randbelow(m): draw u until u < 2^64 - (2^64 mod m), return u mod m.
"""

_MASK = (1 << 64) - 1


def _rotl(x, k):
    return ((x << k) | (x >> (64 - k))) & _MASK


def _splitmix64(state):
    state = (state + 0x9E3779B97F4A7C15) & _MASK
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return z ^ (z >> 31), state


class Xoshiro256StarStar:
    """Deterministic stream of 64-bit words from a 64-bit seed."""

    __slots__ = ("_s",)

    def __init__(self, seed):
        seed = int(seed) & _MASK
        words = []
        state = seed
        for _ in range(4):
            word, state = _splitmix64(state)
            words.append(word)
        self._s = words

    def next_u64(self):
        s0, s1, s2, s3 = self._s
        out = (_rotl((s1 * 5) & _MASK, 7) * 9) & _MASK
        t = (s1 << 17) & _MASK
        s2 ^= s0
        s3 ^= s1
        s1 ^= s2
        s0 ^= s3
        s2 ^= t
        s3 = _rotl(s3, 45)
        self._s = [s0, s1, s2, s3]
        return out

    def randbelow(self, m):
        """Unbiased integer in [0, m) by rejection."""
        if m <= 0:
            raise ValueError(f"bound must be positive, got {m}")
        threshold = (1 << 64) - ((1 << 64) % m)
        while True:
            u = self.next_u64()
            if u < threshold:
                return u % m

    def sample(self, pool, k):
        """k distinct items via a partial Fisher-Yates shuffle of `pool`.

        `pool` is consumed in the given order; pass it pre-sorted for
        reproducibility across callers.
        """
        items = list(pool)
        if k > len(items):
            raise ValueError(f"cannot sample {k} from {len(items)} items")
        for i in range(k):
            j = i + self.randbelow(len(items) - i)
            items[i], items[j] = items[j], items[i]
        return items[:k]
