"""Deterministic seeding discipline for Monte Carlo operations.

Shard seeds are derived from the user seed with SplitMix64, so sample loops
can be partitioned (seed, shard 0..k) without correlation and results stay
byte-identical for a given (seed, samples) pair.
"""

import numpy as np

_MASK = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def splitmix64(state):
    """One SplitMix64 step; returns the mixed 64-bit output."""
    state = (state + _GOLDEN) & _MASK
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return z ^ (z >> 31)


def derive_seed(seed, shard=0):
    """Seed for shard `shard` of a run seeded with `seed`."""
    s = seed & _MASK
    for _ in range(shard + 1):
        out = splitmix64(s)
        s = (s + _GOLDEN) & _MASK
    return out


def generator(seed, shard=0):
    """numpy Generator for the given (seed, shard)."""
    return np.random.Generator(np.random.PCG64(derive_seed(seed, shard)))
