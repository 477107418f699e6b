"""Seeding helpers.

Every stochastic routine in the package takes either an explicit
``numpy.random.Generator`` or an integer seed.  Per-trial seeds are derived
from ``(base_seed, *keys)`` through ``SeedSequence`` so results never depend on
scheduling order.
"""

import numpy as np

U64_MASK = (1 << 64) - 1


def derive_seed(base_seed: int, *keys: int) -> int:
    """Deterministic 64-bit seed for ``(base_seed, *keys)``."""
    ss = np.random.SeedSequence([int(base_seed) & U64_MASK, *(int(k) for k in keys)])
    return int(ss.generate_state(1, dtype=np.uint64)[0])


def make_rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.Generator(np.random.PCG64(int(seed) & U64_MASK))


def split(seed: int, count: int) -> list:
    """Independent child generators of ``seed``."""
    children = np.random.SeedSequence(int(seed) & U64_MASK).spawn(count)
    return [np.random.Generator(np.random.PCG64(c)) for c in children]
