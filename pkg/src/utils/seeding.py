"""
Seed derivation helpers.

Every random draw in the toolkit comes from a counter-based Philox stream keyed
by integer tuples, so results depend on (seed, stream id) only and never on the
order in which workers happen to run.
"""

from typing import Sequence, Union

import numpy as np

SeedLike = Union[int, Sequence[int]]


def _entropy(*keys: SeedLike) -> list:
    entropy = []
    for key in keys:
        if isinstance(key, (list, tuple)):
            entropy.extend(int(k) for k in key)
        else:
            entropy.append(int(key))
    # SeedSequence rejects negative entropy words
    return [k & 0xFFFFFFFFFFFFFFFF for k in entropy]


def make_rng(*keys: SeedLike) -> np.random.Generator:
    """Return a Philox-backed generator keyed by the given integers."""
    seed_sequence = np.random.SeedSequence(_entropy(*keys))
    return np.random.Generator(np.random.Philox(seed_sequence))


def derive_seed(*keys: SeedLike) -> int:
    """Derive a 32-bit integer seed from the given keys."""
    seed_sequence = np.random.SeedSequence(_entropy(*keys))
    return int(seed_sequence.generate_state(1, dtype=np.uint32)[0])
