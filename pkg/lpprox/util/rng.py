"""
Deterministic random streams. Every run has one 64-bit master seed; every consumer asks for a
stream by a tuple of small integer keys, which is folded into the SeedSequence spawn key so that
streams never overlap and do not depend on the order in which they are requested
"""
from typing import List

import numpy as np

MASTER_SEED_MASK = (1 << 64) - 1


def derive_seed_sequence(seed: int, *keys: int) -> np.random.SeedSequence:
    """
    Returns the seed sequence for stream `keys` under the master `seed`

    :param seed: the master seed (reduced modulo 2^64)
    :param keys: non-negative integers identifying the stream, e.g. (run_index, worker)
    """
    if any(k < 0 for k in keys):
        raise ValueError("stream keys must be non-negative")
    return np.random.SeedSequence(entropy=int(seed) & MASTER_SEED_MASK, spawn_key=tuple(int(k) for k in keys))


def derive_rng(seed: int, *keys: int) -> np.random.Generator:
    """ Returns a Generator for stream `keys` under the master `seed` """
    return np.random.default_rng(derive_seed_sequence(seed, *keys))


def spawn_rngs(seed: int, count: int, *keys: int) -> List[np.random.Generator]:
    """ Returns `count` independent generators, the i-th one being stream (*keys, i) """
    return [derive_rng(seed, *keys, i) for i in range(count)]
