"""
Seeded random streams.

All sampling goes through numpy's PCG64 bit generator. A stream is named by
the user seed plus a tuple of keys (component index, trial, purpose...);
string keys are hashed with SHA-256 so streams do not depend on Python's
randomized ``hash``.
"""

import hashlib
from typing import Union

import numpy as np

Key = Union[int, str]


def stable_key(key: Key) -> int:
    if isinstance(key, (int, np.integer)):
        return int(key) & 0xFFFFFFFF
    digest = hashlib.sha256(str(key).encode("utf-8")).digest()
    return int.from_bytes(digest[:4], "big")


def make_rng(seed: int, *keys: Key) -> np.random.Generator:
    sequence = np.random.SeedSequence(entropy=int(seed), spawn_key=tuple(stable_key(k) for k in keys))
    return np.random.Generator(np.random.PCG64(sequence))


def derive_seed(seed: int, *keys: Key) -> int:
    """Integer seed for a sub-stream, usable where an API takes a plain seed."""
    return int(make_rng(seed, *keys).integers(0, 2 ** 31 - 1))
