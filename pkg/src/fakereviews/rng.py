"""Seeded random-number plumbing.

Every stochastic component in the package draws from a numpy PCG64
generator seeded either directly or through ``mix``, which derives
independent child seeds from a parent seed and a stable label (e.g. a
tree index).  PCG64 output is platform-stable, so fixed seeds give
bit-reproducible results everywhere.
"""

import hashlib

import numpy as np


def mix(seed: int, label) -> int:
    """Derive a 64-bit child seed from a parent seed and a stable label.

    Labels may be ints or strings; distinct labels give independent
    streams, and the derivation is stable across platforms and runs.
    """
    data = f"{seed}:{label}".encode("utf-8")
    return int.from_bytes(hashlib.blake2b(data, digest_size=8).digest(), "little")


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def child_rng(seed: int, label) -> np.random.Generator:
    return make_rng(mix(seed, label))
