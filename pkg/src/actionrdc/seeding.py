"""Deterministic RNG derivation.

Every random draw in the package flows from a single user seed through
(seed, purpose tag, index) hashing, so independent components never share
streams and runs replay bit-identically across platforms.
"""

import hashlib

import numpy as np


def derive_seed(seed: int, tag: str, index: int = 0) -> int:
    """Map (seed, tag, index) to a stable 64-bit stream seed."""
    digest = hashlib.sha256(f"{int(seed)}|{tag}|{int(index)}".encode()).digest()
    return int.from_bytes(digest[:8], "big")


def derive_rng(seed: int, tag: str, index: int = 0) -> np.random.Generator:
    return np.random.default_rng(derive_seed(seed, tag, index))
