"""Seeded, portable randomness.

Every random draw in the package comes from Philox4x64-10 (the counter-based
generator of Salmon et al., as shipped in ``numpy.random.Philox``) keyed by a
128-bit key built from two 64-bit words::

    key = seed  |  (stream << 64)          # word0 = seed, word1 = stream

with the counter starting at zero. ``stream`` packs a purpose tag and an
index::

    stream = (purpose << 32) | index

Raw output is consumed as unsigned 64-bit words in generator order. A uniform
double is ``(word >> 11) * 2**-53`` and a Bernoulli(p) coin succeeds iff that
uniform is ``< p``. Any Philox4x64-10 implementation with these conventions
reproduces every graph, distinguishing set and witness search bit for bit.
"""

from __future__ import annotations

import numpy as np

MASK64 = (1 << 64) - 1

# purpose tags
GRAPH = 1
DISTINGUISHING_SET = 2
SUBSET_SAMPLING = 3
WITNESS_SEARCH = 4
SWEEP = 5


def stream_id(purpose: int, index: int = 0) -> int:
    if not 0 <= purpose < (1 << 32) or not 0 <= index < (1 << 32):
        raise ValueError("purpose and index must fit in 32 bits")
    return (purpose << 32) | index


def generator(seed: int, purpose: int, index: int = 0) -> np.random.Philox:
    """Fresh Philox bit generator for ``(seed, purpose, index)``."""
    key = (int(seed) & MASK64) | (stream_id(purpose, index) << 64)
    return np.random.Philox(key=key)


def raw_words(bitgen: np.random.Philox, count: int) -> np.ndarray:
    if count == 0:
        return np.zeros(0, dtype=np.uint64)
    return np.asarray(bitgen.random_raw(count), dtype=np.uint64)


def uniforms(bitgen: np.random.Philox, count: int) -> np.ndarray:
    words = raw_words(bitgen, count)
    return (words >> np.uint64(11)).astype(np.float64) * (2.0 ** -53)


def coins(bitgen: np.random.Philox, count: int, p: float) -> np.ndarray:
    """Boolean array of ``count`` independent Bernoulli(p) draws."""
    return uniforms(bitgen, count) < p


def random_bits(bitgen: np.random.Philox, nbits: int) -> int:
    """Uniform integer in ``[0, 2**nbits)`` assembled little-endian from words."""
    nwords = (nbits + 63) // 64
    value = 0
    for k, w in enumerate(raw_words(bitgen, nwords).tolist()):
        value |= int(w) << (64 * k)
    return value & ((1 << nbits) - 1)
