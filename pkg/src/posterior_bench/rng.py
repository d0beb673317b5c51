"""Counter-based random streams built on Philox4x32-10.

Every draw produced by this toolkit is a pure function of a 64-bit stream
key, a 64-bit element index, and a 64-bit draw counter.  Because no state
is shared between elements, results are bit-identical no matter how the
work is chunked, how many workers execute the chunks, or in which order
elements are evaluated.

The block cipher is Philox4x32-10 (Salmon, Moraes, Dror & Shaw, "Parallel
random numbers: as easy as 1, 2, 3", SC'11), chosen because it is a named,
widely validated generator that needs only 32/64-bit integer arithmetic and
therefore reproduces exactly across platforms.  The implementation below is
verified against the published known-answer vectors in the test suite.

Stream layout: counter words (c0, c1) hold the draw counter, (c2, c3) hold
the element index, and the key words come from a 64-bit stream key derived
by hashing a master seed with a path of string labels (see ``derive_key``).
One block yields two 64-bit output lanes.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass

import numpy as np

_M0 = np.uint64(0xD2511F53)
_M1 = np.uint64(0xCD9E8D57)
_W0 = np.uint64(0x9E3779B9)
_W1 = np.uint64(0xBB67AE85)
_MASK32 = np.uint64(0xFFFFFFFF)
_SHIFT32 = np.uint64(32)
_TWO_PI = 2.0 * np.pi
# (x >> 11) + 1 scaled by 2^-53 gives uniforms on (0, 1]; the +1 keeps
# log() finite on the low end.
_INV53 = 1.0 / 9007199254740992.0


def derive_key(seed: int, *labels: str) -> int:
    """Derive a 64-bit stream key from a master seed and a label path.

    SHA-256 based, so streams for different labels are unrelated and adding
    a label (a dataset, a pipeline step) never perturbs sibling streams.
    """
    h = hashlib.sha256()
    h.update(str(int(seed) % (1 << 64)).encode("ascii"))
    for label in labels:
        h.update(b"\x1f")
        h.update(str(label).encode("utf-8"))
    return int.from_bytes(h.digest()[:8], "little")


def philox4x32_10(c0, c1, c2, c3, k0, k1):
    """Ten Philox4x32 rounds; inputs and outputs are 32-bit words held in
    uint64 arrays.  Exposed at word level so known-answer vectors can be
    checked directly."""
    c0 = np.asarray(c0, dtype=np.uint64)
    c1 = np.asarray(c1, dtype=np.uint64)
    c2 = np.asarray(c2, dtype=np.uint64)
    c3 = np.asarray(c3, dtype=np.uint64)
    k0 = np.uint64(k0)
    k1 = np.uint64(k1)
    for _ in range(10):
        p0 = _M0 * c0
        p1 = _M1 * c2
        n0 = (p1 >> _SHIFT32) ^ c1 ^ k0
        n1 = p1 & _MASK32
        n2 = (p0 >> _SHIFT32) ^ c3 ^ k1
        n3 = p0 & _MASK32
        c0, c1, c2, c3 = n0, n1, n2, n3
        k0 = (k0 + _W0) & _MASK32
        k1 = (k1 + _W1) & _MASK32
    return c0, c1, c2, c3


def blocks(key: int, index, counter):
    """Two 64-bit output lanes for each (element index, draw counter) pair.

    ``index`` and ``counter`` broadcast against each other.
    """
    index = np.asarray(index, dtype=np.uint64)
    counter = np.asarray(counter, dtype=np.uint64)
    k = np.uint64(key)
    y0, y1, y2, y3 = philox4x32_10(
        counter & _MASK32,
        counter >> _SHIFT32,
        index & _MASK32,
        index >> _SHIFT32,
        k & _MASK32,
        k >> _SHIFT32,
    )
    return (y1 << _SHIFT32) | y0, (y3 << _SHIFT32) | y2


def uniform01(key: int, index, counter):
    """Uniform draws on (0, 1], one per (index, counter) pair (first lane)."""
    lane, _ = blocks(key, index, counter)
    return ((lane >> np.uint64(11)) + np.uint64(1)) * _INV53


def uniform_pair(key: int, index, counter):
    """Two uniforms on (0, 1] per (index, counter) pair, one from each lane."""
    a, b = blocks(key, index, counter)
    one = np.uint64(1)
    eleven = np.uint64(11)
    return (
        ((a >> eleven) + one) * _INV53,
        ((b >> eleven) + one) * _INV53,
    )


def standard_normal(key: int, index, counter):
    """Standard normal draws, one per (index, counter) pair.

    Box-Muller, cosine branch: z = sqrt(-2 ln u1) * cos(2 pi u2) with the
    two uniforms taken from one Philox block.  Exactly one block per draw,
    so consumption is deterministic.
    """
    u1, u2 = uniform_pair(key, index, counter)
    return np.sqrt(-2.0 * np.log(u1)) * np.cos(_TWO_PI * u2)


@dataclass
class CounterStream:
    """Sequential cursor over one element's substream.

    Holds a fixed (key, element index) and a draw counter that advances as
    the scalar sampling functions consume blocks.  Two streams with the
    same fields produce the same draws; copying the dataclass snapshots the
    state.
    """

    key: int
    index: int = 0
    counter: int = 0

    def take(self, n: int = 1) -> np.ndarray:
        """Reserve the next ``n`` counter values and advance the cursor."""
        start = self.counter
        self.counter += n
        return np.arange(start, start + n, dtype=np.uint64)
