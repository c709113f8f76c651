"""Deterministic seeded randomness.

All sampling in the workbench flows through :class:`SeededRng`, a SHA-256
counter stream.  Unlike ``random.Random`` its byte stream is stable across
Python versions, which is what makes boards and reports byte-identical on
replay.  Generators are cheap value objects; a logical actor (dealer,
participant, verifier) gets its own independent stream via :meth:`child`
and never shares one mid-stream with another actor.
"""

from __future__ import annotations

import hashlib

_BLOCK = b"blk"
_CHILD = b"chd"


def _seed_material(seed) -> bytes:
    if isinstance(seed, bytes):
        return seed
    if isinstance(seed, int):
        return str(seed).encode("ascii")
    if isinstance(seed, str):
        return seed.encode("utf-8")
    raise TypeError(f"seed must be int, str or bytes, not {type(seed).__name__}")


def as_rng(seed_or_rng) -> "SeededRng":
    """Coerce a raw seed to a generator; pass an existing generator through."""
    if isinstance(seed_or_rng, SeededRng):
        return seed_or_rng
    return SeededRng(seed_or_rng)


class SeededRng:
    """SHA-256 counter-mode generator with hierarchical derivation."""

    def __init__(self, seed):
        self._key = hashlib.sha256(_seed_material(seed)).digest()
        self._counter = 0
        self._buffer = b""

    def child(self, label: str) -> "SeededRng":
        """Derive an independent generator for a named sub-actor."""
        rng = SeededRng(b"")
        rng._key = hashlib.sha256(self._key + _CHILD + label.encode("utf-8")).digest()
        return rng

    def take_bytes(self, n: int) -> bytes:
        while len(self._buffer) < n:
            block = hashlib.sha256(
                self._key + _BLOCK + self._counter.to_bytes(8, "big")
            ).digest()
            self._counter += 1
            self._buffer += block
        out, self._buffer = self._buffer[:n], self._buffer[n:]
        return out

    def randbelow(self, n: int) -> int:
        """Uniform integer in [0, n) by rejection sampling."""
        if n <= 0:
            raise ValueError("randbelow() requires n >= 1")
        bits = (n - 1).bit_length()
        if bits == 0:
            return 0
        nbytes = (bits + 7) // 8
        shift = 8 * nbytes - bits
        while True:
            x = int.from_bytes(self.take_bytes(nbytes), "big") >> shift
            if x < n:
                return x

    def randrange(self, lo: int, hi: int) -> int:
        """Uniform integer in [lo, hi)."""
        if hi <= lo:
            raise ValueError("empty range")
        return lo + self.randbelow(hi - lo)

    def randbit(self) -> int:
        return self.randbelow(2)

    def choice(self, seq):
        if not seq:
            raise ValueError("cannot choose from an empty sequence")
        return seq[self.randbelow(len(seq))]

    def shuffle(self, items: list) -> None:
        """In-place Fisher-Yates shuffle."""
        for i in range(len(items) - 1, 0, -1):
            j = self.randbelow(i + 1)
            items[i], items[j] = items[j], items[i]
