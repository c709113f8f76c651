"""Canonical byte and JSON encodings.

Two fixed wire formats live here and nowhere else:

* integer encoding for hash payloads and files: a 4-byte big-endian length
  prefix followed by the big-endian magnitude (no leading zero bytes; zero
  encodes as length 0).  A sign byte 0x00/0x01 is prepended only by
  :func:`encode_int`, used where negative values are legal.
* the hash stream: SHA-256 over (4-byte big-endian block counter || payload),
  blocks concatenated, truncated to the requested number of bits, MSB first.

JSON documents serialize big integers as decimal strings and are dumped with
sorted keys so that identical data yields identical bytes.
"""

from __future__ import annotations

import hashlib
import json


def encode_uint(value: int) -> bytes:
    """Length-prefixed big-endian encoding of a non-negative integer."""
    if value < 0:
        raise ValueError("encode_uint() requires a non-negative integer")
    magnitude = value.to_bytes((value.bit_length() + 7) // 8, "big")
    return len(magnitude).to_bytes(4, "big") + magnitude


def encode_int(value: int) -> bytes:
    """Signed variant: sign byte 0x00 (>= 0) or 0x01 (< 0), then magnitude."""
    sign = b"\x01" if value < 0 else b"\x00"
    return sign + encode_uint(abs(value))


def hash_stream(payload: bytes, nbytes: int) -> bytes:
    """First ``nbytes`` of the counter-mode SHA-256 stream over ``payload``."""
    out = b""
    counter = 0
    while len(out) < nbytes:
        out += hashlib.sha256(counter.to_bytes(4, "big") + payload).digest()
        counter += 1
    return out[:nbytes]


def hash_bits(payload: bytes, l: int) -> tuple[int, ...]:
    """First ``l`` bits of the hash stream, MSB first, as a 0/1 tuple."""
    if l < 1:
        raise ValueError("hash_bits() requires l >= 1")
    stream = hash_stream(payload, (l + 7) // 8)
    bits = []
    for byte in stream:
        for shift in range(7, -1, -1):
            bits.append((byte >> shift) & 1)
            if len(bits) == l:
                return tuple(bits)
    raise AssertionError("unreachable")


def int_to_str(value: int) -> str:
    return str(value)


def str_to_int(text: str) -> int:
    if not isinstance(text, str):
        raise ValueError(f"expected decimal string, got {type(text).__name__}")
    return int(text, 10)


def bits_to_str(bits) -> str:
    return "".join("1" if b else "0" for b in bits)


def str_to_bits(text: str) -> tuple[int, ...]:
    if not text or any(ch not in "01" for ch in text):
        raise ValueError(f"not a bit string: {text!r}")
    return tuple(1 if ch == "1" else 0 for ch in text)


def dump_json(document) -> str:
    """Canonical JSON text: sorted keys, two-space indent, trailing newline."""
    return json.dumps(document, sort_keys=True, indent=2) + "\n"


def load_json(text: str):
    return json.loads(text)
