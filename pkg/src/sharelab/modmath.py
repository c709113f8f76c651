"""Arbitrary-precision modular arithmetic and probabilistic primality.

Python ints are the big-integer type throughout; these helpers add the error
handling the protocols rely on (negative exponents via modular inverse, gcd
surfaced on inversion failure) and a Miller-Rabin test driven by an explicit
seeded generator.
"""

from __future__ import annotations

from .errors import NonInvertibleError
from .rng import SeededRng

# 64 Miller-Rabin rounds: error probability <= 4^-64, well under 2^-80.
MR_ROUNDS = 64

_SIEVE_BOUND = 2000


def _small_primes(bound: int) -> tuple[int, ...]:
    flags = bytearray([1]) * (bound + 1)
    flags[0] = flags[1] = 0
    for i in range(2, int(bound**0.5) + 1):
        if flags[i]:
            flags[i * i :: i] = bytearray(len(flags[i * i :: i]))
    return tuple(i for i in range(bound + 1) if flags[i])


SMALL_PRIMES = _small_primes(_SIEVE_BOUND)


def egcd(a: int, b: int) -> tuple[int, int, int]:
    """Extended Euclid: returns (g, x, y) with a*x + b*y = g = gcd(a, b)."""
    prev_x, x = 1, 0
    prev_y, y = 0, 1
    while b:
        q = a // b
        a, b = b, a - q * b
        prev_x, x = x, prev_x - q * x
        prev_y, y = y, prev_y - q * y
    return a, prev_x, prev_y


def mod_inv(a: int, modulus: int) -> int:
    """Inverse of ``a`` mod ``modulus``; raises NonInvertibleError otherwise."""
    if modulus < 2:
        raise ValueError("modulus must be >= 2")
    g, x, _ = egcd(a % modulus, modulus)
    if g != 1:
        raise NonInvertibleError(a, modulus, g)
    return x % modulus


def mod_exp(base: int, exponent: int, modulus: int) -> int:
    """base**exponent mod modulus, with negative exponents via inversion."""
    if modulus < 2:
        raise ValueError("modulus must be >= 2")
    if exponent < 0:
        base = mod_inv(base, modulus)
        exponent = -exponent
    return pow(base, exponent, modulus)


def is_probable_prime(n: int, rng: SeededRng, rounds: int = MR_ROUNDS) -> bool:
    """Miller-Rabin with ``rounds`` random bases drawn from ``rng``."""
    if n < 2:
        return False
    for p in SMALL_PRIMES:
        if n == p:
            return True
        if n % p == 0:
            return False
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for _ in range(rounds):
        a = rng.randrange(2, n - 1)
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = pow(x, 2, n)
            if x == n - 1:
                break
        else:
            return False
    return True


def iroot(value: int, k: int) -> int:
    """Floor of the k-th root of a non-negative integer (Newton iteration)."""
    if value < 0 or k < 1:
        raise ValueError("iroot() requires value >= 0 and k >= 1")
    if value < 2 or k == 1:
        return value
    x = 1 << ((value.bit_length() + k - 1) // k)
    while True:
        y = ((k - 1) * x + value // x ** (k - 1)) // k
        if y >= x:
            return x
        x = y
