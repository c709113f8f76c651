"""Public parameter bundles and their seeded generation.

Two bundles are produced here:

* :class:`SchnorrLikeParams` -- a safe prime p = 2q + 1, an order-q element
  h of Z_p*, and a second prime P = k*p + 1 whose order-p subgroup of Z_P*
  serves as the commitment group (g generates it).  Exponent arithmetic for
  g therefore happens mod p, and for h mod q.
* :class:`RsaParams` -- a two-factor modulus n with public exponent e and a
  base g of order greater than 2.  The factors are used once for the
  gcd(e, phi) check and then dropped; they are never stored.

Generation is fully deterministic for a fixed seed: candidates are scanned
from a seeded random start with a small-prime double sieve in front of
Miller-Rabin.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .encoding import str_to_int
from .errors import SearchExhaustedError
from .modmath import SMALL_PRIMES, iroot, is_probable_prime, mod_exp
from .rng import SeededRng, as_rng

_BASE_SEARCH_LIMIT = 100_000


@dataclass(frozen=True)
class SchnorrLikeParams:
    p: int
    q: int
    h: int
    P: int
    g: int

    def validate(self, rng: SeededRng | None = None) -> None:
        rng = rng if rng is not None else SeededRng("params-validate")
        if self.p != 2 * self.q + 1:
            raise ValueError("p != 2q + 1")
        if (self.P - 1) % self.p != 0:
            raise ValueError("P is not 1 mod p")
        for name, value in (("p", self.p), ("q", self.q), ("P", self.P)):
            if not is_probable_prime(value, rng):
                raise ValueError(f"{name} failed primality")
        if self.h % self.p in (0, 1) or mod_exp(self.h, self.q, self.p) != 1:
            raise ValueError("h does not have order q mod p")
        if self.g % self.P in (0, 1) or mod_exp(self.g, self.p, self.P) != 1:
            raise ValueError("g does not have order p mod P")

    def to_dict(self) -> dict:
        return {
            "p": str(self.p),
            "q": str(self.q),
            "h": str(self.h),
            "P": str(self.P),
            "g": str(self.g),
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "SchnorrLikeParams":
        return cls(*(str_to_int(doc[key]) for key in ("p", "q", "h", "P", "g")))


@dataclass(frozen=True)
class RsaParams:
    n: int
    e: int
    g: int
    l: int = 16
    epsilon: Fraction = Fraction(1)

    def w_bound(self) -> int:
        """ceil(2^l * n^(1 + epsilon)), computed exactly."""
        exponent = 1 + Fraction(self.epsilon)
        u, v = exponent.numerator, exponent.denominator
        m = (1 << (self.l * v)) * self.n**u
        root = iroot(m, v)
        return root if root**v == m else root + 1

    def validate(self) -> None:
        if self.n < 6 or self.n % 2 == 0:
            raise ValueError("n must be an odd composite")
        if self.e < 3 or self.e % 2 == 0:
            raise ValueError("e must be odd and >= 3")
        if gcd(self.g, self.n) != 1:
            raise ValueError("g is not a unit mod n")
        if self.g % self.n == 1 or pow(self.g, 2, self.n) == 1:
            raise ValueError("g must have order > 2")
        if self.l < 1:
            raise ValueError("l must be >= 1")

    def to_dict(self) -> dict:
        return {
            "n": str(self.n),
            "e": str(self.e),
            "g": str(self.g),
            "l": self.l,
            "epsilon": str(Fraction(self.epsilon)),
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "RsaParams":
        return cls(
            n=str_to_int(doc["n"]),
            e=str_to_int(doc["e"]),
            g=str_to_int(doc["g"]),
            l=int(doc["l"]),
            epsilon=Fraction(doc["epsilon"]),
        )


def tiny_schnorr_params() -> SchnorrLikeParams:
    """Hand-checkable fixture: p=23, q=11, h=2, P=47, g=2."""
    return SchnorrLikeParams(p=23, q=11, h=2, P=47, g=2)


def tiny_rsa_params(l: int = 4) -> RsaParams:
    """Hand-checkable fixture: n=33, e=3, g=2."""
    return RsaParams(n=33, e=3, g=2, l=l, epsilon=Fraction(1))


def _sieve_survives(value: int) -> bool:
    for p in SMALL_PRIMES[1:]:
        if value % p == 0:
            return value == p
    return True


def _scan_prime(bits: int, rng: SeededRng, max_steps: int,
                also_safe: bool = False) -> tuple[int, int | None]:
    """Scan odd candidates of exactly ``bits`` bits from a seeded start.

    With ``also_safe`` both the candidate q and 2q + 1 must be prime, and the
    pair (q, 2q+1) is returned; otherwise (candidate, None).
    """
    if bits < 2:
        raise ValueError("bits must be >= 2")
    if bits == 2:
        # only 2 and 3 exist; neither supports the odd scan below
        candidate = rng.choice((2, 3))
        if also_safe:
            raise SearchExhaustedError("no 2-bit safe primes")
        return candidate, None
    lo, hi = 1 << (bits - 1), 1 << bits
    start = rng.randrange(lo, hi) | 1
    candidate = start
    for _ in range(max_steps):
        ok = _sieve_survives(candidate)
        if ok and also_safe:
            ok = _sieve_survives(2 * candidate + 1)
        if ok and is_probable_prime(candidate, rng, rounds=1):
            companion = 2 * candidate + 1 if also_safe else None
            if companion is None or is_probable_prime(companion, rng, rounds=1):
                if is_probable_prime(candidate, rng) and (
                    companion is None or is_probable_prime(companion, rng)
                ):
                    return candidate, companion
        candidate += 2
        if candidate >= hi:
            candidate = lo | 1
    raise SearchExhaustedError(f"no {bits}-bit prime within {max_steps} steps")


def _ascending_order_element(order: int, modulus: int, limit: int = _BASE_SEARCH_LIMIT) -> int:
    """Smallest a >= 2 with a^order = 1 (mod modulus)."""
    for a in range(2, min(limit, modulus)):
        if mod_exp(a, order, modulus) == 1:
            return a
    raise SearchExhaustedError(f"no element of order {order} below {limit}")


def gen_schnorr_like_params(bits_p: int, seed, max_steps: int | None = None) -> SchnorrLikeParams:
    """Deterministically generate a SchnorrLikeParams bundle for a seed.

    The safe-prime pair is scanned from a seeded start; h and g are then the
    smallest bases of order q mod p and order p mod P, and P is the first
    prime k*p + 1 for ascending even k.
    """
    if bits_p < 4:
        raise ValueError("bits_p must be >= 4")
    rng = as_rng(seed)
    steps = max_steps if max_steps is not None else max(20_000, 2_000 * bits_p)
    q, p = _scan_prime(bits_p - 1, rng, steps, also_safe=True)
    h = _ascending_order_element(q, p)
    P = None
    for k in range(2, 100_000, 2):
        candidate = k * p + 1
        if _sieve_survives(candidate) and is_probable_prime(candidate, rng):
            P = candidate
            break
    if P is None:
        raise SearchExhaustedError("no prime P = k*p + 1 found")
    g = _ascending_order_element(p, P)
    return SchnorrLikeParams(p=p, q=q, h=h, P=P, g=g)


def gen_rsa_params(
    bits_n: int,
    e: int,
    seed,
    l: int = 16,
    epsilon: Fraction = Fraction(1),
    max_attempts: int = 10_000,
) -> RsaParams:
    """Deterministically generate a two-factor modulus compatible with e.

    The factors are checked for gcd(e, (p'-1)(q'-1)) = 1 and then discarded.
    """
    if e < 3 or e % 2 == 0:
        raise ValueError("e must be odd and >= 3")
    if bits_n < 4:
        raise ValueError("bits_n must be >= 4")
    rng = as_rng(seed)
    steps = max(20_000, 2_000 * bits_n)
    for _ in range(max_attempts):
        bits_a = rng.randrange(max(2, bits_n // 2 - 1), bits_n // 2 + 1)
        bits_b = bits_n - bits_a
        if bits_b < 2:
            continue
        p_factor, _ = _scan_prime(bits_a, rng, steps)
        q_factor, _ = _scan_prime(bits_b, rng, steps)
        if p_factor == q_factor:
            continue
        n = p_factor * q_factor
        if n.bit_length() != bits_n:
            continue
        if gcd(e, (p_factor - 1) * (q_factor - 1)) != 1:
            continue
        for a in range(2, n):
            if gcd(a, n) == 1 and pow(a, 2, n) != 1:
                g = a
                break
        else:
            continue
        return RsaParams(n=n, e=e, g=g, l=l, epsilon=epsilon)
    raise SearchExhaustedError(f"no {bits_n}-bit modulus for e={e} within budget")
