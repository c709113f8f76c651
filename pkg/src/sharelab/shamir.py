"""Polynomial secret sharing over Z_p with Lagrange reconstruction.

A dealer hides the secret as the constant term of a random polynomial of
degree k-1 and hands participant i the evaluation at its assigned nonzero
x_i.  Any k evaluations pin the polynomial down; k-1 leave the constant
term uniform.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import BadPolicyError, DuplicateXError
from .modmath import mod_inv
from .rng import as_rng


@dataclass(frozen=True)
class SharingPolicy:
    n: int
    k: int
    p: int
    x_coords: tuple[int, ...] = field(default=())

    def __post_init__(self):
        if not self.x_coords:
            object.__setattr__(self, "x_coords", tuple(range(1, self.n + 1)))
        if not 1 <= self.k <= self.n:
            raise BadPolicyError(f"need 1 <= k <= n, got k={self.k}, n={self.n}")
        if len(self.x_coords) != self.n:
            raise BadPolicyError("one x-coordinate per participant required")
        reduced = [x % self.p for x in self.x_coords]
        if any(x == 0 for x in reduced):
            raise BadPolicyError("x-coordinates must be nonzero mod p")
        if len(set(reduced)) != self.n:
            raise BadPolicyError("x-coordinates must be distinct mod p")


@dataclass(frozen=True)
class ShareSet:
    secret: int
    coefficients: tuple[int, ...]  # f_1 .. f_{k-1}; dealer-private
    shares: tuple[int, ...]
    policy: SharingPolicy


def eval_poly(coeffs, x: int, p: int) -> int:
    """Evaluate a polynomial given low-order-first coefficients (Horner)."""
    out = 0
    for c in reversed(list(coeffs)):
        out = (out * x + c) % p
    return out


def split(secret: int, policy: SharingPolicy, seed) -> ShareSet:
    """Share ``secret``: s_i = s + sum_j f_j * x_i^j (mod p), j = 1..k-1."""
    if not 0 <= secret < policy.p:
        raise BadPolicyError(f"secret must lie in [0, {policy.p})")
    rng = as_rng(seed)
    coefficients = tuple(rng.randbelow(policy.p) for _ in range(policy.k - 1))
    poly = (secret,) + coefficients
    shares = tuple(eval_poly(poly, x, policy.p) for x in policy.x_coords)
    return ShareSet(secret=secret, coefficients=coefficients, shares=shares, policy=policy)


def reconstruct(points, p: int) -> int:
    """Interpolate the constant term from (x, share) pairs.

    lambda_i = prod_{j != i} x_j / (x_j - x_i); the secret is
    sum_i share_i * lambda_i (mod p).
    """
    points = [(x % p, y % p) for x, y in points]
    if not points:
        raise BadPolicyError("at least one point required")
    xs = [x for x, _ in points]
    if len(set(xs)) != len(xs):
        raise DuplicateXError(f"duplicate x-coordinates in {xs}")
    secret = 0
    for i, (x_i, y_i) in enumerate(points):
        num, den = 1, 1
        for j, (x_j, _) in enumerate(points):
            if j != i:
                num = num * x_j % p
                den = den * (x_j - x_i) % p
        secret = (secret + y_i * num * mod_inv(den, p)) % p
    return secret
