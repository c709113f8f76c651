"""Conjugacy-based El Gamal key exchange over a non-abelian platform.

Keys live in two declared subsets S and T with [S, T] = 1.  Bob publishes a
base b and c = b^s for private s in S; Alice picks t in T and sends the
header b^t together with E = x^(c^t).  Because s and t commute,
(b^t)^s = (b^s)^t = c^t, so Bob re-derives the conjugator and peels it off.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import CapacityExceededError
from .groups import (
    ABELIAN_MATRIX_SLICE,
    DISJOINT_SUPPORT,
    PERMUTATION,
    POWERS_OF_ONE,
    UNITRIANGULAR,
    GroupDescriptor,
    GroupElement,
    g_conj,
    g_inv,
    g_order,
    g_pow,
    g_random,
    g_random_non_identity,
    make_matrix,
    make_permutation,
)
from .rng import SeededRng, as_rng


@dataclass(frozen=True)
class CyclicSet:
    """A cyclic subgroup used as a commuting key set."""

    generator: GroupElement
    order: int

    def sample(self, rng: SeededRng) -> GroupElement:
        """Random non-identity member."""
        return g_pow(self.generator, rng.randrange(1, self.order))

    def elements(self):
        """All members including the identity; only call at small order."""
        return [g_pow(self.generator, k) for k in range(self.order)]


@dataclass(frozen=True)
class KexKeyPair:
    s: GroupElement  # private
    b: GroupElement
    c: GroupElement


@dataclass(frozen=True)
class KexCiphertext:
    header: GroupElement
    E: GroupElement

    def to_dict(self) -> dict:
        return {
            "descriptor": self.header.descriptor.to_dict(),
            "header": self.header.to_dict(),
            "E": self.E.to_dict(),
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "KexCiphertext":
        return cls(
            header=GroupElement.from_dict(doc["header"]),
            E=GroupElement.from_dict(doc["E"]),
        )


def _embedded_permutation(descriptor: GroupDescriptor, points, rng: SeededRng) -> GroupElement:
    """Random non-identity permutation supported on ``points``."""
    points = list(points)
    while True:
        shuffled = list(points)
        rng.shuffle(shuffled)
        if shuffled != points:
            break
    images = list(range(1, descriptor.degree + 1))
    for src, dst in zip(points, shuffled):
        images[src - 1] = dst
    return make_permutation(descriptor, images)


def commuting_pair(descriptor: GroupDescriptor, strategy: str, seed) -> tuple[CyclicSet, CyclicSet]:
    """Build declared key sets S, T with [S, T] = 1.

    disjoint-support: cyclic subgroups generated on the two halves of the
    permutation domain; abelian-matrix-slice: the two coordinate families of
    the commuting matrix slice; powers-of-one: S = T = one cyclic subgroup.
    """
    rng = as_rng(seed)
    if strategy == DISJOINT_SUPPORT:
        if descriptor.backend != PERMUTATION:
            raise CapacityExceededError("disjoint-support needs the permutation backend")
        half = (descriptor.degree + 1) // 2
        left = _embedded_permutation(descriptor, range(1, half + 1), rng)
        right = _embedded_permutation(descriptor, range(half + 1, descriptor.degree + 1), rng)
        return CyclicSet(left, g_order(left)), CyclicSet(right, g_order(right))
    if strategy == ABELIAN_MATRIX_SLICE:
        if descriptor.backend != UNITRIANGULAR:
            raise CapacityExceededError("abelian-matrix-slice needs the matrix backend")
        s_gen = make_matrix(descriptor, 1, 0, 0)
        t_gen = make_matrix(descriptor, 0, 1, 0)
        return CyclicSet(s_gen, descriptor.modulus), CyclicSet(t_gen, descriptor.modulus)
    if strategy == POWERS_OF_ONE:
        a = g_random_non_identity(descriptor, rng)
        while g_order(a) < 2:
            a = g_random_non_identity(descriptor, rng)
        cyc = CyclicSet(a, g_order(a))
        return cyc, cyc
    raise ValueError(f"unknown strategy {strategy!r}")


def keygen(
    descriptor: GroupDescriptor,
    strategy: str,
    seed,
    sets: tuple[CyclicSet, CyclicSet] | None = None,
) -> tuple[KexKeyPair, CyclicSet, CyclicSet]:
    """Pick s in S and a random base b; publish b and c = b^s."""
    rng = as_rng(seed)
    set_s, set_t = sets if sets is not None else commuting_pair(descriptor, strategy, rng)
    s = set_s.sample(rng)
    b = g_random(descriptor, rng)
    return KexKeyPair(s=s, b=b, c=g_conj(b, s)), set_s, set_t


def encrypt(x: GroupElement, b: GroupElement, c: GroupElement, t: GroupElement) -> KexCiphertext:
    """Header b^t plus payload x conjugated by c^t."""
    return KexCiphertext(header=g_conj(b, t), E=g_conj(x, g_conj(c, t)))


def decrypt(ciphertext: KexCiphertext, s: GroupElement) -> GroupElement:
    """Recover x: header^s equals c^t, then undo the conjugation."""
    conjugator = g_conj(ciphertext.header, s)
    return g_conj(ciphertext.E, g_inv(conjugator))
