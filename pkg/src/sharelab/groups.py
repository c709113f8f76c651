"""Pluggable non-abelian platform groups.

Two backends ship: permutations of {1..m} (inspectable, used by most oracle
tests) and 3x3 upper-unitriangular matrices over Z_q for prime q (a nilpotent
platform).  Elements are immutable and stored in normal form -- the
one-line image tuple for permutations, reduced entries for matrices -- so
structural equality is group equality.

Conventions fixed here and relied on everywhere else:

* products compose right-to-left: (a * b)(i) = a(b(i));
* conjugation is x^g = g^-1 * x * g, a right action: x^(gh) = (x^g)^h.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .errors import BackendMismatchError, BudgetExceededError, CapacityExceededError
from .modmath import is_probable_prime
from .rng import SeededRng, as_rng

PERMUTATION = "permutation"
UNITRIANGULAR = "unitriangular"

DISJOINT_SUPPORT = "disjoint-support"
POWERS_OF_ONE = "powers-of-one"
ABELIAN_MATRIX_SLICE = "abelian-matrix-slice"

FAMILY_STRATEGIES = (DISJOINT_SUPPORT, POWERS_OF_ONE, ABELIAN_MATRIX_SLICE)

# demo-scale defaults; tests use tiny descriptors instead
DEFAULT_PERMUTATION_DEGREE = 16
DEFAULT_MATRIX_MODULUS = 2**61 - 1


@dataclass(frozen=True)
class GroupDescriptor:
    backend: str
    degree: int | None = None
    modulus: int | None = None

    def __post_init__(self):
        if self.backend == PERMUTATION:
            if self.degree is None or self.degree < 4:
                raise ValueError("permutation backend needs degree >= 4")
            if self.modulus is not None:
                raise ValueError("permutation backend takes no modulus")
        elif self.backend == UNITRIANGULAR:
            if self.degree is not None:
                raise ValueError("unitriangular backend takes no degree")
            if self.modulus is None or self.modulus < 2 or not is_probable_prime(
                self.modulus, SeededRng("descriptor-check")
            ):
                raise ValueError("unitriangular backend needs a prime modulus")
        else:
            raise ValueError(f"unknown backend {self.backend!r}")

    def order(self) -> int:
        """Number of elements in the platform group."""
        if self.backend == PERMUTATION:
            out = 1
            for i in range(2, self.degree + 1):
                out *= i
            return out
        return self.modulus**3

    def to_dict(self) -> dict:
        if self.backend == PERMUTATION:
            return {"backend": PERMUTATION, "degree": self.degree}
        return {"backend": UNITRIANGULAR, "modulus": str(self.modulus)}

    @classmethod
    def from_dict(cls, doc: dict) -> "GroupDescriptor":
        if doc["backend"] == PERMUTATION:
            return cls(PERMUTATION, degree=int(doc["degree"]))
        return cls(UNITRIANGULAR, modulus=int(doc["modulus"]))


def permutation_descriptor(degree: int = DEFAULT_PERMUTATION_DEGREE) -> GroupDescriptor:
    return GroupDescriptor(PERMUTATION, degree=degree)


def unitriangular_descriptor(modulus: int = DEFAULT_MATRIX_MODULUS) -> GroupDescriptor:
    return GroupDescriptor(UNITRIANGULAR, modulus=modulus)


@dataclass(frozen=True)
class GroupElement:
    """Normal-form element: payload is the image tuple or the (a12, a13, a23)
    entries of the unitriangular matrix."""

    descriptor: GroupDescriptor
    payload: tuple[int, ...]

    def is_identity(self) -> bool:
        return self == identity(self.descriptor)

    def to_dict(self) -> dict:
        doc = self.descriptor.to_dict()
        if self.descriptor.backend == PERMUTATION:
            doc["images"] = list(self.payload)
        else:
            a, b, c = self.payload
            doc["entries"] = [str(v) for v in (1, a, b, 0, 1, c, 0, 0, 1)]
        return doc

    @classmethod
    def from_dict(cls, doc: dict) -> "GroupElement":
        descriptor = GroupDescriptor.from_dict(doc)
        if descriptor.backend == PERMUTATION:
            return make_permutation(descriptor, [int(i) for i in doc["images"]])
        entries = [int(v) for v in doc["entries"]]
        if len(entries) != 9 or entries[0::4] != [1, 1, 1] or entries[3] or entries[6] or entries[7]:
            raise ValueError("not an upper-unitriangular 3x3 matrix")
        return make_matrix(descriptor, entries[1], entries[2], entries[5])


def make_permutation(descriptor: GroupDescriptor, images) -> GroupElement:
    images = tuple(int(i) for i in images)
    if sorted(images) != list(range(1, descriptor.degree + 1)):
        raise ValueError(f"not a bijection of 1..{descriptor.degree}: {images}")
    return GroupElement(descriptor, images)


def make_matrix(descriptor: GroupDescriptor, a: int, b: int, c: int) -> GroupElement:
    q = descriptor.modulus
    return GroupElement(descriptor, (a % q, b % q, c % q))


def identity(descriptor: GroupDescriptor) -> GroupElement:
    if descriptor.backend == PERMUTATION:
        return GroupElement(descriptor, tuple(range(1, descriptor.degree + 1)))
    return GroupElement(descriptor, (0, 0, 0))


def _check_same(a: GroupElement, b: GroupElement) -> None:
    if a.descriptor != b.descriptor:
        raise BackendMismatchError(f"{a.descriptor} vs {b.descriptor}")


def g_mul(a: GroupElement, b: GroupElement) -> GroupElement:
    """Group product a*b, applying b first: (a*b)(i) = a(b(i))."""
    _check_same(a, b)
    if a.descriptor.backend == PERMUTATION:
        pa, pb = a.payload, b.payload
        return GroupElement(a.descriptor, tuple(pa[pb[i] - 1] for i in range(len(pa))))
    q = a.descriptor.modulus
    a1, b1, c1 = a.payload
    a2, b2, c2 = b.payload
    return GroupElement(a.descriptor, ((a1 + a2) % q, (b1 + b2 + a1 * c2) % q, (c1 + c2) % q))


def g_inv(a: GroupElement) -> GroupElement:
    if a.descriptor.backend == PERMUTATION:
        out = [0] * len(a.payload)
        for i, image in enumerate(a.payload):
            out[image - 1] = i + 1
        return GroupElement(a.descriptor, tuple(out))
    q = a.descriptor.modulus
    x, y, z = a.payload
    return GroupElement(a.descriptor, (-x % q, (x * z - y) % q, -z % q))


def g_conj(x: GroupElement, g: GroupElement) -> GroupElement:
    """Conjugate x^g = g^-1 * x * g."""
    _check_same(x, g)
    return g_mul(g_inv(g), g_mul(x, g))


def g_pow(a: GroupElement, k: int) -> GroupElement:
    if k < 0:
        return g_pow(g_inv(a), -k)
    out = identity(a.descriptor)
    base = a
    while k:
        if k & 1:
            out = g_mul(out, base)
        base = g_mul(base, base)
        k >>= 1
    return out


def g_commutes(a: GroupElement, b: GroupElement) -> bool:
    return g_mul(a, b) == g_mul(b, a)


def g_order(a: GroupElement) -> int:
    """Multiplicative order; cycle-structure LCM for permutations."""
    if a.descriptor.backend == PERMUTATION:
        order = 1
        seen = [False] * len(a.payload)
        for start in range(len(a.payload)):
            if seen[start]:
                continue
            length = 0
            i = start
            while not seen[i]:
                seen[i] = True
                i = a.payload[i] - 1
                length += 1
            order = math.lcm(order, length)
        return order
    # unitriangular over Z_q (q odd prime): non-identity elements have order q
    return 1 if a.is_identity() else a.descriptor.modulus


def g_random(descriptor: GroupDescriptor, seed) -> GroupElement:
    """Uniform element: Fisher-Yates for permutations, uniform entries for
    matrices."""
    rng = as_rng(seed)
    if descriptor.backend == PERMUTATION:
        images = list(range(1, descriptor.degree + 1))
        rng.shuffle(images)
        return GroupElement(descriptor, tuple(images))
    q = descriptor.modulus
    return GroupElement(descriptor, (rng.randbelow(q), rng.randbelow(q), rng.randbelow(q)))


def g_random_non_identity(descriptor: GroupDescriptor, rng: SeededRng) -> GroupElement:
    while True:
        x = g_random(descriptor, rng)
        if not x.is_identity():
            return x


def enumerate_elements(descriptor: GroupDescriptor, budget: int):
    """Yield every element of the platform group; guarded by ``budget``."""
    total = descriptor.order()
    if total > budget:
        raise BudgetExceededError(f"group has {total} elements, budget {budget}")
    if descriptor.backend == PERMUTATION:
        for images in itertools.permutations(range(1, descriptor.degree + 1)):
            yield GroupElement(descriptor, images)
    else:
        q = descriptor.modulus
        for a in range(q):
            for b in range(q):
                for c in range(q):
                    yield GroupElement(descriptor, (a, b, c))


@dataclass(frozen=True)
class CommutingFamily:
    """Pairwise-commuting non-identity elements; order checked on build."""

    elements: tuple[GroupElement, ...]
    strategy: str

    def __post_init__(self):
        for f in self.elements:
            if f.is_identity():
                raise ValueError("family members must not be the identity")
        for f, g in itertools.combinations(self.elements, 2):
            if not g_commutes(f, g):
                raise ValueError("family members must pairwise commute")

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def descriptor(self) -> GroupDescriptor:
        return self.elements[0].descriptor

    def to_dict(self) -> dict:
        return {
            "strategy": self.strategy,
            "elements": [f.to_dict() for f in self.elements],
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "CommutingFamily":
        return cls(
            elements=tuple(GroupElement.from_dict(e) for e in doc["elements"]),
            strategy=doc["strategy"],
        )


def sample_commuting_family(
    descriptor: GroupDescriptor, n: int, strategy: str, seed, max_attempts: int = 1000
) -> CommutingFamily:
    """Sample n pairwise-commuting non-identity elements.

    disjoint-support: transpositions (1 2), (3 4), ... (permutations only);
    powers-of-one: a, a^2, ..., a^n for a random a of order > n;
    abelian-matrix-slice: matrices with top row (1, a, c) and zero a23
    (unitriangular only).
    """
    rng = as_rng(seed)
    if n < 1:
        raise ValueError("n must be >= 1")
    if strategy == DISJOINT_SUPPORT:
        if descriptor.backend != PERMUTATION:
            raise CapacityExceededError("disjoint-support needs the permutation backend")
        if descriptor.degree < 2 * n:
            raise CapacityExceededError(
                f"degree {descriptor.degree} cannot host {n} disjoint transpositions"
            )
        elements = []
        for i in range(n):
            images = list(range(1, descriptor.degree + 1))
            images[2 * i], images[2 * i + 1] = images[2 * i + 1], images[2 * i]
            elements.append(GroupElement(descriptor, tuple(images)))
        return CommutingFamily(tuple(elements), strategy)
    if strategy == POWERS_OF_ONE:
        for _ in range(max_attempts):
            a = g_random_non_identity(descriptor, rng)
            if g_order(a) > n:
                return CommutingFamily(
                    tuple(g_pow(a, k) for k in range(1, n + 1)), strategy
                )
        raise CapacityExceededError(f"no element of order > {n} found")
    if strategy == ABELIAN_MATRIX_SLICE:
        if descriptor.backend != UNITRIANGULAR:
            raise CapacityExceededError("abelian-matrix-slice needs the matrix backend")
        q = descriptor.modulus
        if n > q * q - 1:
            raise CapacityExceededError(f"slice has only {q * q - 1} non-identity elements")
        elements = []
        seen = set()
        while len(elements) < n:
            a, c = rng.randbelow(q), rng.randbelow(q)
            if (a, c) == (0, 0) or (a, c) in seen:
                continue
            seen.add((a, c))
            elements.append(GroupElement(descriptor, (a, c, 0)))
        return CommutingFamily(tuple(elements), strategy)
    raise ValueError(f"unknown strategy {strategy!r}")


def commuting_sets(set_a, set_b) -> bool:
    """True iff every element of set_a commutes with every element of set_b."""
    set_a, set_b = list(set_a), list(set_b)
    for a in set_a:
        for b in set_b:
            _check_same(a, b)
            if not g_commutes(a, b):
                return False
    return True
