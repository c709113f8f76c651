"""Verifiable secret sharing by conjugation with a commuting family.

The dealer fixes a pairwise-commuting family f_1..f_n (the shares) and a
group secret s, then publishes

    S   = s conjugated by the product of all f_i,
    h_i = s conjugated by the product of all f_j with j != i.

Any n-1 holders recover s by conjugating the absent index's h_i with the
inverse of the product of their shares; holder i self-checks via
h_i^(f_i) == S.  A general threshold t publishes one entry per t-subset
instead.  Because commutation makes product order irrelevant, all products
here run in ascending index order as a convention only.

Mutual verification between two holders ships in two variants: the literal
equation f_i^-1 h_j f_i == f_j^-1 h_i f_i (whose right side is not a
conjugation), and the symmetric reading h_j^(f_i) == h_i^(f_j).  Neither is
an identity of honest shares in general; the symmetric variant accepts
exactly when s^(f_j^-1 f_i) == s^(f_i^-1 f_j), which the tests pin down.

If conjugacy search were easy in the platform, f_i would fall out of
(S, h_i) directly; ``attack_conj_search`` demonstrates this by enumeration
on small platforms.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import reduce

from .errors import CapacityExceededError, DegenerateSecretError, WrongCoalitionError
from .groups import (
    CommutingFamily,
    GroupDescriptor,
    GroupElement,
    enumerate_elements,
    g_commutes,
    g_conj,
    g_inv,
    g_mul,
)

DEFAULT_SUBSET_CAP = 10_000
DEFAULT_ATTACK_BUDGET = 50_000

ALL_SUBSETS = "all-subsets"
LISTED = "listed"


@dataclass(frozen=True)
class NaVssBoard:
    """Public values of an (n-1)-threshold deal; indices are 1-based."""

    S: GroupElement
    h: tuple[GroupElement, ...]

    @property
    def n(self) -> int:
        return len(self.h)

    @property
    def descriptor(self) -> GroupDescriptor:
        return self.S.descriptor

    def to_dict(self) -> dict:
        return {
            "descriptor": self.descriptor.to_dict(),
            "S": self.S.to_dict(),
            "h": [h_i.to_dict() for h_i in self.h],
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "NaVssBoard":
        return cls(
            S=GroupElement.from_dict(doc["S"]),
            h=tuple(GroupElement.from_dict(e) for e in doc["h"]),
        )


@dataclass(frozen=True)
class NaVssThresholdBoard:
    """One published conjugate per reconstructable t-subset."""

    t: int
    subsets: tuple[tuple[tuple[int, ...], GroupElement], ...]

    @property
    def descriptor(self) -> GroupDescriptor:
        return self.subsets[0][1].descriptor

    def entry_for(self, coalition) -> GroupElement | None:
        key = tuple(sorted(coalition))
        for indices, h_H in self.subsets:
            if indices == key:
                return h_H
        return None

    def to_dict(self) -> dict:
        return {
            "descriptor": self.descriptor.to_dict(),
            "t": self.t,
            "subsets": [
                {"H": list(indices), "h_H": h_H.to_dict()} for indices, h_H in self.subsets
            ],
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "NaVssThresholdBoard":
        return cls(
            t=int(doc["t"]),
            subsets=tuple(
                (tuple(int(i) for i in entry["H"]), GroupElement.from_dict(entry["h_H"]))
                for entry in doc["subsets"]
            ),
        )


def _product(elements) -> GroupElement:
    elements = list(elements)
    return reduce(g_mul, elements[1:], elements[0])


def _check_degenerate(secret: GroupElement, family: CommutingFamily) -> None:
    if all(g_commutes(secret, f) for f in family.elements):
        raise DegenerateSecretError(
            "secret commutes with every share; S would equal s and leak it"
        )


def deal(secret: GroupElement, family: CommutingFamily) -> tuple[NaVssBoard, dict[int, GroupElement]]:
    """Publish S and h_1..h_n; deliver f_i privately (returned keyed by index)."""
    if len(family) < 2:
        raise CapacityExceededError("need at least 2 shares")
    _check_degenerate(secret, family)
    fs = family.elements
    S = g_conj(secret, _product(fs))
    h = tuple(
        g_conj(secret, _product([f for j, f in enumerate(fs) if j != i]))
        for i in range(len(fs))
    )
    shares = {i + 1: f for i, f in enumerate(fs)}
    return NaVssBoard(S=S, h=h), shares


def reconstruct(board: NaVssBoard, missing: int, shares: dict[int, GroupElement]) -> GroupElement:
    """Coalition of everyone but ``missing`` conjugates h_missing back to s."""
    expected = set(range(1, board.n + 1)) - {missing}
    if not 1 <= missing <= board.n or set(shares) != expected:
        raise WrongCoalitionError(
            f"need exactly the shares of {sorted(expected)}, got {sorted(shares)}"
        )
    product = _product([shares[j] for j in sorted(shares)])
    return g_conj(board.h[missing - 1], g_inv(product))


def self_verify(board: NaVssBoard, i: int, f_i: GroupElement) -> bool:
    """Holder check: h_i conjugated by f_i must equal S."""
    return g_conj(board.h[i - 1], f_i) == board.S


LITERAL = "literal"
SYMMETRIC = "symmetric"


def mutual_verify(
    board: NaVssBoard,
    i: int,
    f_i: GroupElement,
    j: int,
    f_j: GroupElement,
    variant: str = SYMMETRIC,
) -> bool:
    """Pairwise check between holders i and j, in either variant (see module
    docstring for why neither accepts all honest pairs)."""
    if i == j:
        raise ValueError("mutual verification needs two distinct holders")
    h_i, h_j = board.h[i - 1], board.h[j - 1]
    left = g_conj(h_j, f_i)
    if variant == SYMMETRIC:
        return left == g_conj(h_i, f_j)
    if variant == LITERAL:
        return left == g_mul(g_inv(f_j), g_mul(h_i, f_i))
    raise ValueError(f"unknown variant {variant!r}")


def deal_threshold(
    secret: GroupElement,
    family: CommutingFamily,
    t: int,
    subset_policy: str = ALL_SUBSETS,
    listed_subsets=None,
    cap: int = DEFAULT_SUBSET_CAP,
) -> tuple[NaVssThresholdBoard, dict[int, GroupElement]]:
    """Publish s^(prod_{j in H} f_j) for each chosen t-subset H."""
    n = len(family)
    if not 1 <= t <= n:
        raise CapacityExceededError(f"need 1 <= t <= {n}, got {t}")
    _check_degenerate(secret, family)
    if subset_policy == ALL_SUBSETS:
        chosen = list(itertools.combinations(range(1, n + 1), t))
        if len(chosen) > cap:
            raise CapacityExceededError(f"{len(chosen)} subsets exceed the cap of {cap}")
    elif subset_policy == LISTED:
        chosen = [tuple(sorted(subset)) for subset in (listed_subsets or [])]
        if not chosen:
            raise CapacityExceededError("listed policy needs at least one subset")
        if any(len(subset) != t or len(set(subset)) != t for subset in chosen):
            raise CapacityExceededError("every listed subset must have t distinct indices")
        if len(set(chosen)) != len(chosen):
            raise CapacityExceededError("listed subsets must be distinct")
    else:
        raise ValueError(f"unknown subset policy {subset_policy!r}")
    fs = family.elements
    entries = tuple(
        (subset, g_conj(secret, _product([fs[j - 1] for j in subset]))) for subset in chosen
    )
    shares = {i + 1: f for i, f in enumerate(fs)}
    return NaVssThresholdBoard(t=t, subsets=entries), shares


def reconstruct_threshold(
    board: NaVssThresholdBoard, coalition, shares: dict[int, GroupElement]
) -> GroupElement:
    """A coalition matching a published subset conjugates its entry back."""
    coalition = tuple(sorted(coalition))
    if set(shares) != set(coalition):
        raise WrongCoalitionError("shares must cover exactly the coalition")
    h_H = board.entry_for(coalition)
    if h_H is None:
        raise WrongCoalitionError(f"no published subset matches {coalition}")
    product = _product([shares[j] for j in coalition])
    return g_conj(h_H, g_inv(product))


def attack_conj_search(
    S: GroupElement,
    h_i: GroupElement,
    descriptor: GroupDescriptor,
    budget: int = DEFAULT_ATTACK_BUDGET,
) -> list[GroupElement]:
    """Every u with h_i^u == S, by exhausting the platform group.

    The genuine share always satisfies the equation, so it is always in the
    returned list; the list is the full solution set (a centralizer coset).
    Platforms larger than ``budget`` raise BudgetExceededError.
    """
    candidates = [u for u in enumerate_elements(descriptor, budget) if g_conj(h_i, u) == S]
    return candidates
