"""Share distribution by conjugacy El Gamal, with its literal audit check.

Distribution and retrieval are sound and round-trip exactly: the dealer
publishes (A, B) = (b^t, x^(c^t)) and the holder of s recovers
x = B^((A^s)^-1).  The attached cut-and-choose check, however, is
implemented exactly as designed -- the verifier tests t_h == A^c_resp for a
challenge bit -- and that equation is *not* an identity of honest
transcripts unless the conjugators involved commute.  This module keeps the
check literal on purpose; the tests characterize exactly when it accepts
(see ``verify_literal``).  The published values N = n0^x and t_g = b^(y^w)
are never consumed by the literal check; they are recorded as
published-but-unused.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import BadChallengeError
from .groups import GroupElement, g_conj, g_inv, g_mul, g_random
from .rng import as_rng


@dataclass(frozen=True)
class NaPvssEntry:
    """One participant's public row."""

    b: GroupElement
    c: GroupElement
    A: GroupElement
    B: GroupElement

    def to_dict(self) -> dict:
        return {k: getattr(self, k).to_dict() for k in ("b", "c", "A", "B")}

    @classmethod
    def from_dict(cls, doc: dict) -> "NaPvssEntry":
        return cls(**{k: GroupElement.from_dict(doc[k]) for k in ("b", "c", "A", "B")})


@dataclass(frozen=True)
class NaPvssCommit:
    N: GroupElement
    t_h: GroupElement
    t_g: GroupElement
    y: GroupElement  # dealer-private
    w: GroupElement  # dealer-private


@dataclass(frozen=True)
class NaPvssResponse:
    r: int
    c_resp: GroupElement

    def to_dict(self) -> dict:
        return {"r": self.r, "c_resp": self.c_resp.to_dict()}

    @classmethod
    def from_dict(cls, doc: dict) -> "NaPvssResponse":
        return cls(r=int(doc["r"]), c_resp=GroupElement.from_dict(doc["c_resp"]))


def distribute(x: GroupElement, b: GroupElement, c: GroupElement, t: GroupElement) -> NaPvssEntry:
    """Publish (A, B) = (b^t, x^(c^t)) for share x under public key (b, c)."""
    return NaPvssEntry(b=b, c=c, A=g_conj(b, t), B=g_conj(x, g_conj(c, t)))


def retrieve(entry: NaPvssEntry, s: GroupElement) -> GroupElement:
    """Recover the share: x = B^((A^s)^-1)."""
    return g_conj(entry.B, g_inv(g_conj(entry.A, s)))


def prove_commit(
    x: GroupElement,
    n0: GroupElement,
    b: GroupElement,
    seed=None,
    y: GroupElement | None = None,
    w: GroupElement | None = None,
) -> NaPvssCommit:
    """Dealer's commitment: N = n0^x, t_h = b^w, t_g = b^(y^w) for random
    y, w; the pair (y, w) stays with the dealer."""
    if y is None or w is None:
        rng = as_rng(seed)
        y = g_random(b.descriptor, rng) if y is None else y
        w = g_random(b.descriptor, rng) if w is None else w
    return NaPvssCommit(
        N=g_conj(n0, x),
        t_h=g_conj(b, w),
        t_g=g_conj(b, g_conj(y, w)),
        y=y,
        w=w,
    )


def respond(r: int, w: GroupElement, t: GroupElement) -> NaPvssResponse:
    """c_resp = w*t for challenge 0, w for challenge 1."""
    if r == 0:
        return NaPvssResponse(r=0, c_resp=g_mul(w, t))
    if r == 1:
        return NaPvssResponse(r=1, c_resp=w)
    raise BadChallengeError(f"challenge bit must be 0 or 1, got {r}")


def verify_literal(A: GroupElement, t_h: GroupElement, response: NaPvssResponse) -> bool:
    """The check exactly as designed: t_h == A^c_resp.

    For honest transcripts this evaluates to b^(t*c_resp) == b^w, which holds
    only when the relevant conjugators commute (e.g. never for generic
    non-commuting t, w).  No repair is attempted here.
    """
    return t_h == g_conj(A, response.c_resp)
