"""Interactive proof that an El Gamal pair over Z_n* encrypts an e-th root.

The dealer publishes (A, B) = (g^alpha, m * y^alpha) mod n together with
M = m^e, and convinces a verifier round by round:

  commit:    w random in [0, w_bound];  t_g = g^w,  t_y = y^(e*w)   (mod n)
  challenge: c uniform in [0, 2^l)
  respond:   r = w - c*alpha, over the integers (may be negative)
  check:     t_g == g^r * A^c   and   t_y == y^(e*r) * (B^e / M)^c  (mod n)

Negative responses are transmitted as-is and handled with modular inverses.
The response bound w_bound comes from the parameter bundle (default
2^l * n^2); it is recorded in every transcript.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .encoding import str_to_int
from .errors import MalformedProofError, NotCoprimeError
from .modmath import mod_exp, mod_inv
from .params import RsaParams
from .rng import SeededRng, as_rng


@dataclass(frozen=True)
class ERootInstance:
    """Public values of one encrypted share, plus whichever private values
    the holder of this view is entitled to (None otherwise)."""

    params: RsaParams
    y: int
    A: int
    B: int
    M: int
    m: int | None = None      # dealer + participant
    z: int | None = None      # participant
    alpha: int | None = None  # dealer

    def public(self) -> "ERootInstance":
        return ERootInstance(params=self.params, y=self.y, A=self.A, B=self.B, M=self.M)

    def validate(self) -> None:
        n = self.params.n
        if self.z is not None and self.y != mod_exp(self.params.g, self.z, n):
            raise ValueError("y != g^z")
        if self.alpha is not None:
            if self.A != mod_exp(self.params.g, self.alpha, n):
                raise ValueError("A != g^alpha")
            if self.m is not None and self.B != self.m * mod_exp(self.y, self.alpha, n) % n:
                raise ValueError("B != m * y^alpha")
        if self.m is not None and self.M != mod_exp(self.m, self.params.e, n):
            raise ValueError("M != m^e")

    def to_dict(self, include_private: bool = False) -> dict:
        doc = {
            "params": self.params.to_dict(),
            "y": str(self.y),
            "A": str(self.A),
            "B": str(self.B),
            "M": str(self.M),
        }
        if include_private:
            for name in ("m", "z", "alpha"):
                value = getattr(self, name)
                if value is not None:
                    doc[name] = str(value)
        return doc

    @classmethod
    def from_dict(cls, doc: dict) -> "ERootInstance":
        return cls(
            params=RsaParams.from_dict(doc["params"]),
            y=str_to_int(doc["y"]),
            A=str_to_int(doc["A"]),
            B=str_to_int(doc["B"]),
            M=str_to_int(doc["M"]),
            m=str_to_int(doc["m"]) if "m" in doc else None,
            z=str_to_int(doc["z"]) if "z" in doc else None,
            alpha=str_to_int(doc["alpha"]) if "alpha" in doc else None,
        )


@dataclass(frozen=True)
class ERootCommit:
    t_g: int
    t_y: int
    w: int  # prover-private


@dataclass(frozen=True)
class ERootTranscript:
    t_g: int
    t_y: int
    c: int
    r: int  # signed
    w_bound: int

    def to_dict(self) -> dict:
        return {
            "t_g": str(self.t_g),
            "t_y": str(self.t_y),
            "c": str(self.c),
            "r": str(self.r),
        }

    @classmethod
    def from_dict(cls, doc: dict, w_bound: int) -> "ERootTranscript":
        return cls(
            t_g=str_to_int(doc["t_g"]),
            t_y=str_to_int(doc["t_y"]),
            c=str_to_int(doc["c"]),
            r=int(doc["r"]),
            w_bound=w_bound,
        )


def setup_instance(
    params: RsaParams, m: int, seed=None, z: int | None = None, alpha: int | None = None
) -> ERootInstance:
    """Build a full instance for secret share m; z and alpha are drawn from
    the seeded generator unless pinned explicitly."""
    n = params.n
    if gcd(m % n, n) != 1:
        raise NotCoprimeError(f"share {m} is not a unit mod {n}")
    if z is None or alpha is None:
        rng = as_rng(seed)
        z = rng.randbelow(n) if z is None else z
        alpha = rng.randbelow(n) if alpha is None else alpha
    y = mod_exp(params.g, z, n)
    A = mod_exp(params.g, alpha, n)
    B = m * mod_exp(y, alpha, n) % n
    M = mod_exp(m, params.e, n)
    return ERootInstance(params=params, y=y, A=A, B=B, M=M, m=m % n, z=z, alpha=alpha)


def retrieve_share(pair: tuple[int, int], z: int, n: int) -> int:
    """Participant-side decryption: m = A^-z * B mod n."""
    A, B = pair
    return mod_exp(A, -z, n) * B % n


def prover_commit(instance: ERootInstance, seed=None, w: int | None = None) -> ERootCommit:
    """First message: t_g = g^w, t_y = y^(e*w) for w in [0, w_bound]."""
    params = instance.params
    if w is None:
        w = as_rng(seed).randbelow(params.w_bound() + 1)
    n = params.n
    return ERootCommit(
        t_g=mod_exp(params.g, w, n),
        t_y=mod_exp(instance.y, params.e * w, n),
        w=w,
    )


def verifier_challenge(l: int, seed) -> int:
    """Uniform challenge in [0, 2^l)."""
    if l < 1:
        raise ValueError("l must be >= 1")
    return as_rng(seed).randbelow(1 << l)


def prover_respond(w: int, c: int, alpha: int) -> int:
    """r = w - c*alpha over the integers; negative values are legal."""
    return w - c * alpha


def verify_transcript(
    instance: ERootInstance, transcript: ERootTranscript, l: int | None = None
) -> bool:
    """Both verifier congruences; inverses stand in for negative exponents."""
    params = instance.params
    n, e = params.n, params.e
    l = params.l if l is None else l
    if not 0 <= transcript.c < (1 << l):
        raise MalformedProofError(f"challenge {transcript.c} outside [0, 2^{l})")
    c, r = transcript.c, transcript.r
    lhs_g = mod_exp(params.g, r, n) * mod_exp(instance.A, c, n) % n
    if lhs_g != transcript.t_g:
        return False
    ratio = mod_exp(instance.B, e, n) * mod_inv(instance.M, n) % n
    lhs_y = mod_exp(instance.y, e * r, n) * mod_exp(ratio, c, n) % n
    return lhs_y == transcript.t_y


def run_interactive(
    instance: ERootInstance, rounds: int, seed, l: int | None = None
) -> tuple[bool, tuple[ERootTranscript, ...]]:
    """Sequence commit -> challenge -> respond -> check for each round.

    The dealer and verifier draw from independent child generators so that
    neither can influence the other's stream.
    """
    if rounds < 1:
        raise ValueError("rounds must be >= 1")
    if instance.alpha is None:
        raise ValueError("prover needs the dealer-private alpha")
    l = instance.params.l if l is None else l
    root = as_rng(seed)
    dealer_rng = root.child("dealer")
    verifier_rng = root.child("verifier")
    w_bound = instance.params.w_bound()
    transcripts = []
    accepted = True
    for _ in range(rounds):
        commit = prover_commit(instance, dealer_rng)
        c = verifier_challenge(l, verifier_rng)
        r = prover_respond(commit.w, c, instance.alpha)
        transcript = ERootTranscript(t_g=commit.t_g, t_y=commit.t_y, c=c, r=r, w_bound=w_bound)
        transcripts.append(transcript)
        accepted = accepted and verify_transcript(instance, transcript, l=l)
    return accepted, tuple(transcripts)


def transcript_document(instance: ERootInstance, transcripts) -> dict:
    """Flat-file form of an interactive session: public instance + rounds."""
    transcripts = list(transcripts)
    params = instance.params
    return {
        "n": str(params.n),
        "e": str(params.e),
        "g": str(params.g),
        "y": str(instance.y),
        "A": str(instance.A),
        "B": str(instance.B),
        "M": str(instance.M),
        "l": params.l,
        "w_bound": str(transcripts[0].w_bound if transcripts else params.w_bound()),
        "rounds": [t.to_dict() for t in transcripts],
    }


def parse_transcript_document(doc: dict, epsilon="1") -> tuple[ERootInstance, tuple[ERootTranscript, ...]]:
    from fractions import Fraction

    params = RsaParams(
        n=str_to_int(doc["n"]),
        e=str_to_int(doc["e"]),
        g=str_to_int(doc["g"]),
        l=int(doc["l"]),
        epsilon=Fraction(epsilon),
    )
    instance = ERootInstance(
        params=params,
        y=str_to_int(doc["y"]),
        A=str_to_int(doc["A"]),
        B=str_to_int(doc["B"]),
        M=str_to_int(doc["M"]),
    )
    w_bound = str_to_int(doc["w_bound"])
    rounds = tuple(ERootTranscript.from_dict(r, w_bound) for r in doc["rounds"])
    return instance, rounds
