"""Non-interactive verifiable secret sharing over a safe-prime pair.

The dealer Shamir-shares a secret mod p, commits to the secret and the
polynomial coefficients in the order-p group G (the subgroup of Z_P*
generated by g), encrypts each share v under the holder's El Gamal key as
(A, B) = (h^alpha, v^-1 * y^alpha) mod p, and attaches a cut-and-choose
proof that (A, B) encrypts the double discrete logarithm of the published
commitment V = g^v.  Everything a verifier needs is on the board; share
holders additionally check the commitment product against their own share.

Proof layout: l rounds with commitments t_h[i] = h^w_i mod p and
t_g[i] = g^(y^w_i) in G; the challenge bits come from the canonical hash of
V || A || B || t_h1 || t_g1 || ... and the responses are r_i = w_i - c_i *
alpha mod q.  A verifier recomputes t_h[i] = h^r_i * A^c_i and
t_g[i] = (g^(1-c_i) * V^(c_i * B))^(y^r_i) and re-derives the bits.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import shamir
from .encoding import bits_to_str, encode_uint, hash_bits, str_to_bits, str_to_int
from .errors import ConfigError, MalformedProofError, NonInvertibleError
from .modmath import mod_exp, mod_inv
from .params import SchnorrLikeParams
from .rng import SeededRng, as_rng

DEFAULT_PROOF_BITS = 16
DEMO_PROOF_BITS = 100

_SPLIT_RETRIES = 1000


@dataclass(frozen=True)
class ParticipantKey:
    z: int  # private
    y: int

    def to_dict(self) -> dict:
        return {"z": str(self.z), "y": str(self.y)}

    @classmethod
    def from_dict(cls, doc: dict) -> "ParticipantKey":
        return cls(z=str_to_int(doc["z"]), y=str_to_int(doc["y"]))


@dataclass(frozen=True)
class DoubleDlogProof:
    c: tuple[int, ...]  # challenge bits
    r: tuple[int, ...]  # responses in Z_q

    def __post_init__(self):
        if len(self.c) != len(self.r) or not self.c:
            raise MalformedProofError("challenge and response lengths must match and be >= 1")
        if any(bit not in (0, 1) for bit in self.c):
            raise MalformedProofError("challenge entries must be bits")

    @property
    def l(self) -> int:
        return len(self.c)

    def to_dict(self) -> dict:
        return {"l": self.l, "c": bits_to_str(self.c), "r": [str(v) for v in self.r]}

    @classmethod
    def from_dict(cls, doc: dict) -> "DoubleDlogProof":
        proof = cls(c=str_to_bits(doc["c"]), r=tuple(str_to_int(v) for v in doc["r"]))
        if proof.l != int(doc["l"]):
            raise MalformedProofError("declared l does not match challenge length")
        return proof


@dataclass(frozen=True)
class DlogEntry:
    """Per-participant public row: coordinate, key, ciphertext, commitment,
    proof."""

    x: int
    y: int
    A: int
    B: int
    V: int
    proof: DoubleDlogProof

    def to_dict(self) -> dict:
        return {
            "x": str(self.x),
            "y": str(self.y),
            "A": str(self.A),
            "B": str(self.B),
            "V": str(self.V),
            "proof": self.proof.to_dict(),
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "DlogEntry":
        return cls(
            x=str_to_int(doc["x"]),
            y=str_to_int(doc["y"]),
            A=str_to_int(doc["A"]),
            B=str_to_int(doc["B"]),
            V=str_to_int(doc["V"]),
            proof=DoubleDlogProof.from_dict(doc["proof"]),
        )


@dataclass(frozen=True)
class DlogBoard:
    params: SchnorrLikeParams
    k: int
    S: int
    F: tuple[int, ...]  # coefficient commitments g^{f_j}, j = 1..k-1
    entries: tuple[DlogEntry, ...]

    @property
    def n(self) -> int:
        return len(self.entries)

    def to_dict(self) -> dict:
        return {
            "params": self.params.to_dict(),
            "k": self.k,
            "S": str(self.S),
            "F": [str(f) for f in self.F],
            "participants": [entry.to_dict() for entry in self.entries],
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "DlogBoard":
        return cls(
            params=SchnorrLikeParams.from_dict(doc["params"]),
            k=int(doc["k"]),
            S=str_to_int(doc["S"]),
            F=tuple(str_to_int(f) for f in doc["F"]),
            entries=tuple(DlogEntry.from_dict(e) for e in doc["participants"]),
        )


def participant_keygen(params: SchnorrLikeParams, seed, z: int | None = None) -> ParticipantKey:
    """Draw z uniform in [1, q) and publish y = h^z mod p."""
    if z is None:
        z = as_rng(seed).randrange(1, params.q)
    return ParticipantKey(z=z, y=mod_exp(params.h, z, params.p))


def encrypt_share(share: int, y: int, alpha: int, params: SchnorrLikeParams) -> tuple[int, int]:
    """El Gamal pair (A, B) = (h^alpha, share^-1 * y^alpha) mod p."""
    A = mod_exp(params.h, alpha, params.p)
    B = mod_inv(share, params.p) * mod_exp(y, alpha, params.p) % params.p
    return A, B


def decrypt_share(pair: tuple[int, int], key: ParticipantKey, p: int) -> int:
    """Recover the share as A^z * B^-1 mod p."""
    A, B = pair
    return mod_exp(A, key.z, p) * mod_inv(B, p) % p


def prove(
    V: int,
    A: int,
    B: int,
    alpha: int,
    y: int,
    params: SchnorrLikeParams,
    l: int = DEFAULT_PROOF_BITS,
    seed=None,
    nonces=None,
) -> DoubleDlogProof:
    """Prove that (A, B) encrypts the double discrete log of V.

    ``nonces`` pins the per-round w values for reproducing worked examples;
    normally they are drawn from the seeded generator.
    """
    if l < 1:
        raise ValueError("l must be >= 1")
    p, q = params.p, params.q
    if nonces is None:
        rng = as_rng(seed)
        nonces = [rng.randbelow(q) for _ in range(l)]
    if len(nonces) != l:
        raise ValueError("need one nonce per round")
    t_pairs = []
    for w in nonces:
        t_h = mod_exp(params.h, w, p)
        t_g = mod_exp(params.g, mod_exp(y, w, p), params.P)
        t_pairs.append((t_h, t_g))
    c = _challenge_bits(V, A, B, t_pairs, l)
    r = tuple((w - bit * alpha) % q for w, bit in zip(nonces, c))
    return DoubleDlogProof(c=c, r=r)


def verify(
    V: int, A: int, B: int, proof: DoubleDlogProof, y: int, params: SchnorrLikeParams
) -> bool:
    """Recompute the round commitments from (c, r) and re-derive the bits."""
    p = params.p
    if any(not 0 <= r_i < params.q for r_i in proof.r):
        raise MalformedProofError("responses must lie in [0, q)")
    t_pairs = []
    for bit, r_i in zip(proof.c, proof.r):
        t_h = mod_exp(params.h, r_i, p) * mod_exp(A, bit, p) % p
        base = mod_exp(params.g, 1 - bit, params.P) * mod_exp(V, bit * B % p, params.P) % params.P
        t_g = mod_exp(base, mod_exp(y, r_i, p), params.P)
        t_pairs.append((t_h, t_g))
    return _challenge_bits(V, A, B, t_pairs, proof.l) == proof.c


def _challenge_bits(V: int, A: int, B: int, t_pairs, l: int) -> tuple[int, ...]:
    payload = encode_uint(V) + encode_uint(A) + encode_uint(B)
    for t_h, t_g in t_pairs:
        payload += encode_uint(t_h) + encode_uint(t_g)
    return hash_bits(payload, l)


def deal(
    secret: int,
    policy: shamir.SharingPolicy,
    participant_keys,
    params: SchnorrLikeParams,
    seed,
    l: int = DEFAULT_PROOF_BITS,
) -> tuple[DlogBoard, tuple[int, ...]]:
    """Produce the full public board plus the private shares.

    Zero shares cannot be El Gamal-inverted, so the polynomial is resampled
    until every share is a unit mod p.
    """
    participant_keys = list(participant_keys)
    if policy.p != params.p:
        raise ConfigError("policy modulus must match params.p")
    if len(participant_keys) != policy.n:
        raise ConfigError("one participant key per share required")
    rng = as_rng(seed)
    share_set = None
    for _ in range(_SPLIT_RETRIES):
        candidate = shamir.split(secret, policy, rng)
        if all(s != 0 for s in candidate.shares):
            share_set = candidate
            break
        if policy.k == 1:
            break
    if share_set is None:
        raise NonInvertibleError(0, params.p, params.p)
    g, P = params.g, params.P
    S = mod_exp(g, secret, P)
    F = tuple(mod_exp(g, f, P) for f in share_set.coefficients)
    entries = []
    for x_i, s_i, key in zip(policy.x_coords, share_set.shares, participant_keys):
        alpha = rng.randrange(1, params.q)
        A, B = encrypt_share(s_i, key.y, alpha, params)
        V = mod_exp(g, s_i, P)
        proof = prove(V, A, B, alpha, key.y, params, l=l, seed=rng)
        entries.append(DlogEntry(x=x_i, y=key.y, A=A, B=B, V=V, proof=proof))
    board = DlogBoard(params=params, k=policy.k, S=S, F=F, entries=tuple(entries))
    return board, share_set.shares


def vss_check(board: DlogBoard, i: int, share: int | None = None) -> tuple[bool, int]:
    """Check participant i's row against the coefficient commitments.

    Computes S_i = S * prod_j F_j^(x_i^j mod p) in G.  With the private
    share supplied the check is S_i == g^share; without it (public mode)
    it is S_i == V_i.
    """
    params = board.params
    entry = board.entries[i]
    S_i = board.S
    x_power = 1
    for F_j in board.F:
        x_power = x_power * entry.x % params.p
        S_i = S_i * mod_exp(F_j, x_power, params.P) % params.P
    if share is None:
        return S_i == entry.V, S_i
    return S_i == mod_exp(params.g, share, params.P), S_i
