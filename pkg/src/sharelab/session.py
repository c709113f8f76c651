"""Deterministic multi-party session runner.

One session executes a full protocol run -- deal, per-role verification,
reconstruction by every admissible coalition -- with all public messages on
a scripted bulletin board and all randomness drawn from per-role children
of the session seed.  Share delivery models the secure channel as private
documents outside the board; the board never carries private values.

Adversary modes deterministically corrupt exactly one artifact (a delivered
share, a posted ciphertext, a proof message, or the published subset list)
so that honest and corrupted runs with the same seed are comparable
post-for-post.

A note on the conjugacy-El-Gamal scheme (``na-pvss``): its audit check is
implemented literally and rejects honest transcripts whenever the relevant
conjugators do not commute, which for randomly drawn elements is nearly
always.  An honest na-pvss session therefore reports its ``literal-verify``
checks as failed; that is the faithful behavior, not a harness bug.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from math import gcd

from . import dlog_pvss, eroot_pvss, na_kex, na_pvss, na_vss, shamir
from .board import BulletinBoard
from .errors import ConfigError, WorkbenchError
from .groups import (
    ABELIAN_MATRIX_SLICE,
    DISJOINT_SUPPORT,
    PERMUTATION,
    UNITRIANGULAR,
    GroupDescriptor,
    GroupElement,
    g_commutes,
    g_conj,
    g_mul,
    g_random,
    g_random_non_identity,
    make_matrix,
    make_permutation,
    sample_commuting_family,
)
from .params import gen_rsa_params, gen_schnorr_like_params, tiny_rsa_params, tiny_schnorr_params
from .rng import SeededRng

SCHEMES = ("dlog", "eroot", "na-kex", "na-pvss", "na-vss", "na-vss-threshold")

ADVERSARIES = {
    "dlog": ("none", "tamper-share", "tamper-ciphertext", "tamper-proof"),
    "eroot": ("none", "tamper-ciphertext", "tamper-proof"),
    "na-kex": ("none", "tamper-ciphertext"),
    "na-pvss": ("none", "tamper-ciphertext"),
    "na-vss": ("none", "tamper-share"),
    "na-vss-threshold": ("none", "tamper-share", "wrong-subset"),
}

DEALER = "dealer"
VERIFIER = "verifier"


def participant(i: int) -> str:
    return f"participant-{i}"


@dataclass(frozen=True)
class SessionConfig:
    scheme: str
    seed: int = 0
    n: int = 3
    k: int = 2
    t: int = 2
    rounds: int = 4
    l: int | None = None
    tiny: bool = True
    bits: int = 512
    backend: str = PERMUTATION
    degree: int | None = None
    modulus: int | None = None
    adversary: str = "none"
    target: int = 1
    secret: int | None = None

    def __post_init__(self):
        if self.scheme not in SCHEMES:
            raise ConfigError(f"unknown scheme {self.scheme!r}")
        if self.adversary not in ADVERSARIES[self.scheme]:
            raise ConfigError(
                f"adversary {self.adversary!r} does not apply to {self.scheme}"
            )
        if self.scheme == "dlog" and not 1 <= self.k <= self.n:
            raise ConfigError("need 1 <= k <= n")
        if self.scheme in ("na-vss", "na-vss-threshold") and self.n < 2:
            raise ConfigError("non-abelian sharing needs n >= 2")
        if self.scheme == "na-vss-threshold":
            if not 1 <= self.t <= self.n:
                raise ConfigError("need 1 <= t <= n")
            if self.adversary == "wrong-subset" and _ncr(self.n, self.t) < 2:
                raise ConfigError("wrong-subset needs at least two t-subsets")
        if self.rounds < 1:
            raise ConfigError("rounds must be >= 1")
        if self.adversary != "none" and not 1 <= self.target <= self.n:
            raise ConfigError("adversary target out of range")
        if self.backend not in (PERMUTATION, UNITRIANGULAR):
            raise ConfigError(f"unknown backend {self.backend!r}")

    @property
    def proof_bits(self) -> int:
        if self.l is not None:
            return self.l
        return dlog_pvss.DEFAULT_PROOF_BITS if self.tiny else dlog_pvss.DEMO_PROOF_BITS

    def descriptor(self) -> GroupDescriptor:
        if self.backend == PERMUTATION:
            degree = self.degree if self.degree is not None else max(5, 2 * self.n)
            return GroupDescriptor(PERMUTATION, degree=degree)
        modulus = self.modulus if self.modulus is not None else (101 if self.tiny else 2**61 - 1)
        return GroupDescriptor(UNITRIANGULAR, modulus=modulus)

    def strategy(self) -> str:
        return DISJOINT_SUPPORT if self.backend == PERMUTATION else ABELIAN_MATRIX_SLICE

    def to_dict(self) -> dict:
        doc = {
            "scheme": self.scheme,
            "seed": self.seed,
            "adversary": self.adversary,
            "tiny": self.tiny,
        }
        if self.adversary != "none":
            doc["target"] = self.target
        if self.scheme == "dlog":
            doc.update(n=self.n, k=self.k, l=self.proof_bits)
        elif self.scheme == "eroot":
            doc.update(n=self.n, rounds=self.rounds)
        elif self.scheme in ("na-vss", "na-vss-threshold"):
            doc.update(n=self.n, backend=self.backend)
            if self.scheme == "na-vss-threshold":
                doc["t"] = self.t
        else:
            doc["backend"] = self.backend
        return doc


def _ncr(n: int, r: int) -> int:
    return math.comb(n, r)


@dataclass
class SessionReport:
    config: dict
    checks: list[dict] = field(default_factory=list)
    recovered: dict = field(default_factory=dict)

    def record(self, name: str, subject: str, ok: bool, error: str | None = None) -> None:
        entry = {"name": name, "subject": subject, "ok": bool(ok)}
        if error is not None:
            entry["error"] = error
        self.checks.append(entry)

    @property
    def all_ok(self) -> bool:
        return all(c["ok"] for c in self.checks)

    def failures(self) -> list[dict]:
        return [c for c in self.checks if not c["ok"]]

    def to_dict(self) -> dict:
        return {
            "config": self.config,
            "checks": self.checks,
            "recovered": self.recovered,
            "all_ok": self.all_ok,
        }


@dataclass
class SessionResult:
    report: SessionReport
    board: BulletinBoard
    private: dict


def run_session(config: SessionConfig) -> SessionResult:
    runner = {
        "dlog": _run_dlog,
        "eroot": _run_eroot,
        "na-kex": _run_na_kex,
        "na-pvss": _run_na_pvss,
        "na-vss": _run_na_vss,
        "na-vss-threshold": _run_na_vss_threshold,
    }[config.scheme]
    return runner(config)


def _checked(report: SessionReport, name: str, subject: str, fn) -> None:
    """Evaluate one check; scheme errors land in the report, never vanish."""
    try:
        report.record(name, subject, fn())
    except WorkbenchError as exc:
        report.record(name, subject, False, error=f"{type(exc).__name__}: {exc}")


# --- dlog ------------------------------------------------------------------


def _run_dlog(config: SessionConfig) -> SessionResult:
    root = SeededRng(config.seed)
    dealer_rng = root.child(DEALER)
    params = (
        tiny_schnorr_params()
        if config.tiny
        else gen_schnorr_like_params(config.bits, root.child("params"))
    )
    n, k = config.n, config.k
    script = {"params": DEALER, "deal": DEALER}
    script.update({f"pubkey/{i}": participant(i) for i in range(1, n + 1)})
    board = BulletinBoard(script=script)
    board.post(DEALER, "params", params.to_dict())

    keys = []
    for i in range(1, n + 1):
        key = dlog_pvss.participant_keygen(params, root.child(participant(i)))
        keys.append(key)
        board.post(participant(i), f"pubkey/{i}", {"y": str(key.y)})

    secret = config.secret if config.secret is not None else dealer_rng.randrange(0, params.p)
    policy = shamir.SharingPolicy(n=n, k=k, p=params.p)
    deal_board, shares = dlog_pvss.deal(
        secret, policy, keys, params, dealer_rng, l=config.proof_bits
    )

    # share delivery over the secure channel, one private document each
    private = {participant(i): {"share": str(s)} for i, s in zip(range(1, n + 1), shares)}

    if config.adversary == "tamper-share":
        honest = int(private[participant(config.target)]["share"])
        private[participant(config.target)]["share"] = str((honest + 1) % params.p)
    elif config.adversary == "tamper-ciphertext":
        entries = list(deal_board.entries)
        victim = entries[config.target - 1]
        entries[config.target - 1] = dlog_pvss.DlogEntry(
            x=victim.x, y=victim.y, A=victim.A,
            B=victim.B % (params.p - 1) + 1,
            V=victim.V, proof=victim.proof,
        )
        deal_board = dlog_pvss.DlogBoard(
            params=params, k=k, S=deal_board.S, F=deal_board.F, entries=tuple(entries)
        )
    elif config.adversary == "tamper-proof":
        entries = list(deal_board.entries)
        victim = entries[config.target - 1]
        proof = victim.proof
        flipped = dlog_pvss.DoubleDlogProof(c=(1 - proof.c[0],) + proof.c[1:], r=proof.r)
        entries[config.target - 1] = dlog_pvss.DlogEntry(
            x=victim.x, y=victim.y, A=victim.A, B=victim.B, V=victim.V, proof=flipped
        )
        deal_board = dlog_pvss.DlogBoard(
            params=params, k=k, S=deal_board.S, F=deal_board.F, entries=tuple(entries)
        )

    board.post(DEALER, "deal", deal_board.to_dict())
    posted = dlog_pvss.DlogBoard.from_dict(board.read_one("deal").payload)

    report = SessionReport(config=config.to_dict())
    for i in range(1, n + 1):
        share_i = int(private[participant(i)]["share"])
        _checked(report, "vss-participant", participant(i),
                 lambda i=i, s=share_i: dlog_pvss.vss_check(posted, i - 1, share=s)[0])
    for i in range(1, n + 1):
        entry = posted.entries[i - 1]
        _checked(report, "pvss-proof", participant(i),
                 lambda e=entry: dlog_pvss.verify(e.V, e.A, e.B, e.proof, e.y, params))
    for i in range(1, n + 1):
        _checked(report, "vss-public", participant(i),
                 lambda i=i: dlog_pvss.vss_check(posted, i - 1)[0])
    for coalition in itertools.combinations(range(1, n + 1), k):
        subject = "coalition-" + ",".join(str(i) for i in coalition)
        points = [
            (posted.entries[i - 1].x, int(private[participant(i)]["share"]))
            for i in coalition
        ]
        value = shamir.reconstruct(points, params.p)
        report.recovered[subject] = str(value)
        _checked(report, "reconstruct", subject, lambda v=value: v == secret)
    return SessionResult(report=report, board=board, private=private)


# --- eroot -----------------------------------------------------------------


def _run_eroot(config: SessionConfig) -> SessionResult:
    root = SeededRng(config.seed)
    dealer_rng = root.child(DEALER)
    verifier_rng = root.child(VERIFIER)
    params = (
        tiny_rsa_params(l=config.l or 4)
        if config.tiny
        else gen_rsa_params(config.bits, 3, root.child("params"), l=config.l or 8)
    )
    n_mod = params.n
    n = config.n
    script = {"params": DEALER}
    for i in range(1, n + 1):
        script[f"pubkey/{i}"] = participant(i)
        script[f"instance/{i}"] = DEALER
        for j in range(config.rounds):
            script[f"commit/{i}/{j}"] = DEALER
            script[f"challenge/{i}/{j}"] = VERIFIER
            script[f"response/{i}/{j}"] = DEALER
    board = BulletinBoard(script=script)
    board.post(DEALER, "params", params.to_dict())

    report = SessionReport(config=config.to_dict())
    private = {}
    for i in range(1, n + 1):
        part_rng = root.child(participant(i))
        z = part_rng.randbelow(n_mod)
        m = dealer_rng.randrange(2, n_mod)
        while gcd(m, n_mod) != 1:
            m = dealer_rng.randrange(2, n_mod)
        alpha = dealer_rng.randbelow(n_mod)
        instance = eroot_pvss.setup_instance(params, m, z=z, alpha=alpha)
        private[participant(i)] = {"z": str(z)}
        private.setdefault(DEALER, {})[f"m/{i}"] = str(m)
        board.post(participant(i), f"pubkey/{i}", {"y": str(instance.y)})

        public = instance.public()
        if config.adversary == "tamper-ciphertext" and i == config.target:
            public = eroot_pvss.ERootInstance(
                params=params, y=public.y, A=public.A,
                B=public.B % (n_mod - 1) + 1, M=public.M,
            )
        board.post(DEALER, f"instance/{i}", {
            "A": str(public.A), "B": str(public.B), "M": str(public.M),
        })

        posted = board.read_one(f"instance/{i}").payload
        seen = eroot_pvss.ERootInstance(
            params=params, y=instance.y,
            A=int(posted["A"]), B=int(posted["B"]), M=int(posted["M"]),
        )
        retrieved = eroot_pvss.retrieve_share((seen.A, seen.B), z, n_mod)
        _checked(report, "retrieve-matches", participant(i), lambda r=retrieved, m=m: r == m)
        _checked(report, "share-power", participant(i),
                 lambda r=retrieved, M=seen.M: pow(r, params.e, n_mod) == M)

        w_bound = params.w_bound()
        for j in range(config.rounds):
            commit = eroot_pvss.prover_commit(instance, dealer_rng)
            board.post(DEALER, f"commit/{i}/{j}", {"t_g": str(commit.t_g), "t_y": str(commit.t_y)})
            c = eroot_pvss.verifier_challenge(params.l, verifier_rng)
            board.post(VERIFIER, f"challenge/{i}/{j}", {"c": str(c)})
            r = eroot_pvss.prover_respond(commit.w, c, alpha)
            if config.adversary == "tamper-proof" and i == config.target and j == 0:
                r += 1
            board.post(DEALER, f"response/{i}/{j}", {"r": str(r)})
            transcript = eroot_pvss.ERootTranscript(
                t_g=commit.t_g, t_y=commit.t_y, c=c, r=r, w_bound=w_bound
            )
            _checked(report, "round-verify", f"{participant(i)}/round-{j}",
                     lambda s=seen, t=transcript: eroot_pvss.verify_transcript(s, t))
    return SessionResult(report=report, board=board, private=private)


# --- non-abelian schemes ---------------------------------------------------


def _shift_element(descriptor: GroupDescriptor) -> GroupElement:
    """Fixed non-identity element used for deterministic tampering."""
    if descriptor.backend == PERMUTATION:
        images = list(range(1, descriptor.degree + 1))
        images[0], images[1] = images[1], images[0]
        return make_permutation(descriptor, images)
    return make_matrix(descriptor, 1, 0, 0)


def _element_doc(x: GroupElement) -> dict:
    return x.to_dict()


def _non_degenerate_secret(descriptor, family, rng) -> GroupElement:
    while True:
        s = g_random_non_identity(descriptor, rng)
        if not all(g_commutes(s, f) for f in family.elements):
            return s


def _run_na_kex(config: SessionConfig) -> SessionResult:
    root = SeededRng(config.seed)
    descriptor = config.descriptor()
    script = {"pubkey": participant(1), "ciphertext": participant(2)}
    board = BulletinBoard(script=script)

    pair, set_s, set_t = na_kex.keygen(descriptor, config.strategy(), root.child(participant(1)))
    board.post(participant(1), "pubkey", {
        "b": _element_doc(pair.b), "c": _element_doc(pair.c),
    })

    sender_rng = root.child(participant(2))
    x = g_random(descriptor, sender_rng)
    t = set_t.sample(sender_rng)
    ciphertext = na_kex.encrypt(x, pair.b, pair.c, t)
    if config.adversary == "tamper-ciphertext":
        ciphertext = na_kex.KexCiphertext(
            header=ciphertext.header, E=g_mul(ciphertext.E, _shift_element(descriptor))
        )
    board.post(participant(2), "ciphertext", ciphertext.to_dict())

    posted = na_kex.KexCiphertext.from_dict(board.read_one("ciphertext").payload)
    decrypted = na_kex.decrypt(posted, pair.s)
    report = SessionReport(config=config.to_dict())
    report.recovered["session-key"] = _element_doc(decrypted)
    _checked(report, "kex-roundtrip", participant(1), lambda: decrypted == x)
    private = {participant(1): {"s": _element_doc(pair.s)},
               participant(2): {"t": _element_doc(t)}}
    return SessionResult(report=report, board=board, private=private)


def _run_na_pvss(config: SessionConfig) -> SessionResult:
    root = SeededRng(config.seed)
    dealer_rng = root.child(DEALER)
    verifier_rng = root.child(VERIFIER)
    descriptor = config.descriptor()
    n = config.n
    script = {"setup": DEALER}
    for i in range(1, n + 1):
        script[f"pubkey/{i}"] = participant(i)
        script[f"ciphertext/{i}"] = DEALER
        script[f"proof-commit/{i}"] = DEALER
        script[f"challenge/{i}"] = VERIFIER
        script[f"response/{i}"] = DEALER
    board = BulletinBoard(script=script)

    set_s, set_t = na_kex.commuting_pair(descriptor, config.strategy(), root.child("sets"))
    n0 = g_random_non_identity(descriptor, dealer_rng)
    board.post(DEALER, "setup", {"descriptor": descriptor.to_dict(), "n0": _element_doc(n0)})

    report = SessionReport(config=config.to_dict())
    private = {}
    for i in range(1, n + 1):
        part_rng = root.child(participant(i))
        s_i = set_s.sample(part_rng)
        b_i = g_random(descriptor, part_rng)
        c_i = g_conj(b_i, s_i)
        private[participant(i)] = {"s": _element_doc(s_i)}
        board.post(participant(i), f"pubkey/{i}", {
            "b": _element_doc(b_i), "c": _element_doc(c_i),
        })

        x_i = g_random(descriptor, dealer_rng)
        t_i = set_t.sample(dealer_rng)
        entry = na_pvss.distribute(x_i, b_i, c_i, t_i)
        if config.adversary == "tamper-ciphertext" and i == config.target:
            entry = na_pvss.NaPvssEntry(
                b=entry.b, c=entry.c, A=entry.A,
                B=g_mul(entry.B, _shift_element(descriptor)),
            )
        board.post(DEALER, f"ciphertext/{i}", entry.to_dict())

        commit = na_pvss.prove_commit(x_i, n0, b_i, dealer_rng)
        board.post(DEALER, f"proof-commit/{i}", {
            "N": _element_doc(commit.N),
            "t_h": _element_doc(commit.t_h),
            "t_g": _element_doc(commit.t_g),
        })
        challenge = verifier_rng.randbit()
        board.post(VERIFIER, f"challenge/{i}", {"r": challenge})
        response = na_pvss.respond(challenge, commit.w, t_i)
        board.post(DEALER, f"response/{i}", response.to_dict())

        posted = na_pvss.NaPvssEntry.from_dict(board.read_one(f"ciphertext/{i}").payload)
        retrieved = na_pvss.retrieve(posted, s_i)
        _checked(report, "retrieve-matches", participant(i),
                 lambda r=retrieved, x=x_i: r == x)
        _checked(report, "literal-verify", participant(i),
                 lambda e=posted, th=commit.t_h, resp=response:
                 na_pvss.verify_literal(e.A, th, resp))
    return SessionResult(report=report, board=board, private=private)


def _na_vss_setup(config: SessionConfig):
    root = SeededRng(config.seed)
    dealer_rng = root.child(DEALER)
    descriptor = config.descriptor()
    family = sample_commuting_family(descriptor, config.n, config.strategy(), dealer_rng)
    secret = _non_degenerate_secret(descriptor, family, dealer_rng)
    return descriptor, family, secret


def _deliver_na_shares(config: SessionConfig, descriptor, shares) -> dict:
    private = {
        participant(i): {"f": _element_doc(f)} for i, f in shares.items()
    }
    if config.adversary == "tamper-share":
        doc = private[participant(config.target)]
        honest = GroupElement.from_dict(doc["f"])
        doc["f"] = _element_doc(g_mul(honest, _shift_element(descriptor)))
    return private


def _run_na_vss(config: SessionConfig) -> SessionResult:
    descriptor, family, secret = _na_vss_setup(config)
    deal_board, shares = na_vss.deal(secret, family)
    board = BulletinBoard(script={"deal": DEALER})
    board.post(DEALER, "deal", deal_board.to_dict())
    posted = na_vss.NaVssBoard.from_dict(board.read_one("deal").payload)

    private = _deliver_na_shares(config, descriptor, shares)
    held = {i: GroupElement.from_dict(private[participant(i)]["f"]) for i in shares}

    report = SessionReport(config=config.to_dict())
    for i in range(1, config.n + 1):
        _checked(report, "self-verify", participant(i),
                 lambda i=i: na_vss.self_verify(posted, i, held[i]))
    for missing in range(1, config.n + 1):
        coalition = {j: held[j] for j in held if j != missing}
        subject = "coalition-" + ",".join(str(j) for j in sorted(coalition))
        def attempt(missing=missing, coalition=coalition, subject=subject):
            value = na_vss.reconstruct(posted, missing, coalition)
            report.recovered[subject] = _element_doc(value)
            return value == secret
        _checked(report, "reconstruct", subject, attempt)
    return SessionResult(report=report, board=board, private=private)


def _run_na_vss_threshold(config: SessionConfig) -> SessionResult:
    descriptor, family, secret = _na_vss_setup(config)
    deal_board, shares = na_vss.deal_threshold(secret, family, t=config.t)
    if config.adversary == "wrong-subset":
        # the dealer under-publishes: the last subset entry is withheld
        deal_board = na_vss.NaVssThresholdBoard(
            t=deal_board.t, subsets=deal_board.subsets[:-1]
        )
    board = BulletinBoard(script={"deal": DEALER})
    board.post(DEALER, "deal", deal_board.to_dict())
    posted = na_vss.NaVssThresholdBoard.from_dict(board.read_one("deal").payload)

    private = _deliver_na_shares(config, descriptor, shares)
    held = {i: GroupElement.from_dict(private[participant(i)]["f"]) for i in shares}

    report = SessionReport(config=config.to_dict())
    for coalition in itertools.combinations(range(1, config.n + 1), config.t):
        subject = "coalition-" + ",".join(str(j) for j in coalition)
        def attempt(coalition=coalition, subject=subject):
            value = na_vss.reconstruct_threshold(
                posted, coalition, {j: held[j] for j in coalition}
            )
            report.recovered[subject] = _element_doc(value)
            return value == secret
        _checked(report, "reconstruct", subject, attempt)
    return SessionResult(report=report, board=board, private=private)
