from oracles import cycle_to_images
from sharelab import na_kex
from sharelab.encoding import dump_json, load_json
from sharelab.groups import (
    ABELIAN_MATRIX_SLICE,
    DISJOINT_SUPPORT,
    g_commutes,
    g_conj,
    g_inv,
    g_mul,
    g_random,
    g_random_non_identity,
    identity,
    make_permutation,
    permutation_descriptor,
    unitriangular_descriptor,
)
from sharelab.rng import SeededRng

PERM5 = permutation_descriptor(5)
MAT = unitriangular_descriptor(101)
BACKENDS = [(PERM5, DISJOINT_SUPPORT), (MAT, ABELIAN_MATRIX_SLICE)]


def perm(*cycles):
    return make_permutation(PERM5, cycle_to_images(5, *cycles))


def test_declared_sets_commute():
    # the degree-5 split puts {1,2,3} against {4,5}: e.g. <(1 2 3)> vs <(4 5)>
    set_s, set_t = na_kex.commuting_pair(PERM5, DISJOINT_SUPPORT, seed=0)
    assert na_kex_sets_commute(set_s, set_t)
    explicit_s = [perm((1, 2, 3)), perm((1, 3, 2))]
    explicit_t = [perm((4, 5))]
    from sharelab.groups import commuting_sets

    assert commuting_sets(explicit_s, explicit_t)


def na_kex_sets_commute(set_s, set_t):
    from sharelab.groups import commuting_sets

    return commuting_sets(set_s.elements(), set_t.elements())


def test_public_key_worked_example():
    s = perm((1, 2, 3))
    b = perm((1, 2, 3, 4, 5))
    pair = na_kex.KexKeyPair(s=s, b=b, c=g_conj(b, s))
    assert pair.c == perm((3, 1, 2, 4, 5))
    # triple-product oracle
    assert g_mul(g_inv(s), g_mul(b, s)) == pair.c


def test_keygen_deterministic():
    a = na_kex.keygen(PERM5, DISJOINT_SUPPORT, seed=4)
    b = na_kex.keygen(PERM5, DISJOINT_SUPPORT, seed=4)
    assert a == b


def test_keygen_key_in_declared_set():
    for descriptor, strategy in BACKENDS:
        pair, set_s, set_t = na_kex.keygen(descriptor, strategy, seed=1)
        assert pair.c == g_conj(pair.b, pair.s)
        if descriptor is PERM5:
            assert pair.s in set_s.elements()
        assert na_kex_sets_commute(set_s, set_t) or descriptor is MAT


def test_encrypt_identity_payload():
    pair, _, set_t = na_kex.keygen(PERM5, DISJOINT_SUPPORT, seed=2)
    t = set_t.sample(SeededRng(3))
    ct = na_kex.encrypt(identity(PERM5), pair.b, pair.c, t)
    assert ct.E == identity(PERM5)


def test_encrypt_identity_conjugator():
    pair, _, _ = na_kex.keygen(PERM5, DISJOINT_SUPPORT, seed=2)
    x = g_random(PERM5, 7)
    ct = na_kex.encrypt(x, pair.b, pair.c, identity(PERM5))
    assert ct.header == pair.b
    assert ct.E == g_conj(x, pair.c)


def test_round_trip_200_per_backend():
    for descriptor, strategy in BACKENDS:
        rng = SeededRng(f"kex-{descriptor.backend}")
        pair, set_s, set_t = na_kex.keygen(descriptor, strategy, rng)
        for _ in range(200):
            x = g_random(descriptor, rng)
            t = set_t.sample(rng)
            ct = na_kex.encrypt(x, pair.b, pair.c, t)
            assert na_kex.decrypt(ct, pair.s) == x


def test_commutation_identity_500_pairs():
    # (b^t)^s = (b^s)^t whenever s and t commute
    for descriptor, strategy in BACKENDS:
        rng = SeededRng(f"core-{descriptor.backend}")
        set_s, set_t = na_kex.commuting_pair(descriptor, strategy, rng)
        for _ in range(500):
            s, t = set_s.sample(rng), set_t.sample(rng)
            b = g_random(descriptor, rng)
            assert g_commutes(s, t)
            assert g_conj(g_conj(b, t), s) == g_conj(g_conj(b, s), t)


def test_decrypt_is_inverse_conjugation():
    rng = SeededRng("inverse-conj")
    for _ in range(100):
        x = g_random(PERM5, rng)
        g = g_random(PERM5, rng)
        assert g_conj(g_conj(x, g), g_inv(g)) == x


def test_non_commuting_keys_break_recovery():
    # inject [s, t] != 1: recovery must fail for nearly all payloads.  This
    # runs on permutations of degree 8: in the unitriangular backend the
    # control cannot fail at all, because [s, t] is central there and
    # conjugation by st and ts always agree.
    descriptor = permutation_descriptor(8)
    rng = SeededRng("negative-control")
    failures = 0
    trials = 100
    for _ in range(trials):
        s = g_random_non_identity(descriptor, rng)
        t = g_random(descriptor, rng)
        while g_commutes(s, t):
            t = g_random(descriptor, rng)
        b = g_random(descriptor, rng)
        x = g_random(descriptor, rng)
        ct = na_kex.encrypt(x, b, g_conj(b, s), t)
        if na_kex.decrypt(ct, s) != x:
            failures += 1
    assert failures >= 95


def test_nilpotent_backend_ignores_non_commuting_keys():
    # the matrix platform is 2-step nilpotent: st and ts differ by a central
    # element, so recovery succeeds even when [s, t] != 1
    rng = SeededRng("nilpotent")
    for _ in range(50):
        s = g_random_non_identity(MAT, rng)
        t = g_random(MAT, rng)
        while g_commutes(s, t):
            t = g_random(MAT, rng)
        b = g_random(MAT, rng)
        x = g_random(MAT, rng)
        ct = na_kex.encrypt(x, b, g_conj(b, s), t)
        assert na_kex.decrypt(ct, s) == x


def test_ciphertext_json_round_trip():
    pair, _, set_t = na_kex.keygen(PERM5, DISJOINT_SUPPORT, seed=6)
    ct = na_kex.encrypt(g_random(PERM5, 8), pair.b, pair.c, set_t.sample(SeededRng(9)))
    doc = load_json(dump_json(ct.to_dict()))
    assert na_kex.KexCiphertext.from_dict(doc) == ct
    assert doc["descriptor"] == {"backend": "permutation", "degree": 5}


def test_powers_of_one_strategy():
    pair, set_s, set_t = na_kex.keygen(PERM5, "powers-of-one", seed=11)
    assert set_s == set_t
    x = g_random(PERM5, 12)
    t = set_t.sample(SeededRng(13))
    assert na_kex.decrypt(na_kex.encrypt(x, pair.b, pair.c, t), pair.s) == x
