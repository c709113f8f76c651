import pytest

from oracles import naive_inverse, naive_mod_exp
from sharelab.errors import NonInvertibleError
from sharelab.modmath import egcd, iroot, is_probable_prime, mod_exp, mod_inv
from sharelab.rng import SeededRng


def test_mod_exp_exponent_one():
    assert mod_exp(5, 1, 7) == 5


def test_mod_exp_order_eleven():
    # 2 has order 11 mod 23; confirmed against the repeated-squaring oracle
    assert naive_mod_exp(2, 11, 23) == 1
    assert mod_exp(2, 11, 23) == 1
    for e in range(1, 11):
        assert mod_exp(2, e, 23) == naive_mod_exp(2, e, 23) != 1


def test_mod_exp_negative_exponent():
    # 2^-3 mod 33: the result times 8 must be 1
    assert mod_exp(2, -3, 33) == 29
    assert 8 * 29 % 33 == 1


def test_mod_exp_negative_exponent_non_unit():
    with pytest.raises(NonInvertibleError):
        mod_exp(6, -1, 33)


def test_mod_exp_bad_modulus():
    with pytest.raises(ValueError):
        mod_exp(2, 3, 1)


def test_mod_inv_identity():
    assert mod_inv(1, 23) == 1


def test_mod_inv_known_values():
    assert mod_inv(11, 23) == 21
    assert 11 * 21 % 23 == 1
    assert mod_inv(4, 33) == 25
    assert 4 * 25 % 33 == 1


def test_mod_inv_surfaces_gcd():
    with pytest.raises(NonInvertibleError) as excinfo:
        mod_inv(6, 33)
    assert excinfo.value.gcd == 3  # a factor of 33, never swallowed


def test_mod_inv_matches_bruteforce():
    rng = SeededRng("inv-oracle")
    for _ in range(200):
        m = rng.randrange(3, 700)
        a = rng.randrange(1, m)
        expected = naive_inverse(a, m)
        if expected is None:
            with pytest.raises(NonInvertibleError):
                mod_inv(a, m)
        else:
            assert mod_inv(a, m) == expected


def test_egcd_bezout():
    rng = SeededRng("egcd")
    for _ in range(200):
        a = rng.randrange(1, 10**9)
        b = rng.randrange(1, 10**9)
        g, x, y = egcd(a, b)
        assert a % g == 0 and b % g == 0
        assert a * x + b * y == g


def test_inverse_pair_property():
    # a^q * a^-q = 1 mod m for a coprime to m
    rng = SeededRng("exp-pairs")
    done = 0
    while done < 200:
        m = rng.randrange(3, 10**6)
        a = rng.randrange(1, m)
        q = rng.randrange(1, 10**6)
        if egcd(a, m)[0] != 1:
            continue
        assert mod_exp(a, q, m) * mod_exp(a, -q, m) % m == 1
        done += 1


def test_mod_exp_matches_oracle_random():
    rng = SeededRng("exp-oracle")
    for _ in range(200):
        m = rng.randrange(2, 10**9)
        a = rng.randrange(0, m)
        e = rng.randrange(0, 5000)
        assert mod_exp(a, e, m) == naive_mod_exp(a, e, m)


def test_is_probable_prime_small():
    rng = SeededRng("primality")
    primes_below_200 = {
        2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61,
        67, 71, 73, 79, 83, 89, 97, 101, 103, 107, 109, 113, 127, 131, 137,
        139, 149, 151, 157, 163, 167, 173, 179, 181, 191, 193, 197, 199,
    }
    for n in range(200):
        assert is_probable_prime(n, rng) == (n in primes_below_200)


def test_is_probable_prime_carmichael():
    rng = SeededRng("carmichael")
    for n in (561, 1105, 1729, 2465, 2821, 6601):
        assert not is_probable_prime(n, rng)


def test_iroot():
    assert iroot(0, 3) == 0
    assert iroot(26, 3) == 2
    assert iroot(27, 3) == 3
    rng = SeededRng("iroot")
    for _ in range(100):
        x = rng.randrange(1, 10**30)
        k = rng.randrange(1, 6)
        r = iroot(x, k)
        assert r**k <= x < (r + 1) ** k
