from fractions import Fraction

import pytest

from oracles import multiplicative_order, naive_mod_exp
from sharelab.encoding import dump_json
from sharelab.errors import SearchExhaustedError
from sharelab.modmath import is_probable_prime
from sharelab.params import (
    RsaParams,
    SchnorrLikeParams,
    gen_rsa_params,
    gen_schnorr_like_params,
    tiny_rsa_params,
    tiny_schnorr_params,
)
from sharelab.rng import SeededRng


def test_five_bit_request_gives_the_only_safe_prime():
    # 23 is the only 5-bit safe prime; oracle-check the orders of h and g
    params = gen_schnorr_like_params(5, seed=1)
    assert (params.p, params.q, params.h, params.P, params.g) == (23, 11, 2, 47, 2)
    assert naive_mod_exp(2, 11, 23) == 1
    assert naive_mod_exp(2, 23, 47) == 1
    assert multiplicative_order(params.h, params.p) == 11
    assert multiplicative_order(params.g, params.P) == 23


@pytest.mark.parametrize("seed", [0, 7, 99])
def test_five_bit_any_seed(seed):
    assert gen_schnorr_like_params(5, seed=seed).p == 23


def test_schnorr_params_determinism():
    a = gen_schnorr_like_params(64, seed=5)
    b = gen_schnorr_like_params(64, seed=5)
    assert a == b
    assert dump_json(a.to_dict()) == dump_json(b.to_dict())


def test_schnorr_params_invariants_at_512_bits(big_dlog):
    big_dlog.validate()
    assert big_dlog.p.bit_length() == 512
    assert big_dlog.p == 2 * big_dlog.q + 1
    assert (big_dlog.P - 1) % big_dlog.p == 0
    # the commitment base really has order p, not 1
    assert pow(big_dlog.g, big_dlog.p, big_dlog.P) == 1
    assert pow(big_dlog.g, 1, big_dlog.P) != 1


def test_schnorr_params_round_trip():
    params = gen_schnorr_like_params(32, seed=3)
    assert SchnorrLikeParams.from_dict(params.to_dict()) == params


def test_tiny_schnorr_fixture_is_valid():
    tiny_schnorr_params().validate()


def test_rsa_params_six_bit_example():
    params = gen_rsa_params(6, 3, seed=0)
    assert params.n == 33 and params.g == 2
    # oracle: phi(33) = 20 is coprime to 3, and 2 has order 10 mod 33
    assert multiplicative_order(2, 33) == 10
    from math import gcd

    assert gcd(3, 20) == 1


def test_rsa_params_determinism():
    assert gen_rsa_params(32, 3, seed=4) == gen_rsa_params(32, 3, seed=4)


def test_rsa_params_invariants_at_512_bits(big_rsa):
    big_rsa.validate()
    assert big_rsa.n.bit_length() == 512
    assert not is_probable_prime(big_rsa.n, SeededRng("rsa-check"))


def test_rsa_params_rejects_even_exponent():
    with pytest.raises(ValueError):
        gen_rsa_params(32, 4, seed=0)


def test_rsa_w_bound():
    params = tiny_rsa_params()  # l=4, epsilon=1
    assert params.w_bound() == 2**4 * 33**2
    half = RsaParams(n=33, e=3, g=2, l=4, epsilon=Fraction(1, 2))
    # ceil(16 * 33^1.5) = ceil(sqrt(256 * 33^3)) = ceil(sqrt(9199872)) = 3034
    assert 3033**2 < 16**2 * 33**3 < 3034**2
    assert half.w_bound() == 3034


def test_rsa_params_round_trip():
    params = RsaParams(n=33, e=3, g=2, l=8, epsilon=Fraction(1, 2))
    assert RsaParams.from_dict(params.to_dict()) == params


def test_search_exhausted_surfaces():
    with pytest.raises(SearchExhaustedError):
        gen_schnorr_like_params(8, seed=0, max_steps=0)
