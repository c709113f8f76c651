import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from sharelab.params import (
    gen_rsa_params,
    gen_schnorr_like_params,
    tiny_rsa_params,
    tiny_schnorr_params,
)


@pytest.fixture(scope="session")
def tiny_dlog():
    return tiny_schnorr_params()


@pytest.fixture(scope="session")
def tiny_rsa():
    return tiny_rsa_params()


@pytest.fixture(scope="session")
def medium_rsa():
    """64-bit modulus: large enough that random unit ratios have big order."""
    return gen_rsa_params(64, 3, seed=11, l=4)


@pytest.fixture(scope="session")
def big_dlog():
    return gen_schnorr_like_params(512, seed=2024)


@pytest.fixture(scope="session")
def big_rsa():
    return gen_rsa_params(512, 3, seed=2024, l=8)
