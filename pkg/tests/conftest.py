"""Shared grammars and fingerprint configurations."""

import pytest

from src.fingerprint import FpConfig
from src.frontends import lz78_to_linear_slp
from src.grammar import linear_to_slp

EXAMPLE_TEXT = b"abbaabbaabab"

# Maps a -> 0 and b -> 1, so hashed symbols are a -> 1 and b -> 2.
AB_TO_LOW = bytes.maketrans(b"ab", b"\x00\x01")


@pytest.fixture
def cfg():
    """A sound 61-bit configuration with a fixed seed."""
    return FpConfig.from_seed(20240601, max_len=1 << 20)


@pytest.fixture
def cfg97():
    """The hand-checkable configuration c = 10, p = 97."""
    return FpConfig(base=10, prime=97, max_len=50)


@pytest.fixture
def example_linear():
    return lz78_to_linear_slp(EXAMPLE_TEXT)


@pytest.fixture
def example_low_linear():
    """The same grammar over the bytes 0 and 1."""
    return lz78_to_linear_slp(EXAMPLE_TEXT.translate(AB_TO_LOW))


@pytest.fixture
def example_slp(example_linear):
    return linear_to_slp(example_linear)
