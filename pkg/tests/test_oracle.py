"""Sanity checks for the brute-force oracles themselves."""

from src.fingerprint import fp_of_bytes
from src.oracle import naive_fp_prefix, naive_lce, naive_pred, naive_succ
from tests.conftest import EXAMPLE_TEXT


def test_naive_fp_prefix(cfg97, cfg):
    """ab as bytes 0,1 hashes to 16; the empty prefix to (0, 1, 0)."""
    assert naive_fp_prefix(cfg97, bytes([0, 1]), 2)[0] == 16
    assert naive_fp_prefix(cfg97, bytes([0, 1]), 0) == (0, 1, 0)
    assert naive_fp_prefix(cfg, EXAMPLE_TEXT, 12) == fp_of_bytes(cfg, EXAMPLE_TEXT)


def test_naive_lce():
    assert naive_lce(EXAMPLE_TEXT, 1, 5) == 6
    assert naive_lce(EXAMPLE_TEXT, 4, 4) == 9
    assert naive_lce(EXAMPLE_TEXT, 1, 2) == 0


def test_naive_pred_and_succ():
    r = [0, 1, 2, 4, 6, 9, 12]
    assert naive_pred(r, 7) == 6
    assert naive_pred([3, 5], 2) is None
    assert naive_pred(r, 9) == 9
    assert naive_succ(r, 10) == 12
    assert naive_succ(r, 13) is None
