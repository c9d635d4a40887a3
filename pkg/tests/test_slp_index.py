"""Tests for heavy-path prefix fingerprints and random access on SLPs."""

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.errors import InvalidRangeError, LengthExceededError, OutOfBoundsError
from src.fingerprint import EMPTY, FpConfig, fp_of_bytes
from src.frontends import balanced_slp, lz78_to_linear_slp, random_slp
from src.grammar import Leaf, Rule, Slp, expand, linear_to_slp
from src.oracle import naive_fp_prefix
from src.slp_index import LEAF, QueryStats, build_index
from tests.conftest import EXAMPLE_TEXT

SEEDED = FpConfig.from_seed(3, max_len=1 << 20)


def test_abab_annotation(cfg):
    """phi_S of X4 = X3 X3 is the fingerprint of abab; the tie goes left."""
    g = Slp([Leaf(97), Leaf(98), Rule(0, 1), Rule(2, 2)], 3)
    idx = build_index(g, cfg)
    assert idx.annotation.phi_s[3] == fp_of_bytes(cfg, b"abab")
    assert idx.annotation.heavy_child[3] == 2


def test_single_leaf_annotation(cfg):
    """A leaf has an empty heavy-path prefix."""
    idx = build_index(Slp([Leaf(120)], 0), cfg)
    assert idx.annotation.phi_s[0] == fp_of_bytes(cfg, b"x")
    assert idx.annotation.prefix_len[0] == 0
    assert idx.annotation.phi_p[0] == EMPTY
    assert idx.access(1) == ord("x")


def test_example_root_fingerprint(cfg, example_slp):
    """The root fingerprint is the fingerprint of the whole text."""
    idx = build_index(example_slp, cfg)
    assert idx.annotation.phi_s[example_slp.root] == fp_of_bytes(cfg, EXAMPLE_TEXT)


def test_example_access(cfg, example_slp):
    """Every position reads back the right byte."""
    idx = build_index(example_slp, cfg)
    assert idx.access(5) == ord("a")
    assert idx.access(12) == ord("b")
    assert bytes(idx.access(i) for i in range(1, 13)) == EXAMPLE_TEXT


def test_example_prefix_values(cfg97, example_low_linear):
    """Hand-computed prefix values over a -> 1, b -> 2 with c = 10, p = 97."""
    idx = build_index(linear_to_slp(example_low_linear), cfg97)
    assert idx.fp_prefix_basic(2).value == 16
    assert idx.fp_prefix_basic(3).value == 76
    assert idx.fp_prefix_fast(3).value == 76
    for i in range(1, 13):
        assert idx.fp_prefix_fast(i) == idx.fp_prefix_basic(i)
    assert idx.fp_prefix(12) == idx.annotation.phi_s[idx.grammar.root]
    assert idx.fp_prefix(0) == EMPTY


def test_balanced_prefix_value(cfg97):
    """abab as bytes 0,1,0,1: the first three hash to 10 + 200 + 1000 = 46."""
    idx = build_index(balanced_slp(bytes([0, 1, 0, 1])), cfg97)
    assert idx.fp_prefix_fast(3).value == 46


def test_example_ranges(cfg97, example_low_linear):
    """Range fingerprints are prefix differences."""
    idx = build_index(linear_to_slp(example_low_linear), cfg97)
    text = expand(example_low_linear)
    assert idx.fp_range(2, 3).value == 26
    assert idx.fp_range(1, 12) == idx.annotation.phi_s[idx.grammar.root]
    for i in range(1, 13):
        assert idx.fp_range(i, i) == fp_of_bytes(cfg97, text[i - 1 : i])


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 60), st.sampled_from([b"ab", b"acgt", b"xyz"]))
def test_random_slp_matches_oracle(seed, n_rules, alphabet):
    """Both prefix walks and access agree with direct evaluation everywhere."""
    g = random_slp(seed, n_rules, alphabet, max_length=300)
    text = expand(g)
    idx = build_index(g, SEEDED)
    for i in range(1, len(text) + 1):
        expected = naive_fp_prefix(SEEDED, text, i)
        assert idx.fp_prefix_basic(i) == expected
        assert idx.fp_prefix_fast(i) == expected
        assert idx.access(i) == text[i - 1]


@settings(max_examples=25, deadline=None)
@given(st.binary(min_size=1, max_size=400))
def test_balanced_slp_matches_oracle(text):
    """Balanced grammars of arbitrary bytes agree with the oracle."""
    idx = build_index(balanced_slp(text), SEEDED)
    for i in range(1, len(text) + 1):
        assert idx.fp_prefix_fast(i) == naive_fp_prefix(SEEDED, text, i)


def test_heavy_path_budget(cfg):
    """Each query touches at most log2(N) + 1 heavy paths, three operations each."""
    for g in [
        balanced_slp(bytes(range(256)) * 8),
        random_slp(11, 400, b"ab", max_length=5000),
        linear_to_slp(lz78_to_linear_slp(b"ab" * 700)),
    ]:
        idx = build_index(g, cfg)
        n = g.length
        bound = math.ceil(math.log2(n)) + 1
        for i in range(1, n + 1, 7):
            stats = QueryStats()
            idx.fp_prefix_fast(i, stats)
            assert stats.heavy_paths <= bound
            assert stats.fp_ops <= 3 * bound


def test_trace_walks_heavy_paths(cfg, example_slp):
    """Each visit starts where the previous one turned off and the last ends at a leaf."""
    idx = build_index(example_slp, cfg)
    ann = idx.annotation
    for i in range(1, 13):
        visits = idx.trace(i)
        assert visits[0].entry == example_slp.root
        assert visits[-1].direction == LEAF
        assert isinstance(example_slp.nodes[visits[-1].exit], Leaf)
        for visit in visits:
            assert visit.exit in ann.path(visit.entry)


def test_heavy_path_listing(cfg):
    """path(v) follows heavy children down to a leaf."""
    g = random_slp(5, 80, b"abc", max_length=2000)
    ann = build_index(g, cfg).annotation
    for v in range(len(g.nodes)):
        path = ann.path(v)
        assert path[0] == v
        for a, b in zip(path, path[1:]):
            assert ann.heavy_child[a] == b
        assert ann.heavy_child[path[-1]] == -1


def test_errors(cfg, example_slp, example_linear):
    """Bad positions, inverted ranges and wrong grammars are rejected."""
    idx = build_index(example_slp, cfg)
    with pytest.raises(OutOfBoundsError):
        idx.access(0)
    with pytest.raises(IndexError):
        idx.fp_prefix_fast(13)
    with pytest.raises(InvalidRangeError):
        idx.fp_range(3, 2)
    with pytest.raises(TypeError):
        build_index(example_linear, cfg)
    with pytest.raises(LengthExceededError):
        build_index(example_slp, FpConfig.from_seed(1, max_len=5))
