"""Tests for grammar validation, expansion and conversion."""

import pytest

from src.errors import GrammarError
from src.frontends import lz78_to_linear_slp
from src.grammar import (
    Leaf,
    LinearSlp,
    Node,
    Rule,
    Slp,
    ViolationKind,
    check,
    expand,
    iter_symbols,
    linear_to_slp,
    validate,
)
from tests.conftest import EXAMPLE_TEXT


def kind_of(g):
    violation = validate(g)
    return violation.kind if violation else None


def test_example_is_valid(example_linear):
    """The LZ78 grammar of the running example passes validation."""
    assert validate(example_linear) is None
    assert example_linear.boundaries == [0, 1, 2, 4, 6, 9, 12]


def test_single_leaf_is_valid():
    """A lone leaf is a complete SLP."""
    assert validate(Slp([Leaf(97)], 0)) is None


def test_self_loop():
    """A node that is its own child is a cycle."""
    assert kind_of(Slp([Leaf(0), Rule(1, 0)], 1)) == ViolationKind.CYCLE


def test_longer_cycle():
    """Cycles through several nodes are found too."""
    g = Slp([Leaf(0), Rule(2, 0), Rule(1, 0)], 2)
    assert kind_of(g) == ViolationKind.CYCLE


def test_dangling_child():
    """Children must exist."""
    assert kind_of(Slp([Leaf(0), Rule(0, 5)], 1)) == ViolationKind.DANGLING_CHILD


def test_order_violation():
    """A child must have a smaller id than its parent."""
    assert kind_of(Slp([Rule(1, 1), Leaf(0)], 0)) == ViolationKind.ORDER


def test_unreachable_node():
    """Every node must be reachable from the root."""
    violation = validate(Slp([Leaf(0), Leaf(1)], 0))
    assert violation.kind == ViolationKind.UNREACHABLE
    assert violation.node == 1


def test_non_linear_shape():
    """In a Linear SLP the right child of every rule is a leaf."""
    g = LinearSlp([Leaf(0), Rule(0, 0), Rule(0, 1)], [2])
    assert kind_of(g) == ViolationKind.NON_LINEAR_SHAPE


def test_bad_symbol_and_empty_root():
    """Leaves hold bytes and the linear root has children."""
    assert kind_of(Slp([Leaf(300)], 0)) == ViolationKind.BAD_SYMBOL
    assert kind_of(LinearSlp([Leaf(0)], [])) == ViolationKind.EMPTY


def test_check_raises():
    """check() turns a violation into a GrammarError that keeps it."""
    with pytest.raises(GrammarError) as excinfo:
        check(Slp([Leaf(0), Leaf(1)], 0))
    assert excinfo.value.violation.kind == ViolationKind.UNREACHABLE
    assert "unreachable-node" in str(excinfo.value)


def test_expand_example(example_linear):
    """Root children spell a|b|ba|ab|baa|bab and the root the whole text."""
    phrases = [expand(example_linear, r) for r in example_linear.root_children]
    assert phrases == [b"a", b"b", b"ba", b"ab", b"baa", b"bab"]
    assert expand(example_linear) == EXAMPLE_TEXT
    assert expand(Slp([Leaf(97)], 0)) == b"a"


def test_expand_shared_rules():
    """X4 = X3 X3 with X3 = ab expands to abab."""
    g = Slp([Leaf(97), Leaf(98), Rule(0, 1), Rule(2, 2)], 3)
    assert expand(g) == b"abab"
    assert g.length == 4
    assert list(iter_symbols(g, 2)) == [97, 98]


def test_linear_to_slp_example(example_linear):
    """The chained SLP derives the same text within the node bound."""
    g = linear_to_slp(example_linear)
    assert validate(g) is None
    assert expand(g) == EXAMPLE_TEXT
    assert len(g.nodes) <= 2 * (7 + 6)


def test_linear_to_slp_single_leaf():
    """With one root child the SLP is that child."""
    g = linear_to_slp(LinearSlp([Leaf(97)], [0]))
    assert g.root == 0
    assert len(g.nodes) == 1


def test_linear_to_slp_unary_text():
    """A long run survives the conversion."""
    text = b"a" * 32
    g = linear_to_slp(lz78_to_linear_slp(text))
    assert validate(g) is None
    assert expand(g) == text


def test_linear_sizes(example_linear):
    """The linear root is one past the last node and spans the text."""
    assert example_linear.root == len(example_linear.nodes)
    assert example_linear.size(example_linear.root) == 12
    assert len(example_linear) == len(example_linear.nodes) + 1


def test_node_is_abstract():
    """Only leaves and rules can be built."""
    with pytest.raises(TypeError):
        Node()
    assert isinstance(Leaf(97), Node)
    assert isinstance(Rule(0, 0), Node)
