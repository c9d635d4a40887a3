"""Straight-line programs and Linear SLPs.

Node ids are dense integers ``0..n-1`` in topological order: every child id is
smaller than the id of its parent. An :class:`Slp` names one of its nodes as
the root. A :class:`LinearSlp` keeps its root outside ``nodes`` (id ``n``); the
root has an ordered list of children ``r_1..r_k`` and every other internal
node has a leaf as its right child.
"""

import logging
from abc import ABC, abstractmethod
from enum import Enum
from functools import cached_property
from typing import Iterator, List, NamedTuple, Optional, Union

from src.errors import GrammarError

logger = logging.getLogger(__name__)

MAX_SIZE = (1 << 64) - 1


class Node(ABC):
    """Base class for grammar nodes."""

    @abstractmethod
    def accept(self, visitor, node_id: int):
        """Accept a visitor for serialization or other traversals."""


class Leaf(Node):
    """A terminal producing one byte."""

    __slots__ = ("symbol",)

    def __init__(self, symbol: int):
        self.symbol = symbol

    def accept(self, visitor, node_id: int):
        return visitor.visit_leaf(self, node_id)

    def __eq__(self, other):
        return isinstance(other, Leaf) and other.symbol == self.symbol

    def __hash__(self):
        return hash(("leaf", self.symbol))

    def __repr__(self):
        return f"Leaf({self.symbol})"


class Rule(Node):
    """An internal node producing ``S(left) S(right)``."""

    __slots__ = ("left", "right")

    def __init__(self, left: int, right: int):
        self.left = left
        self.right = right

    def accept(self, visitor, node_id: int):
        return visitor.visit_rule(self, node_id)

    def __eq__(self, other):
        return isinstance(other, Rule) and (other.left, other.right) == (self.left, self.right)

    def __hash__(self):
        return hash(("rule", self.left, self.right))

    def __repr__(self):
        return f"Rule({self.left}, {self.right})"


class Slp:
    """A grammar in Chomsky normal form deriving exactly one string."""

    def __init__(self, nodes: List[Node], root: int):
        self.nodes = nodes
        self.root = root

    @cached_property
    def sizes(self) -> List[int]:
        return _compute_sizes(self.nodes)

    @property
    def length(self) -> int:
        return self.sizes[self.root]

    def size(self, v: int) -> int:
        return self.sizes[v]

    def accept(self, visitor):
        return visitor.visit_slp(self)

    def __len__(self):
        return len(self.nodes)

    def __repr__(self):
        return f"Slp(n={len(self.nodes)}, root={self.root})"


class LinearSlp:
    """An SLP whose root has many children and whose other rules end in a leaf."""

    def __init__(self, nodes: List[Node], root_children: List[int]):
        self.nodes = nodes
        self.root_children = root_children

    @property
    def root(self) -> int:
        return len(self.nodes)

    @cached_property
    def sizes(self) -> List[int]:
        return _compute_sizes(self.nodes)

    @cached_property
    def boundaries(self) -> List[int]:
        """Prefix lengths ``R(0..k)`` of the root children."""
        bounds = [0]
        for r in self.root_children:
            bounds.append(bounds[-1] + self.sizes[r])
        return bounds

    @property
    def length(self) -> int:
        return self.boundaries[-1]

    def size(self, v: int) -> int:
        if v == self.root:
            return self.length
        return self.sizes[v]

    def accept(self, visitor):
        return visitor.visit_linear_slp(self)

    def __len__(self):
        return len(self.nodes) + 1

    def __repr__(self):
        return f"LinearSlp(n={len(self.nodes)}, k={len(self.root_children)})"


Grammar = Union[Slp, LinearSlp]


def _compute_sizes(nodes: List[Node]) -> List[int]:
    sizes = [0] * len(nodes)
    for v, node in enumerate(nodes):
        if isinstance(node, Leaf):
            sizes[v] = 1
        else:
            sizes[v] = sizes[node.left] + sizes[node.right]
    return sizes


class ViolationKind(Enum):
    """Kinds of structural problems reported by :func:`validate`."""

    CYCLE = "cycle-detected"
    DANGLING_CHILD = "dangling-child"
    ORDER = "order-violation"
    UNREACHABLE = "unreachable-node"
    NON_LINEAR_SHAPE = "non-linear-shape"
    BAD_SYMBOL = "bad-symbol"
    SIZE_OVERFLOW = "size-overflow"
    EMPTY = "empty-grammar"


class Violation(NamedTuple):
    kind: ViolationKind
    node: int
    message: str

    def __str__(self):
        return f"{self.kind.value} at node {self.node}: {self.message}"


def _children(node: Node) -> List[int]:
    if isinstance(node, Rule):
        return [node.left, node.right]
    return []


def _find_cycle(nodes: List[Node]) -> Optional[int]:
    """Return a node on a cycle, or None. Iterative three-colour DFS."""
    state = [0] * len(nodes)
    for start in range(len(nodes)):
        if state[start]:
            continue
        stack = [(start, iter(_children(nodes[start])))]
        state[start] = 1
        while stack:
            v, children = stack[-1]
            for c in children:
                if state[c] == 1:
                    return c
                if state[c] == 0:
                    state[c] = 1
                    stack.append((c, iter(_children(nodes[c]))))
                    break
            else:
                state[v] = 2
                stack.pop()
    return None


def validate(g: Grammar) -> Optional[Violation]:
    """Check every structural invariant; return the first violation or None."""
    nodes = g.nodes
    n = len(nodes)
    linear = isinstance(g, LinearSlp)
    if linear and not g.root_children:
        return Violation(ViolationKind.EMPTY, n, "root has no children")
    if not linear and not 0 <= g.root < n:
        return Violation(ViolationKind.DANGLING_CHILD, g.root, "root id is not a node")

    for v, node in enumerate(nodes):
        if isinstance(node, Leaf):
            if not 0 <= node.symbol <= 255:
                return Violation(ViolationKind.BAD_SYMBOL, v, f"symbol {node.symbol} is not a byte")
            continue
        for c in _children(node):
            if not 0 <= c < n:
                return Violation(ViolationKind.DANGLING_CHILD, v, f"child {c} does not exist")
            if c == v:
                return Violation(ViolationKind.CYCLE, v, "node is its own child")
    if linear:
        for c in g.root_children:
            if not 0 <= c < n:
                return Violation(ViolationKind.DANGLING_CHILD, n, f"root child {c} does not exist")

    on_cycle = _find_cycle(nodes)
    if on_cycle is not None:
        return Violation(ViolationKind.CYCLE, on_cycle, "node lies on a cycle")
    for v, node in enumerate(nodes):
        for c in _children(node):
            if c > v:
                return Violation(ViolationKind.ORDER, v, f"child {c} comes after its parent")

    if linear:
        for v, node in enumerate(nodes):
            if isinstance(node, Rule) and not isinstance(nodes[node.right], Leaf):
                return Violation(
                    ViolationKind.NON_LINEAR_SHAPE, v, "right child of a rule must be a leaf"
                )

    reachable = [False] * n
    stack = list(g.root_children) if linear else [g.root]
    while stack:
        v = stack.pop()
        if reachable[v]:
            continue
        reachable[v] = True
        stack.extend(_children(nodes[v]))
    for v in range(n):
        if not reachable[v]:
            return Violation(ViolationKind.UNREACHABLE, v, "node is not reachable from the root")

    sizes = _compute_sizes(nodes)
    for v, size in enumerate(sizes):
        if size > MAX_SIZE:
            return Violation(ViolationKind.SIZE_OVERFLOW, v, "size does not fit in 64 bits")
    if linear and sum(sizes[c] for c in g.root_children) > MAX_SIZE:
        return Violation(ViolationKind.SIZE_OVERFLOW, n, "length does not fit in 64 bits")
    return None


def check(g: Grammar) -> Grammar:
    """Validate ``g`` and return it, raising :class:`GrammarError` on a violation."""
    violation = validate(g)
    if violation is not None:
        raise GrammarError(violation)
    logger.debug("validated %r", g)
    return g


def iter_symbols(g: Grammar, v: Optional[int] = None) -> Iterator[int]:
    """Yield ``S(v)`` left to right keeping only a root-to-leaf stack."""
    if v is None:
        v = g.root
    if isinstance(g, LinearSlp) and v == g.root:
        for r in g.root_children:
            yield from iter_symbols(g, r)
        return
    nodes = g.nodes
    stack = [v]
    while stack:
        node = nodes[stack.pop()]
        while isinstance(node, Rule):
            stack.append(node.right)
            node = nodes[node.left]
        yield node.symbol


def expand(g: Grammar, v: Optional[int] = None) -> bytes:
    """Return ``S(v)`` (the whole string when ``v`` is omitted)."""
    return bytes(iter_symbols(g, v))


def linear_to_slp(gl: LinearSlp) -> Slp:
    """Replace the many-child root by a left-deep chain of new rules."""
    nodes: List[Node] = list(gl.nodes)
    current = gl.root_children[0]
    for r in gl.root_children[1:]:
        nodes.append(Rule(current, r))
        current = len(nodes) - 1
    return Slp(nodes, current)
