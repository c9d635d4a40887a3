"""Grammars from raw text: LZ78 Linear SLPs, balanced SLPs and random SLPs."""

import logging
import random
from typing import Dict, List, Optional, Tuple

from src.grammar import Leaf, LinearSlp, Node, Rule, Slp, check

logger = logging.getLogger(__name__)


def lz78_to_linear_slp(text: bytes) -> LinearSlp:
    """Parse ``text`` into LZ78 phrases, one root child per phrase.

    A phrase that extends phrase ``r_i`` by symbol ``a`` becomes the rule
    ``(r_i, leaf(a))``; a phrase of one new symbol is the leaf itself. If the
    text ends inside a known phrase, that phrase is emitted again as is.
    """
    if not text:
        raise ValueError("cannot compress empty input")
    nodes: List[Node] = []
    leaves: Dict[int, int] = {}
    trie: Dict[Tuple[Optional[int], int], int] = {}
    phrases: List[int] = []

    def leaf(symbol: int) -> int:
        if symbol not in leaves:
            leaves[symbol] = len(nodes)
            nodes.append(Leaf(symbol))
        return leaves[symbol]

    current: Optional[int] = None
    for symbol in text:
        known = trie.get((current, symbol))
        if known is not None:
            current = known
            continue
        if current is None:
            phrase = leaf(symbol)
        else:
            right = leaf(symbol)
            nodes.append(Rule(current, right))
            phrase = len(nodes) - 1
        trie[(current, symbol)] = phrase
        phrases.append(phrase)
        current = None
    if current is not None:
        phrases.append(current)

    logger.debug("LZ78: %d bytes -> %d phrases, %d nodes", len(text), len(phrases), len(nodes))
    return check(LinearSlp(nodes, phrases))


def balanced_slp(text: bytes, share: bool = True) -> Slp:
    """Full binary parse tree over ``text`` split at midpoints.

    With ``share`` on, equal subtrees become one node, so repeated halves yield a
    DAG rather than a tree.
    """
    if not text:
        raise ValueError("cannot compress empty input")
    nodes: List[Node] = []
    seen: Dict[Node, int] = {}

    def intern(node: Node) -> int:
        if share and node in seen:
            return seen[node]
        nodes.append(node)
        seen[node] = len(nodes) - 1
        return len(nodes) - 1

    def build(lo: int, hi: int) -> int:
        if hi - lo == 1:
            return intern(Leaf(text[lo]))
        mid = (lo + hi + 1) // 2
        left = build(lo, mid)
        right = build(mid, hi)
        return intern(Rule(left, right))

    root = build(0, len(text))
    return check(Slp(nodes, root))


def random_slp(
    seed: int, n_rules: int, alphabet: bytes = b"ab", max_length: Optional[int] = None
) -> Slp:
    """A random valid SLP with at most ``n_rules`` nodes, deterministic in ``seed``.

    ``max_length`` caps the length of the derived string; without it sizes can
    grow exponentially and large ``n_rules`` may overflow 64 bits.
    """
    if n_rules < 1:
        raise ValueError("n_rules must be at least 1")
    if not alphabet:
        raise ValueError("alphabet must not be empty")
    rng = random.Random(seed)
    leaf_count = max(1, min(len(alphabet), n_rules // 4))
    nodes: List[Node] = [Leaf(b) for b in rng.sample(list(alphabet), leaf_count)]
    sizes = [1] * leaf_count
    unused = list(range(leaf_count))

    limit = max_length
    while len(nodes) < n_rules:
        if limit is not None and limit < 2:
            break
        if unused and rng.random() < 0.7:
            left = unused.pop(rng.randrange(len(unused)))
        else:
            left = rng.randrange(len(nodes))
        if limit is not None and sizes[left] >= limit:
            left = rng.randrange(leaf_count)
        room = None if limit is None else limit - sizes[left]
        choices = [v for v in range(len(nodes)) if room is None or sizes[v] <= room]
        right = rng.choice(choices)
        if right in unused:
            unused.remove(right)
        nodes.append(Rule(left, right))
        sizes.append(sizes[left] + sizes[right])
        unused.append(len(nodes) - 1)

    return check(_compact(nodes, len(nodes) - 1))


def _compact(nodes: List[Node], root: int) -> Slp:
    """Drop nodes unreachable from ``root`` and renumber the rest in order."""
    reachable = [False] * len(nodes)
    reachable[root] = True
    for v in range(root, -1, -1):
        node = nodes[v]
        if reachable[v] and isinstance(node, Rule):
            reachable[node.left] = reachable[node.right] = True
    new_id: Dict[int, int] = {}
    kept: List[Node] = []
    for v, node in enumerate(nodes):
        if not reachable[v]:
            continue
        new_id[v] = len(kept)
        if isinstance(node, Rule):
            node = Rule(new_id[node.left], new_id[node.right])
        kept.append(node)
    return Slp(kept, new_id[root])
