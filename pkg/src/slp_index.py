"""Prefix fingerprints and random access on SLPs.

Every node ``v`` keeps a heavy edge to its larger child (the left one on ties).
Following heavy edges from ``v`` gives the heavy path ``H(v)``. The left
children hanging off ``H(v)`` where the path turns right produce ``P(v)``, the
part of ``S(v)`` in front of the leaf that ends ``H(v)``; its length is
``L(v)``. With ``phi(S(v))``, ``L(v)`` and ``phi(P(v))`` stored per node, a
root-to-leaf walk only needs a constant number of fingerprint operations per
heavy path it touches, and any such walk touches at most ``log2(N) + 1``
heavy paths.

Heavy edges form a forest whose roots are the leaves. That forest is split
into chains (each forest node continues the chain of its heaviest forest
child), so ``H(v)`` is a sequence of ``O(log n)`` chain segments stored as
shared depth-ordered arrays and addressed by ``(chain_id, rank)``. The exit
node of a heavy path is found by binary search on each segment.
"""

import logging
from dataclasses import dataclass
from typing import List, NamedTuple, Optional, Tuple

from src.errors import InvalidRangeError, LengthExceededError, OutOfBoundsError
from src.fingerprint import (
    EMPTY,
    Fingerprint,
    FpConfig,
    fp_concat,
    fp_of_symbol,
    fp_subtract_prefix,
    fp_subtract_suffix,
)
from src.grammar import Leaf, Slp

logger = logging.getLogger(__name__)

LEAF = "leaf"
LEFT = "left"
RIGHT = "right"


class PathVisit(NamedTuple):
    """One heavy path touched by a descent: where it was entered and left."""

    entry: int
    exit: int
    direction: str


@dataclass
class QueryStats:
    """Per-query instrumentation counters."""

    heavy_paths: int = 0
    fp_ops: int = 0


class HeavyPathAnnotation:
    """Per-node heavy-path quantities and the chain layout of the heavy forest."""

    def __init__(self, g: Slp, cfg: FpConfig):
        nodes = g.nodes
        sizes = g.sizes
        n = len(nodes)
        self.heavy_child = [-1] * n
        self.phi_s: List[Fingerprint] = [EMPTY] * n
        self.prefix_len = [0] * n
        self.phi_p: List[Fingerprint] = [EMPTY] * n

        for v, node in enumerate(nodes):
            if isinstance(node, Leaf):
                self.phi_s[v] = fp_of_symbol(cfg, node.symbol)
                continue
            left, right = node.left, node.right
            self.phi_s[v] = fp_concat(cfg, self.phi_s[left], self.phi_s[right])
            if sizes[left] >= sizes[right]:
                self.heavy_child[v] = left
                self.prefix_len[v] = self.prefix_len[left]
                self.phi_p[v] = self.phi_p[left]
            else:
                self.heavy_child[v] = right
                self.prefix_len[v] = sizes[left] + self.prefix_len[right]
                self.phi_p[v] = fp_concat(cfg, self.phi_s[left], self.phi_p[right])

        self._build_chains(n)
        logger.debug("heavy forest of %d nodes split into %d chains", n, len(self.chains))

    def _build_chains(self, n: int):
        heavy = self.heavy_child
        weight = [1] * n
        for v in reversed(range(n)):
            if heavy[v] >= 0:
                weight[heavy[v]] += weight[v]
        continues = [-1] * n
        for v in range(n):
            u = heavy[v]
            if u >= 0 and (continues[u] < 0 or weight[v] > weight[continues[u]]):
                continues[u] = v

        self.chains: List[List[int]] = []
        self.chain_id = [-1] * n
        self.chain_rank = [0] * n
        for top in reversed(range(n)):
            if continues[top] >= 0:
                continue
            chain = []
            v = top
            while True:
                self.chain_id[v] = len(self.chains)
                self.chain_rank[v] = len(chain)
                chain.append(v)
                u = heavy[v]
                if u < 0 or continues[u] != v:
                    break
                v = u
            self.chains.append(chain)

    def path(self, v: int) -> List[int]:
        """Nodes of ``H(v)`` in increasing depth."""
        result = []
        while v >= 0:
            chain = self.chains[self.chain_id[v]]
            result.extend(chain[self.chain_rank[v] :])
            v = self.heavy_child[chain[-1]]
        return result


class SlpIndex:
    """Fingerprint and access queries over one SLP."""

    def __init__(self, g: Slp, cfg: FpConfig, annotation: HeavyPathAnnotation):
        self.grammar = g
        self.cfg = cfg
        self.annotation = annotation
        self.sizes = g.sizes

    @property
    def length(self) -> int:
        return self.grammar.length

    def _check_position(self, i: int):
        if not 1 <= i <= self.length:
            raise OutOfBoundsError(f"position {i} outside [1, {self.length}]")

    def _exit_node(self, v: int, i: int) -> int:
        """Deepest node on ``H(v)`` whose string covers position ``i`` of ``S(v)``."""
        ann = self.annotation
        sizes = self.sizes
        base = ann.prefix_len[v]

        def covers(w: int) -> bool:
            offset = base - ann.prefix_len[w]
            return offset < i <= offset + sizes[w]

        best = v
        chain_id, rank = ann.chain_id[v], ann.chain_rank[v]
        while True:
            chain = ann.chains[chain_id]
            if not covers(chain[rank]):
                return best
            last = len(chain) - 1
            if covers(chain[last]):
                best = chain[last]
                following = ann.heavy_child[best]
                if following < 0:
                    return best
                chain_id, rank = ann.chain_id[following], ann.chain_rank[following]
                continue
            lo, hi = rank, last
            while hi - lo > 1:
                mid = (lo + hi) // 2
                if covers(chain[mid]):
                    lo = mid
                else:
                    hi = mid
            return chain[lo]

    def _descend(
        self,
        i: int,
        with_fp: bool,
        stats: Optional[QueryStats] = None,
        visits: Optional[List[PathVisit]] = None,
    ) -> Tuple[int, Fingerprint]:
        cfg = self.cfg
        ann = self.annotation
        nodes = self.grammar.nodes
        f = EMPTY
        v = self.grammar.root
        while True:
            entry = v
            u = self._exit_node(v, i)
            if stats is not None:
                stats.heavy_paths += 1
            i -= ann.prefix_len[v] - ann.prefix_len[u]
            if with_fp and u != v:
                f = fp_concat(cfg, f, fp_subtract_suffix(cfg, ann.phi_p[v], ann.phi_p[u]))
                if stats is not None:
                    stats.fp_ops += 2
            node = nodes[u]
            if isinstance(node, Leaf):
                if with_fp:
                    f = fp_concat(cfg, f, ann.phi_s[u])
                    if stats is not None:
                        stats.fp_ops += 1
                if visits is not None:
                    visits.append(PathVisit(entry, u, LEAF))
                return node.symbol, f
            if ann.heavy_child[u] == node.left:
                if with_fp:
                    f = fp_concat(cfg, f, ann.phi_s[node.left])
                    if stats is not None:
                        stats.fp_ops += 1
                i -= self.sizes[node.left]
                direction, v = RIGHT, node.right
            else:
                direction, v = LEFT, node.left
            if visits is not None:
                visits.append(PathVisit(entry, u, direction))

    def access(self, i: int) -> int:
        """The byte ``S[i]`` (1-based)."""
        self._check_position(i)
        symbol, _ = self._descend(i, with_fp=False)
        return symbol

    def trace(self, i: int) -> List[PathVisit]:
        """Heavy paths visited while locating ``S[i]``."""
        self._check_position(i)
        visits: List[PathVisit] = []
        self._descend(i, with_fp=False, visits=visits)
        return visits

    def fp_prefix_basic(self, i: int) -> Fingerprint:
        """``phi(S[1, i])`` by a plain root-to-leaf walk, one step per level."""
        self._check_position(i)
        cfg = self.cfg
        nodes = self.grammar.nodes
        phi_s = self.annotation.phi_s
        f = EMPTY
        node_id = self.grammar.root
        node = nodes[node_id]
        while not isinstance(node, Leaf):
            left_size = self.sizes[node.left]
            if i <= left_size:
                node_id = node.left
            else:
                f = fp_concat(cfg, f, phi_s[node.left])
                i -= left_size
                node_id = node.right
            node = nodes[node_id]
        return fp_concat(cfg, f, phi_s[node_id])

    def fp_prefix_fast(self, i: int, stats: Optional[QueryStats] = None) -> Fingerprint:
        """``phi(S[1, i])`` with a constant number of operations per heavy path."""
        self._check_position(i)
        _, f = self._descend(i, with_fp=True, stats=stats)
        return f

    def fp_prefix(self, i: int) -> Fingerprint:
        if i == 0:
            return EMPTY
        return self.fp_prefix_fast(i)

    def fp_range(self, i: int, j: int) -> Fingerprint:
        """``phi(S[i, j])`` as the difference of two prefix fingerprints."""
        self._check_position(i)
        self._check_position(j)
        if i > j:
            raise InvalidRangeError(f"range ({i}, {j}) is inverted")
        whole = self.fp_prefix_fast(j)
        if i == 1:
            return whole
        return fp_subtract_prefix(self.cfg, whole, self.fp_prefix_fast(i - 1))


def build_index(g: Slp, cfg: FpConfig) -> SlpIndex:
    """Annotate ``g`` for fingerprint and access queries."""
    if not isinstance(g, Slp):
        raise TypeError(f"expected an Slp, got {type(g).__name__}")
    if g.length > cfg.max_len:
        raise LengthExceededError(
            f"grammar length {g.length} exceeds configured maximum {cfg.max_len}"
        )
    annotation = HeavyPathAnnotation(g, cfg)
    logger.debug("built SLP index: n=%d N=%d", len(g.nodes), g.length)
    return SlpIndex(g, cfg, annotation)
