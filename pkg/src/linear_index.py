"""Prefix fingerprints on Linear SLPs.

The root children ``r_1..r_k`` cut ``S`` into phrases ending at
``R(1) < ... < R(k) = N``. Because every non-root rule has a leaf as its right
child, the nodes form a trie (the dictionary tree ``F``): the parent of
``v^F`` is ``left(v)^F`` (or the root of ``F`` for a leaf) and the edge is
labelled with the right child's symbol, so the path to ``v^F`` spells
``S(v)`` and every prefix of ``S(v)`` is the string of an ancestor. A prefix
fingerprint is then one stored phrase-boundary fingerprint plus the
fingerprint of one ancestor found by a level ancestor query.
"""

import logging
from typing import List, NamedTuple, Optional

from src.errors import (
    InvalidFingerError,
    InvalidRangeError,
    LengthExceededError,
    OutOfBoundsError,
    StaleFingerError,
)
from src.fingerprint import EMPTY, Fingerprint, FpConfig, fp_concat, fp_of_symbol, fp_subtract_prefix
from src.grammar import Leaf, LinearSlp
from src.level_ancestor import LevelAncestor
from src.predecessor import FingerPredIndex, FingerQueryStats, SortedPredecessor

logger = logging.getLogger(__name__)


class Finger(NamedTuple):
    """Points at the phrase ``r_slot`` (1-based) and its grammar node."""

    node: int
    slot: int


class DictionaryTree:
    """Trie over the nodes of a Linear SLP; vertex 0 is the root of ``F``."""

    def __init__(self, gl: LinearSlp):
        n = len(gl.nodes)
        parent = [0] * (n + 1)
        depth = [0] * (n + 1)
        self.label = [-1] * (n + 1)
        for v, node in enumerate(gl.nodes):
            x = v + 1
            if isinstance(node, Leaf):
                self.label[x] = node.symbol
            else:
                parent[x] = node.left + 1
                self.label[x] = gl.nodes[node.right].symbol
            depth[x] = gl.sizes[v]
        self.parent = parent
        self.depth = depth
        self.levels = LevelAncestor(parent, depth)

    def __len__(self):
        return len(self.parent)

    @staticmethod
    def vertex_of(v: int) -> int:
        return v + 1

    @staticmethod
    def node_of(x: int) -> Optional[int]:
        return x - 1 if x > 0 else None

    def ancestor_at_depth(self, x: int, d: int) -> int:
        return self.levels.ancestor_at_depth(x, d)

    def spell(self, x: int) -> bytes:
        """Labels on the path from the root of ``F`` down to ``x``."""
        out = []
        while x:
            out.append(self.label[x])
            x = self.parent[x]
        return bytes(reversed(out))


class PrefixTable:
    """Phrase boundaries ``R(0..k)``, phrases and boundary prefix fingerprints.

    Slots are list positions, so the phrases before and after slot ``m`` are
    ``m - 1`` and ``m + 1``.
    """

    def __init__(self, boundaries: List[int], phrases: List[int], prefix_fps: List[Fingerprint]):
        self.boundaries = boundaries
        self.phrases = phrases
        self.prefix_fps = prefix_fps

    def __len__(self):
        return len(self.phrases)


class LinearIndex:
    """Fingerprint, access and finger queries over one Linear SLP."""

    def __init__(
        self,
        gl: LinearSlp,
        cfg: FpConfig,
        phi_s: List[Fingerprint],
        table: PrefixTable,
        tree: DictionaryTree,
    ):
        self.grammar = gl
        self.cfg = cfg
        self.phi_s = phi_s
        self.table = table
        self.tree = tree
        self.search = SortedPredecessor(table.boundaries)
        self.fingers = FingerPredIndex(table.boundaries, table.boundaries[-1] + 1)

    @property
    def length(self) -> int:
        return self.table.boundaries[-1]

    def _check_position(self, i: int):
        if not 1 <= i <= self.length:
            raise OutOfBoundsError(f"position {i} outside [1, {self.length}]")

    def _check_range(self, i: int, j: int):
        self._check_position(i)
        self._check_position(j)
        if i > j:
            raise InvalidRangeError(f"range ({i}, {j}) is inverted")

    def _prefix_from_slot(self, m: int, i: int) -> Fingerprint:
        """``phi(S[1, i])`` given ``R(m) <= i < R(m + 1)`` or ``R(m) == i``."""
        table = self.table
        start = table.boundaries[m]
        if start == i:
            return table.prefix_fps[m]
        phrase = self.tree.vertex_of(table.phrases[m])
        u = self.tree.ancestor_at_depth(phrase, i - start)
        return fp_concat(self.cfg, table.prefix_fps[m], self.phi_s[self.tree.node_of(u)])

    def fp_prefix_linear(self, i: int) -> Fingerprint:
        """``phi(S[1, i])`` via one predecessor and one level ancestor query."""
        self._check_position(i)
        return self._prefix_from_slot(self.search.pred_rank(i), i)

    def fp_prefix(self, i: int) -> Fingerprint:
        if i == 0:
            return EMPTY
        return self.fp_prefix_linear(i)

    def fp_range(self, i: int, j: int) -> Fingerprint:
        self._check_range(i, j)
        whole = self.fp_prefix_linear(j)
        if i == 1:
            return whole
        return fp_subtract_prefix(self.cfg, whole, self.fp_prefix_linear(i - 1))

    def access(self, i: int) -> int:
        """The byte ``S[i]``, read as an edge label of the dictionary tree."""
        self._check_position(i)
        m = self.search.pred_rank(i - 1)
        phrase = self.tree.vertex_of(self.table.phrases[m])
        u = self.tree.ancestor_at_depth(phrase, i - self.table.boundaries[m])
        return self.tree.label[u]

    def finger_for(self, i: int) -> Finger:
        """Finger to the phrase ``r_m`` with ``R(m - 1) < i <= R(m)``."""
        self._check_position(i)
        m = self.search.pred_rank(i - 1)
        return Finger(self.table.phrases[m], m + 1)

    def _check_finger(self, finger: Finger):
        slot = finger.slot
        if not 1 <= slot <= len(self.table) or self.table.phrases[slot - 1] != finger.node:
            raise InvalidFingerError(f"{finger} does not name a phrase")

    def _finger_prefix(
        self, finger: Finger, q: int, stats: Optional[FingerQueryStats]
    ) -> Fingerprint:
        if q == 0:
            return EMPTY
        m, _ = self.fingers.finger_ranks(finger.slot, q, stats)
        return self._prefix_from_slot(m, q)

    def fp_prefix_with_finger(
        self, finger: Finger, q: int, stats: Optional[FingerQueryStats] = None
    ) -> Fingerprint:
        """``phi(S[1, q])`` with the predecessor search started at ``finger``.

        Any valid finger works; the search cost grows with the distance from it.
        """
        self._check_finger(finger)
        if not 0 <= q <= self.length:
            raise OutOfBoundsError(f"position {q} outside [0, {self.length}]")
        return self._finger_prefix(finger, q, stats)

    def phrase_end(self, i: int, finger: Optional[Finger] = None) -> int:
        """End position of the phrase containing ``i``; ``finger`` must cover ``i``."""
        if finger is not None:
            return self.table.boundaries[finger.slot]
        return self.table.boundaries[self.search.succ_rank(i)]

    def last_start(self, b: int, finger: Optional[Finger] = None) -> int:
        """Largest phrase start position ``<= b``."""
        if finger is None:
            m = self.search.pred_rank(b - 1)
        else:
            m, _ = self.fingers.finger_ranks(finger.slot, b - 1)
        return self.table.boundaries[m] + 1

    def fp_range_with_finger(
        self, finger: Finger, i: int, j: int, stats: Optional[FingerQueryStats] = None
    ) -> Fingerprint:
        """``phi(S[i, j])`` with predecessor searches started at ``finger``."""
        self._check_range(i, j)
        self._check_finger(finger)
        slot = finger.slot
        lo, hi = self.table.boundaries[slot - 1], self.table.boundaries[slot]
        if not (lo < i <= hi or lo < j <= hi):
            raise StaleFingerError(f"{finger} covers ({lo}, {hi}], not {i} or {j}")
        whole = self._finger_prefix(finger, j, stats)
        if i == 1:
            return whole
        return fp_subtract_prefix(self.cfg, whole, self._finger_prefix(finger, i - 1, stats))


def build_linear_index(gl: LinearSlp, cfg: FpConfig) -> LinearIndex:
    """Build the prefix table, the dictionary tree and the finger structure."""
    if not isinstance(gl, LinearSlp):
        raise TypeError(f"expected a LinearSlp, got {type(gl).__name__}")
    if gl.length > cfg.max_len:
        raise LengthExceededError(
            f"grammar length {gl.length} exceeds configured maximum {cfg.max_len}"
        )
    phi_s: List[Fingerprint] = []
    for node in gl.nodes:
        if isinstance(node, Leaf):
            phi_s.append(fp_of_symbol(cfg, node.symbol))
        else:
            phi_s.append(fp_concat(cfg, phi_s[node.left], phi_s[node.right]))

    prefix_fps = [EMPTY]
    for r in gl.root_children:
        prefix_fps.append(fp_concat(cfg, prefix_fps[-1], phi_s[r]))
    table = PrefixTable(list(gl.boundaries), list(gl.root_children), prefix_fps)
    tree = DictionaryTree(gl)
    logger.debug("built linear index: n=%d k=%d N=%d", len(gl.nodes), len(table), gl.length)
    return LinearIndex(gl, cfg, phi_s, table, tree)
