"""Las Vegas verification that a fingerprint function is collision-free where LCE needs it.

An LCE query only compares substrings of a restricted shape, so it suffices to
certify those classes:

* SLPs: all substrings whose length is a power of two. Round ``p`` slides a
  window of length ``2**p`` over ``S`` and files every fingerprint in a
  dictionary. Two windows with the same fingerprint are equal exactly when
  their halves have equal fingerprints, which round ``p - 1`` made reliable;
  round 0 compares characters.
* Linear SLPs whose internal nodes are all root children (LZ78 shape):
  type 1 covers every substring lying inside one phrase, which is a suffix of
  some node string; type 2 covers windows of length ``2**p`` starting or ending
  at a phrase boundary, compared against every window of ``S``.

Every reported witness names two different substrings with equal
fingerprints.
"""

import logging
from dataclasses import dataclass
from itertools import islice
from typing import Dict, Iterator, List, NamedTuple, Optional, Tuple

from src.errors import ShapeViolationError, VerificationOrderError
from src.fingerprint import (
    EMPTY,
    FpConfig,
    fp_concat,
    fp_of_bytes,
    fp_of_symbol,
    fp_subtract_prefix,
)
from src.grammar import Grammar, Leaf, LinearSlp, Rule, iter_symbols
from src.linear_index import LinearIndex, build_linear_index

logger = logging.getLogger(__name__)

SLP = "slp"
TYPE1 = "linear-type1"
TYPE2 = "linear-type2"

_START = "start"
_END = "end"


class CollisionWitness(NamedTuple):
    """Two 1-based start positions of different substrings of one length."""

    first: int
    second: int
    length: int

    def __str__(self):
        return f"COLLISION at {self.first} {self.second} len {self.length}"


@dataclass
class VerificationResult:
    """Outcome of one verification run."""

    kind: str
    witness: Optional[CollisionWitness] = None
    rounds: int = 0
    max_entries: int = 0

    @property
    def good(self) -> bool:
        return self.witness is None


def _power_lengths(n: int) -> Iterator[int]:
    w = 1
    while w <= n:
        yield w
        w *= 2


def _skip(it: Iterator[int], count: int):
    next(islice(it, count, count), None)


class _SlidingWindow:
    """Fingerprint of a fixed-width window moving over the text stream.

    Keeps two stack-based text iterators, one at each end of the window.
    """

    def __init__(self, g: Grammar, cfg: FpConfig, symbol_fps, start: int, width: int):
        self.cfg = cfg
        self.symbol_fps = symbol_fps
        self.trail = iter_symbols(g)
        self.lead = iter_symbols(g)
        _skip(self.trail, start - 1)
        _skip(self.lead, start - 1)
        fp = EMPTY
        self.newest = -1
        for c in islice(self.lead, width):
            fp = fp_concat(cfg, fp, symbol_fps[c])
            self.newest = c
        self.fp = fp

    def slide(self):
        leaving = next(self.trail)
        self.newest = next(self.lead)
        rest = fp_subtract_prefix(self.cfg, self.fp, self.symbol_fps[leaving])
        self.fp = fp_concat(self.cfg, rest, self.symbol_fps[self.newest])


def verify_slp(
    g: Grammar, cfg: FpConfig, space_budget: Optional[int] = None
) -> VerificationResult:
    """Certify ``phi`` on all power-of-two-length substrings of ``S``.

    With ``space_budget`` set, the dictionary never holds more entries than
    that; each round then makes ``ceil(windows / space_budget)`` passes.
    """
    if space_budget is not None and space_budget < 1:
        raise ValueError("space_budget must be positive")
    n = g.length
    symbol_fps = [fp_of_symbol(cfg, b) for b in range(256)]
    result = VerificationResult(SLP)

    for w in _power_lengths(n):
        half = w // 2
        windows = n - w + 1
        block = space_budget or windows
        for block_start in range(1, windows + 1, block):
            block_end = min(windows, block_start + block - 1)
            table: Dict[int, Tuple[int, object]] = {}
            if half:
                first = _SlidingWindow(g, cfg, symbol_fps, block_start, half)
                second = _SlidingWindow(g, cfg, symbol_fps, block_start + half, half)
            else:
                first = _SlidingWindow(g, cfg, symbol_fps, block_start, 1)
            for s in range(block_start, windows + 1):
                if s > block_start:
                    first.slide()
                    if half:
                        second.slide()
                if half:
                    value = fp_concat(cfg, first.fp, second.fp).value
                    key = (first.fp.value, second.fp.value)
                else:
                    value, key = first.fp.value, first.newest
                entry = table.get(value)
                if entry is not None:
                    if entry[1] != key:
                        result.witness = CollisionWitness(entry[0], s, w)
                        logger.info("fingerprint collision: %s", result.witness)
                        return result
                elif s <= block_end:
                    table[value] = (s, key)
                    result.max_entries = max(result.max_entries, len(table))
        result.rounds += 1
        logger.debug("round for length %d verified", w)

    logger.info("fingerprint function verified good on %d rounds", result.rounds)
    return result


def _require_lz78_shape(gl: LinearSlp):
    if not isinstance(gl, LinearSlp):
        raise ShapeViolationError("Linear SLP verification needs a LinearSlp")
    children = set(gl.root_children)
    for v, node in enumerate(gl.nodes):
        if isinstance(node, Rule) and v not in children:
            raise ShapeViolationError(f"internal node {v} is not a child of the root")


def _last_symbols(gl: LinearSlp) -> List[int]:
    nodes = gl.nodes
    return [
        node.symbol if isinstance(node, Leaf) else nodes[node.right].symbol for node in nodes
    ]


def _occurrence_ends(gl: LinearSlp) -> List[int]:
    """For every node, the end position of one occurrence of ``S(v)`` in ``S``."""
    ends = [0] * len(gl.nodes)
    for m, r in enumerate(gl.root_children):
        if not ends[r]:
            ends[r] = gl.boundaries[m + 1]
    for v in reversed(range(len(gl.nodes))):
        node = gl.nodes[v]
        if isinstance(node, Rule):
            if not ends[node.left]:
                ends[node.left] = ends[v] - 1
            if not ends[node.right]:
                ends[node.right] = ends[v]
    return ends


def verify_linear_type1(gl: LinearSlp, cfg: FpConfig) -> VerificationResult:
    """Certify ``phi`` on substrings contained in a single phrase.

    Such substrings are suffixes of node strings. The length-``p`` suffix of
    ``S(v)`` is the length-``(p - 1)`` suffix of ``S(left(v))`` followed by the
    right child's symbol, so each round is derived from the previous one and
    the dictionary holds at most ``n`` fingerprints.
    """
    _require_lz78_shape(gl)
    nodes = gl.nodes
    sizes = gl.sizes
    last = _last_symbols(gl)
    ends = _occurrence_ends(gl)
    symbol_fps = [fp_of_symbol(cfg, b) for b in range(256)]
    result = VerificationResult(TYPE1)

    previous = {}
    current = {v: symbol_fps[last[v]] for v in range(len(nodes))}
    p = 1
    while current:
        table: Dict[int, Tuple[int, object]] = {}
        for v, fp in current.items():
            key = last[v] if p == 1 else (last[v], previous[nodes[v].left].value)
            entry = table.get(fp.value)
            if entry is None:
                table[fp.value] = (v, key)
            elif entry[1] != key:
                a, b = sorted((ends[entry[0]] - p + 1, ends[v] - p + 1))
                result.witness = CollisionWitness(a, b, p)
                logger.info("type 1 fingerprint collision: %s", result.witness)
                return result
        result.max_entries = max(result.max_entries, len(table))
        result.rounds += 1
        previous = current
        p += 1
        current = {
            v: fp_concat(cfg, previous[node.left], symbol_fps[last[v]])
            for v, node in enumerate(nodes)
            if isinstance(node, Rule) and sizes[v] >= p
        }

    logger.info("type 1 verification good after %d rounds", result.rounds)
    return result


class _BoundaryComparator:
    """Decides equality of a window and a boundary-anchored window of one length.

    Only comparisons already certified are used: type 1 comparisons and type 2
    comparisons of half the length.
    """

    def __init__(self, idx: LinearIndex):
        self.idx = idx

    def fp(self, i: int, j: int) -> int:
        return self.idx.fp_range(i, j).value

    def last_start(self, b: int) -> int:
        """Largest phrase start position ``<= b``."""
        return self.idx.search.pred(b - 1) + 1

    def first_end(self, a: int) -> int:
        """Smallest phrase end position ``>= a``."""
        return self.idx.search.succ(a)

    def same(self, s: int, t: int, anchor: str, w: int) -> bool:
        if w == 1:
            return self.idx.access(s) == self.idx.access(t)
        h = w // 2
        if anchor == _START:
            if self.fp(s, s + h - 1) != self.fp(t, t + h - 1):
                return False
            a1, b1, a2, b2 = s + h, s + w - 1, t + h, t + w - 1
            k = min(b1 - self.last_start(b1), b2 - self.last_start(b2))
            if k >= h:
                return self.fp(a1, b1) == self.fp(a2, b2)
            return (
                self.fp(b1 - k, b1) == self.fp(b2 - k, b2)
                and self.fp(a1 - k - 1, b1 - k - 1) == self.fp(a2 - k - 1, b2 - k - 1)
            )
        if self.fp(s + h, s + w - 1) != self.fp(t + h, t + w - 1):
            return False
        a1, b1, a2, b2 = s, s + h - 1, t, t + h - 1
        k = min(self.first_end(a1) - a1, self.first_end(a2) - a2)
        if k >= h:
            return self.fp(a1, b1) == self.fp(a2, b2)
        return (
            self.fp(a1, a1 + k) == self.fp(a2, a2 + k)
            and self.fp(a1 + k + 1, b1 + k + 1) == self.fp(a2 + k + 1, b2 + k + 1)
        )


def verify_linear_type2(
    gl: LinearSlp,
    cfg: FpConfig,
    type1: Optional[VerificationResult],
    idx: Optional[LinearIndex] = None,
) -> VerificationResult:
    """Certify ``phi`` on power-of-two windows against boundary-anchored windows.

    ``type1`` must be a good result of :func:`verify_linear_type1` on the same
    grammar and configuration.
    """
    if type1 is None or type1.kind != TYPE1 or not type1.good:
        raise VerificationOrderError("type 1 verification must succeed first")
    _require_lz78_shape(gl)
    if idx is None:
        idx = build_linear_index(gl, cfg)
    compare = _BoundaryComparator(idx)
    n = gl.length
    starts = [r + 1 for r in gl.boundaries[:-1]]
    ends = gl.boundaries[1:]
    symbol_fps = [fp_of_symbol(cfg, b) for b in range(256)]
    result = VerificationResult(TYPE2)

    for w in _power_lengths(n):
        anchored = [(s, _START) for s in starts if s + w - 1 <= n]
        anchored += [(e - w + 1, _END) for e in ends if e - w + 1 >= 1]
        table: Dict[int, Tuple[int, str]] = {}
        for t, anchor in anchored:
            value = compare.fp(t, t + w - 1)
            entry = table.get(value)
            if entry is None:
                table[value] = (t, anchor)
            elif entry[0] != t and not compare.same(t, entry[0], entry[1], w):
                result.witness = CollisionWitness(min(t, entry[0]), max(t, entry[0]), w)
                logger.info("type 2 fingerprint collision: %s", result.witness)
                return result
        result.max_entries = max(result.max_entries, len(table))

        window = _SlidingWindow(gl, cfg, symbol_fps, 1, w)
        for s in range(1, n - w + 2):
            if s > 1:
                window.slide()
            entry = table.get(window.fp.value)
            if entry is not None and entry[0] != s and not compare.same(s, *entry, w):
                result.witness = CollisionWitness(min(s, entry[0]), max(s, entry[0]), w)
                logger.info("type 2 fingerprint collision: %s", result.witness)
                return result
        result.rounds += 1

    logger.info("type 2 verification good after %d rounds", result.rounds)
    return result


def verify_linear(gl: LinearSlp, cfg: FpConfig) -> VerificationResult:
    """Run type 1 and then type 2 verification."""
    type1 = verify_linear_type1(gl, cfg)
    if not type1.good:
        return type1
    return verify_linear_type2(gl, cfg, type1)


def confirm_witness(text: bytes, witness: CollisionWitness, cfg: FpConfig) -> bool:
    """True when the witness names two different substrings with equal fingerprints."""
    a, b, length = witness
    x = text[a - 1 : a - 1 + length]
    y = text[b - 1 : b - 1 + length]
    return len(x) == len(y) == length and x != y and fp_of_bytes(cfg, x) == fp_of_bytes(cfg, y)
