"""Predecessor and finger predecessor search over static integer sets.

:class:`SortedPredecessor` is the plain black box: binary search over a sorted
array. :class:`FingerPredIndex` turns any such black box into a finger search
structure whose cost depends on the distance between the finger and the query.

The elements are cut into groups of ``ceil(log2 N)`` consecutive integers and
the largest element of each group is its representative. A complete binary
tree over the universe ``[0, 2**H)`` is kept only where it spans at least one
representative; each kept vertex at height ``h`` owns a predecessor structure
over the representatives in its range of size ``2**h``. A query at distance
``d`` from the finger's representative climbs to height ``ceil(log2 d)``, asks
that vertex and its neighbour on the same level, and finishes with at most
four searches inside groups. Groups are small sorted arrays.
"""

import logging
from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from src.errors import InvalidFingerError

logger = logging.getLogger(__name__)


class SortedPredecessor:
    """Predecessor and successor by binary search over a sorted array."""

    def __init__(self, elements: Sequence[int]):
        self.elements = elements

    def __len__(self):
        return len(self.elements)

    def pred_rank(self, q: int) -> int:
        """Rank of the largest element ``<= q``, or -1."""
        return bisect_right(self.elements, q) - 1

    def succ_rank(self, q: int) -> int:
        """Rank of the smallest element ``>= q``, or ``len(self)``."""
        return bisect_left(self.elements, q)

    def pred(self, q: int) -> Optional[int]:
        r = self.pred_rank(q)
        return self.elements[r] if r >= 0 else None

    def succ(self, q: int) -> Optional[int]:
        r = self.succ_rank(q)
        return self.elements[r] if r < len(self.elements) else None


@dataclass
class FingerQueryStats:
    """What one finger query touched."""

    height: Optional[int] = None
    representative: Optional[int] = None
    structures: int = 0
    group_searches: int = 0


class _Vertex:
    """A kept tree vertex: the run of representatives it spans."""

    __slots__ = ("first_group", "left", "right", "search")

    def __init__(self, first_group: int, values: List[int]):
        self.first_group = first_group
        self.search = SortedPredecessor(values)
        self.left: Optional[Tuple[int, int]] = None
        self.right: Optional[Tuple[int, int]] = None


class FingerPredIndex:
    """Finger predecessor/successor over a static subset of ``[0, universe)``."""

    def __init__(self, elements: Sequence[int], universe: int):
        self.universe = universe
        self.elements = list(elements)
        for a, b in zip(self.elements, self.elements[1:]):
            if a >= b:
                raise ValueError("elements must be strictly increasing")
        if self.elements and not 0 <= self.elements[0] <= self.elements[-1] < universe:
            raise ValueError(f"elements must lie in [0, {universe})")

        self.height = max(universe - 1, 0).bit_length()
        self.group_size = max(1, self.height)
        self.groups = [
            SortedPredecessor(self.elements[s : s + self.group_size])
            for s in range(0, len(self.elements), self.group_size)
        ]
        self.representatives = [group.elements[-1] for group in self.groups]
        self.vertices: Dict[Tuple[int, int], _Vertex] = {}
        self._build_tree()
        logger.debug(
            "finger index: %d elements, %d groups, %d tree vertices",
            len(self.elements),
            len(self.groups),
            len(self.vertices),
        )

    def _build_tree(self):
        members: Dict[Tuple[int, int], List[int]] = {}
        for g, rep in enumerate(self.representatives):
            for h in range(self.height + 1):
                members.setdefault((h, rep >> h), []).append(g)
        for key, groups in members.items():
            values = [self.representatives[g] for g in groups]
            self.vertices[key] = _Vertex(groups[0], values)
        for h in range(self.height + 1):
            level = sorted(x for (height, x) in self.vertices if height == h)
            for a, b in zip(level, level[1:]):
                self.vertices[(h, a)].right = (h, b)
                self.vertices[(h, b)].left = (h, a)

    def __len__(self):
        return len(self.elements)

    def stored_pairs(self) -> int:
        """Number of (element, structure) pairs held by groups and tree vertices."""
        return len(self.elements) + sum(len(v.search) for v in self.vertices.values())

    def handle(self, element: int) -> int:
        """Finger handle (rank) of a stored element."""
        rank = bisect_left(self.elements, element)
        if rank == len(self.elements) or self.elements[rank] != element:
            raise InvalidFingerError(f"{element} is not stored")
        return rank

    def _check_query(self, q: int):
        if not 0 <= q < self.universe:
            raise ValueError(f"query {q} outside [0, {self.universe})")

    def _finish(
        self, group: int, q: int, stats: Optional[FingerQueryStats]
    ) -> Tuple[int, int]:
        """Ranks of ``pred(q)`` and ``succ(q)`` from ``group``, the first group whose
        representative is ``>= q``.

        ``group`` may be ``len(self.groups)`` when every representative is ``< q``.
        A missing predecessor has rank -1 and a missing successor ``len(self)``.
        """
        if stats is not None:
            stats.group_searches += 2
        base = group * self.group_size
        succ = len(self.elements)
        if group < len(self.groups):
            block = self.groups[group]
            succ = base + block.succ_rank(q)
            p = block.pred_rank(q)
            if p >= 0:
                return base + p, succ
        return min(base, len(self.elements)) - 1, succ

    def _values(self, ranks: Tuple[int, int]) -> Tuple[Optional[int], Optional[int]]:
        p, s = ranks
        pred = self.elements[p] if p >= 0 else None
        succ = self.elements[s] if s < len(self.elements) else None
        return pred, succ

    def _tree_search(
        self, rep_group: int, q: int, stats: Optional[FingerQueryStats]
    ) -> int:
        """Group index of the smallest representative ``>= q``, searching near ``rep_group``."""
        g = self.representatives[rep_group]
        distance = abs(g - q)
        if distance == 0:
            return rep_group
        h = (distance - 1).bit_length()
        key = (h, g >> h)
        vertex = self.vertices[key]
        neighbour_key = vertex.left if q < g else vertex.right
        if stats is not None:
            stats.height = h
            stats.representative = g
        candidates = [(key, vertex)]
        if neighbour_key is not None:
            candidates.append((neighbour_key, self.vertices[neighbour_key]))

        best: Optional[int] = None
        for _, v in candidates:
            if stats is not None:
                stats.structures += 1
            if q < g:
                r = v.search.succ_rank(q)
                if r < len(v.search):
                    found = v.first_group + r
                    best = found if best is None else min(best, found)
            else:
                r = v.search.pred_rank(q - 1)
                if r >= 0:
                    found = v.first_group + r
                    best = found if best is None else max(best, found)
        if best is None:
            # Neither vertex answered; fall back to the root structure.
            logger.debug("finger search escalated to the root for q=%d", q)
            return self._root_succ_group(q)
        if q < g:
            return best
        return best + 1

    def _root_succ_group(self, q: int) -> int:
        root = self.vertices[(self.height, 0)]
        return root.first_group + root.search.succ_rank(q)

    def query_ranks(
        self, q: int, stats: Optional[FingerQueryStats] = None
    ) -> Tuple[int, int]:
        """Ranks of ``pred(q)`` and ``succ(q)`` through the root structure."""
        self._check_query(q)
        if not self.elements:
            return -1, 0
        if stats is not None:
            stats.height = self.height
            stats.structures += 1
        return self._finish(self._root_succ_group(q), q, stats)

    def finger_ranks(
        self, finger: int, q: int, stats: Optional[FingerQueryStats] = None
    ) -> Tuple[int, int]:
        """Ranks of ``pred(q)`` and ``succ(q)`` starting from the element with
        handle ``finger``.

        Ranks double as handles, so a caller can keep searching from the answer.
        """
        self._check_query(q)
        if not 0 <= finger < len(self.elements):
            raise InvalidFingerError(f"finger handle {finger} does not exist")
        f = self.elements[finger]
        group = finger // self.group_size
        if q == f:
            return finger, finger
        if q < f:
            if group == 0 or self.representatives[group - 1] < q:
                return self._finish(group, q, stats)
            return self._finish(self._tree_search(group - 1, q, stats), q, stats)
        if q <= self.representatives[group]:
            return self._finish(group, q, stats)
        return self._finish(self._tree_search(group, q, stats), q, stats)

    def query(
        self, q: int, stats: Optional[FingerQueryStats] = None
    ) -> Tuple[Optional[int], Optional[int]]:
        """``(pred(q), succ(q))`` through the root structure, without a finger."""
        return self._values(self.query_ranks(q, stats))

    def finger_query(
        self, finger: int, q: int, stats: Optional[FingerQueryStats] = None
    ) -> Tuple[Optional[int], Optional[int]]:
        """``(pred(q), succ(q))`` starting from the element with handle ``finger``."""
        return self._values(self.finger_ranks(finger, q, stats))

    def pred(self, q: int) -> Optional[int]:
        return self.query(q)[0]

    def succ(self, q: int) -> Optional[int]:
        return self.query(q)[1]

    def finger_pred(
        self, finger: int, q: int, stats: Optional[FingerQueryStats] = None
    ) -> Optional[int]:
        return self.finger_query(finger, q, stats)[0]

    def finger_succ(
        self, finger: int, q: int, stats: Optional[FingerQueryStats] = None
    ) -> Optional[int]:
        return self.finger_query(finger, q, stats)[1]
