"""Level ancestor queries on a static rooted tree by binary lifting."""

from typing import List


class LevelAncestor:
    """Jump pointers ``up[k][v]`` to the ``2**k``-th ancestor of every vertex.

    O(V log V) preprocessing and space, O(log V) per query. Any structure
    answering ``ancestor(v, d)`` can replace this one.

    Args:
        parent: Parent of every vertex; the root is its own parent.
        depth: Depth of every vertex, the root having depth 0.
    """

    def __init__(self, parent: List[int], depth: List[int]):
        self.depth = depth
        self.up = [list(parent)]
        height = max(depth, default=0)
        while (1 << len(self.up)) <= height:
            prev = self.up[-1]
            self.up.append([prev[prev[v]] for v in range(len(prev))])

    def ancestor(self, v: int, d: int) -> int:
        """The ancestor of ``v`` that lies ``d`` levels above it.

        Args:
            v: Query vertex.
            d: Number of levels to climb, ``0 <= d <= depth(v)``.

        Returns:
            The vertex at depth ``depth(v) - d`` on the root path of ``v``.
        """
        if not 0 <= d <= self.depth[v]:
            raise ValueError(f"cannot climb {d} levels from depth {self.depth[v]}")
        k = 0
        while d:
            if d & 1:
                v = self.up[k][v]
            d >>= 1
            k += 1
        return v

    def ancestor_at_depth(self, v: int, target: int) -> int:
        """The ancestor of ``v`` at absolute depth ``target``."""
        return self.ancestor(v, self.depth[v] - target)
