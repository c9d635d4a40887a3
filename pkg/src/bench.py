"""Timing harness for the query operations.

Each operation is run over the same batch of position pairs and reported as
one CSV row ``op,n,N,param,mean_ns,comparisons``. The last column is the mean
of an operation-specific count: heavy paths for ``access``, fingerprint
operations for ``fp``, fingerprint comparisons for ``lce`` and the queried
tree height for ``finger_pred``.
"""

import csv
import random
import time
from typing import Callable, List, Optional, TextIO, Tuple

from src.fingerprint import FpConfig
from src.grammar import Grammar, LinearSlp
from src.lce import LceQueryStats, lce, lce_with_finger
from src.linear_index import build_linear_index
from src.predecessor import FingerQueryStats
from src.slp_index import QueryStats, build_index

HEADER = ["op", "n", "N", "param", "mean_ns", "comparisons"]

Pair = Tuple[int, int]


def draw_pairs(
    n: int, count: int, distance: Optional[int], rng: random.Random
) -> List[Pair]:
    """Position pairs, uniform or with ``|i - j| <= distance``."""
    pairs = []
    for _ in range(count):
        i = rng.randint(1, n)
        if distance is None:
            j = rng.randint(1, n)
        else:
            j = min(n, max(1, i + rng.randint(-distance, distance)))
        pairs.append((i, j))
    return pairs


def _measure(pairs: List[Pair], run: Callable[[int, int], int]) -> Tuple[float, float]:
    total_ns = 0
    total_count = 0
    for i, j in pairs:
        start = time.perf_counter_ns()
        total_count += run(i, j)
        total_ns += time.perf_counter_ns() - start
    return total_ns / len(pairs), total_count / len(pairs)


def run_bench(
    grammar: Grammar,
    cfg: FpConfig,
    queries: int,
    distance: Optional[int],
    seed: int,
    out: TextIO,
):
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(HEADER)
    if queries <= 0:
        return
    n = len(grammar.nodes)
    length = grammar.length
    param = "uniform" if distance is None else f"local:{distance}"
    pairs = draw_pairs(length, queries, distance, random.Random(seed))
    rows = []

    if isinstance(grammar, LinearSlp):
        idx = build_linear_index(grammar, cfg)
        # Fingers are held by the caller, so they are found before timing starts.
        positions = {p for pair in pairs for p in pair}
        handles = {p: idx.search.pred_rank(p) for p in positions}
        fingers = {p: idx.finger_for(p) for p in positions}

        def finger_pred(i: int, j: int) -> int:
            stats = FingerQueryStats()
            idx.fingers.finger_pred(handles[i], j, stats)
            return stats.height or 0

        def fp_finger(i: int, j: int) -> int:
            lo, hi = min(i, j), max(i, j)
            idx.fp_range_with_finger(fingers[lo], lo, hi)
            return 0

        def lce_finger(i: int, j: int) -> int:
            stats = LceQueryStats()
            lce_with_finger(idx, i, j, stats)
            return stats.comparisons

        def access(i: int, _: int) -> int:
            idx.access(i)
            return 0

        def fp(i: int, j: int) -> int:
            idx.fp_range(min(i, j), max(i, j))
            return 0

        extra = [("fp_finger", fp_finger), ("lce_finger", lce_finger), ("finger_pred", finger_pred)]
    else:
        idx = build_index(grammar, cfg)

        def access(i: int, _: int) -> int:
            return len(idx.trace(i))

        def fp(i: int, j: int) -> int:
            stats = QueryStats()
            idx.fp_prefix_fast(max(i, j), stats)
            return stats.fp_ops

        extra = []

    def lce_plain(i: int, j: int) -> int:
        stats = LceQueryStats()
        lce(idx, i, j, stats)
        return stats.comparisons

    for op, run in [("access", access), ("fp", fp), ("lce", lce_plain), *extra]:
        mean_ns, mean_count = _measure(pairs, run)
        rows.append([op, n, length, param, f"{mean_ns:.0f}", f"{mean_count:.3f}"])
    writer.writerows(rows)
