"""Longest common extensions by fingerprint comparisons.

``lce(i, j)`` is the number of matching characters of the suffixes starting at
``i`` and ``j`` (0 when ``S[i] != S[j]``). Windows of length 1, 2, 4, ... are
compared until one differs or would run past ``N``; the remainder is then
pinned down by halving, each step testing the next power-of-two window after
the part already matched.

Only comparisons that :mod:`src.verify` certifies are made, so answers that
are correct with high probability become always correct once the fingerprint
function has been verified:

* On an SLP every compared window has power-of-two length.
* On a Linear SLP the first comparison stays inside the phrases of ``i`` and
  ``j``. Every later window either starts at a phrase boundary or is split
  into a piece inside a phrase and a power-of-two window ending at a boundary.
"""

from dataclasses import dataclass
from typing import Callable, Optional, Union

from src.errors import OutOfBoundsError
from src.fingerprint import Fingerprint, fp_equal, fp_subtract_prefix
from src.linear_index import Finger, LinearIndex
from src.slp_index import SlpIndex

Index = Union[SlpIndex, LinearIndex]


@dataclass
class LceQueryStats:
    """Comparison steps spent on one query and its answer."""

    comparisons: int = 0
    result: int = 0


def _grow(
    room: int,
    whole: Callable[[int], bool],
    tail: Callable[[int, int], bool],
    stats: LceQueryStats,
) -> int:
    """Longest match of at most ``room`` characters.

    ``whole(w)`` compares the first ``w`` characters; ``tail(m, w)`` compares
    ``w`` characters after the first ``m``, which are known to match.
    """
    matched = 0
    step = 1
    while step <= room:
        stats.comparisons += 1
        if not whole(step):
            break
        matched = step
        step *= 2
    half = matched // 2
    while half:
        if matched + half <= room:
            stats.comparisons += 1
            if tail(matched, half):
                matched += half
        half //= 2
    return matched


def _start(n: int, i: int, j: int, stats: Optional[LceQueryStats]) -> LceQueryStats:
    for pos in (i, j):
        if not 1 <= pos <= n:
            raise OutOfBoundsError(f"position {pos} outside [1, {n}]")
    return LceQueryStats() if stats is None else stats


def _lce_slp(idx: SlpIndex, i: int, j: int, stats: LceQueryStats) -> int:
    def same(a: int, b: int, w: int) -> bool:
        return fp_equal(idx.fp_range(a, a + w - 1), idx.fp_range(b, b + w - 1))

    room = idx.length - max(i, j) + 1
    return _grow(
        room,
        lambda w: same(i, j, w),
        lambda m, w: same(i + m, j + m, w),
        stats,
    )


def _lce_linear(
    idx: LinearIndex,
    i: int,
    j: int,
    finger_i: Optional[Finger],
    finger_j: Optional[Finger],
    stats: LceQueryStats,
) -> int:
    def fp(finger: Optional[Finger], a: int, b: int) -> Fingerprint:
        if finger is None:
            return idx.fp_range(a, b)
        whole = idx.fp_prefix_with_finger(finger, b)
        return fp_subtract_prefix(idx.cfg, whole, idx.fp_prefix_with_finger(finger, a - 1))

    def same(a: int, b: int, w: int) -> bool:
        return fp_equal(fp(finger_i, a, a + w - 1), fp(finger_j, b, b + w - 1))

    def same_split(a1: int, a2: int, w: int) -> bool:
        # Split at the last phrase start k characters before either window end:
        # the last k + 1 characters lie inside phrases, and the w characters
        # before them end at a boundary and overlap the matched part.
        b1, b2 = a1 + w - 1, a2 + w - 1
        k = min(b1 - idx.last_start(b1, finger_i), b2 - idx.last_start(b2, finger_j))
        if k >= w:
            return same(a1, a2, w)
        return same(b1 - k, b2 - k, k + 1) and same(a1 - k - 1, a2 - k - 1, w)

    k = min(idx.phrase_end(i, finger_i) - i, idx.phrase_end(j, finger_j) - j)
    stats.comparisons += 1
    if not same(i, j, k + 1):
        return _grow(k, lambda w: same(i, j, w), lambda m, w: same(i + m, j + m, w), stats)

    i2, j2 = i + k + 1, j + k + 1
    room = idx.length - max(i2, j2) + 1
    return k + 1 + _grow(
        room,
        lambda w: same(i2, j2, w),
        lambda m, w: same_split(i2 + m, j2 + m, w),
        stats,
    )


def lce(idx: Index, i: int, j: int, stats: Optional[LceQueryStats] = None) -> int:
    """Length of the longest common prefix of ``S[i..]`` and ``S[j..]``."""
    stats = _start(idx.length, i, j, stats)
    if i == j:
        stats.result = idx.length - i + 1
    elif isinstance(idx, LinearIndex):
        stats.result = _lce_linear(idx, i, j, None, None, stats)
    else:
        stats.result = _lce_slp(idx, i, j, stats)
    return stats.result


def lce_with_finger(
    idx: LinearIndex, i: int, j: int, stats: Optional[LceQueryStats] = None
) -> int:
    """Same answer as :func:`lce`; every search near ``i`` or ``j`` starts from a finger."""
    stats = _start(idx.length, i, j, stats)
    if i == j:
        stats.result = idx.length - i + 1
    else:
        finger_i, finger_j = idx.finger_for(i), idx.finger_for(j)
        stats.result = _lce_linear(idx, i, j, finger_i, finger_j, stats)
    return stats.result
