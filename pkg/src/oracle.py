"""Brute-force reference answers for tests.

Nothing here imports the modules it is used to check. Fingerprints come back as
plain ``(value, exponent, length)`` tuples, which compare equal to
``Fingerprint`` values.
"""

from typing import Optional, Sequence, Tuple


def naive_fp_prefix(cfg, text: bytes, i: int) -> Tuple[int, int, int]:
    """Evaluate ``sum((text[k] + 1) * c**(k + 1))`` over the first ``i`` bytes."""
    value = 0
    for k in range(i):
        value += (text[k] + 1) * pow(cfg.base, k + 1, cfg.prime)
    return value % cfg.prime, pow(cfg.base, i, cfg.prime), i


def naive_lce(text: bytes, i: int, j: int) -> int:
    """Matching characters of the suffixes at 1-based ``i`` and ``j``."""
    length = 0
    while max(i, j) + length <= len(text) and text[i - 1 + length] == text[j - 1 + length]:
        length += 1
    return length


def naive_pred(elements: Sequence[int], q: int) -> Optional[int]:
    """Largest element ``<= q`` by a linear scan."""
    best = None
    for r in elements:
        if r <= q and (best is None or r > best):
            best = r
    return best


def naive_succ(elements: Sequence[int], q: int) -> Optional[int]:
    """Smallest element ``>= q`` by a linear scan."""
    best = None
    for r in elements:
        if r >= q and (best is None or r < best):
            best = r
    return best
