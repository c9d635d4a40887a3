"""Karp-Rabin fingerprints and their constant-time algebra.

The fingerprint of a string ``x`` over a prime ``p`` and base ``c`` is::

    phi(x) = sum(x[i] * c**i for i in 1..|x|) mod p

Each :class:`Fingerprint` also keeps ``c**|x| mod p`` so that concatenation
and prefix/suffix removal take a constant number of field operations.

The modulus is the Mersenne prime ``2**61 - 1`` rather than a prime growing
with the input length; the probability that two distinct strings of length at
most ``N`` collide is at most ``N / p`` per comparison. Byte ``b`` is hashed as
the integer ``b + 1`` so that leading zero bytes contribute to the value.
"""

import logging
import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, NamedTuple, Optional

from src.errors import LengthExceededError

logger = logging.getLogger(__name__)

MERSENNE_61 = (1 << 61) - 1

# Bases for a deterministic Miller-Rabin test, exact below 3.3 * 10**24.
_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def is_prime(n: int) -> bool:
    """Deterministic primality test for the moduli this package accepts."""
    if n < 2:
        return False
    for w in _WITNESSES:
        if n % w == 0:
            return n == w
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for w in _WITNESSES:
        x = pow(w, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@lru_cache(maxsize=1 << 14)
def _inverse(a: int, prime: int) -> int:
    return pow(a, prime - 2, prime)


@dataclass(frozen=True)
class FpConfig:
    """Parameters of one fingerprint function.

    ``base`` is the random multiplier, ``prime`` the modulus and ``max_len``
    the longest string the function is used on. ``rng_seed`` records where
    ``base`` came from.
    """

    base: int
    prime: int = MERSENNE_61
    max_len: int = MERSENNE_61 - 1
    rng_seed: int = 0

    def __post_init__(self):
        if not is_prime(self.prime):
            raise ValueError(f"modulus {self.prime} is not prime")
        if not 1 <= self.base <= self.prime - 1:
            raise ValueError(f"base {self.base} outside [1, {self.prime - 1}]")
        if self.max_len < 0:
            raise ValueError("max_len must be non-negative")
        if not self.is_sound():
            logger.warning(
                "fingerprint config kr %d %d %d is outside the collision bound",
                self.prime,
                self.base,
                self.max_len,
            )

    @classmethod
    def from_seed(cls, seed: int, max_len: int, prime: int = MERSENNE_61) -> "FpConfig":
        """Draw a base uniformly from ``[2, prime - 2]`` using ``seed``."""
        rng = random.Random(seed)
        base = rng.randint(2, prime - 2) if prime > 3 else 1
        return cls(base=base, prime=prime, max_len=max_len, rng_seed=seed)

    @classmethod
    def from_line(cls, line: str) -> "FpConfig":
        """Parse a ``kr <prime> <base> <max_len> <seed>`` line."""
        fields = line.split()
        if len(fields) != 5 or fields[0] != "kr":
            raise ValueError(f"not a fingerprint config line: {line!r}")
        prime, base, max_len, seed = (int(f) for f in fields[1:])
        return cls(base=base, prime=prime, max_len=max_len, rng_seed=seed)

    def to_line(self) -> str:
        return f"kr {self.prime} {self.base} {self.max_len} {self.rng_seed}"

    def is_sound(self) -> bool:
        """True when ``2 <= base <= p - 2`` and ``max_len < p``."""
        return 2 <= self.base <= self.prime - 2 and self.max_len < self.prime

    def mul(self, a: int, b: int) -> int:
        x = a * b
        if self.prime == MERSENNE_61:
            r = (x >> 61) + (x & MERSENNE_61)
            return r - MERSENNE_61 if r >= MERSENNE_61 else r
        return x % self.prime

    def inverse(self, a: int) -> int:
        return _inverse(a, self.prime)

    def check_length(self, length: int):
        if length > self.max_len:
            raise LengthExceededError(
                f"length {length} exceeds configured maximum {self.max_len}"
            )


class Fingerprint(NamedTuple):
    """Fingerprint value, ``c**length mod p`` and the string length."""

    value: int
    exponent: int
    length: int

    def is_consistent(self, cfg: FpConfig) -> bool:
        return self.exponent == pow(cfg.base, self.length, cfg.prime)


EMPTY = Fingerprint(0, 1, 0)


def empty_fingerprint() -> Fingerprint:
    return EMPTY


def fp_of_symbol(cfg: FpConfig, symbol: int) -> Fingerprint:
    """Fingerprint of the one-byte string ``bytes([symbol])``."""
    c = cfg.base % cfg.prime
    return Fingerprint(cfg.mul(symbol + 1, c), c, 1)


def fp_of_bytes(cfg: FpConfig, x: Iterable[int]) -> Fingerprint:
    """Evaluate the defining sum directly."""
    value = 0
    power = 1
    length = 0
    for b in x:
        length += 1
        power = cfg.mul(power, cfg.base)
        value = (value + cfg.mul(b + 1, power)) % cfg.prime
    cfg.check_length(length)
    return Fingerprint(value, power, length)


def fp_concat(cfg: FpConfig, fy: Fingerprint, fz: Fingerprint) -> Fingerprint:
    """Fingerprint of ``yz`` from the fingerprints of ``y`` and ``z``."""
    length = fy.length + fz.length
    cfg.check_length(length)
    value = (fy.value + cfg.mul(fy.exponent, fz.value)) % cfg.prime
    return Fingerprint(value, cfg.mul(fy.exponent, fz.exponent), length)


def fp_subtract_suffix(cfg: FpConfig, fx: Fingerprint, fz: Fingerprint) -> Fingerprint:
    """Fingerprint of ``y`` where ``x = yz``.

    ``fz`` must belong to a true suffix of the string behind ``fx``; otherwise
    the result is meaningless.
    """
    exponent = cfg.mul(fx.exponent, cfg.inverse(fz.exponent))
    value = (fx.value - cfg.mul(exponent, fz.value)) % cfg.prime
    return Fingerprint(value, exponent, fx.length - fz.length)


def fp_subtract_prefix(cfg: FpConfig, fx: Fingerprint, fy: Fingerprint) -> Fingerprint:
    """Fingerprint of ``z`` where ``x = yz``; ``fy`` must be a true prefix of ``x``."""
    inv = cfg.inverse(fy.exponent)
    value = cfg.mul((fx.value - fy.value) % cfg.prime, inv)
    return Fingerprint(value, cfg.mul(fx.exponent, inv), fx.length - fy.length)


def fp_equal(a: Optional[Fingerprint], b: Optional[Fingerprint]) -> bool:
    """Compare two fingerprints the way queries do: same length, same value."""
    return a is not None and b is not None and a.length == b.length and a.value == b.value
