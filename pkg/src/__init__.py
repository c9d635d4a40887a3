"""Karp-Rabin fingerprints, random access and LCE on grammar-compressed strings."""

from src.fingerprint import Fingerprint, FpConfig
from src.grammar import LinearSlp, Slp
from src.lce import lce, lce_with_finger
from src.linear_index import build_linear_index
from src.loader import GrammarLoader
from src.slp_index import build_index
from src.verify import verify_linear, verify_slp

__version__ = "1.0.0"
__all__ = [
    "Fingerprint",
    "FpConfig",
    "GrammarLoader",
    "LinearSlp",
    "Slp",
    "build_index",
    "build_linear_index",
    "lce",
    "lce_with_finger",
    "verify_linear",
    "verify_slp",
]
