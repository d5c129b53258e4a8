"""Bilinear matrix-multiplication schemes over characteristic-2 domains.

The package models a scheme for multiplying an n x m by an m x p matrix as
a list of rank-one products with GF(2) coefficient masks, and provides:

* exact GF(2)/GF(2^k) arithmetic (:mod:`bmms.gf2`),
* parsing and bit-exact serialization (:mod:`bmms.io`),
* exact and randomized verification (:mod:`bmms.verify`),
* one-level and recursive evaluation with multiplication counting
  (:mod:`bmms.evaluate`),
* tensor composition and rotation (:mod:`bmms.compose`),
* rank-reducing flip search (:mod:`bmms.flips`),
* bundled data files: Strassen's 2x2 scheme (rank 7), a 4x4 scheme with
  47 products and a 5x5 scheme with 95 products, both over GF(2).
"""

from ._data import bundled_scheme, bundled_text
from .compose import rotate, tensor
from .evaluate import (BenchReport, MulCounter, RecursionPlan, apply_scheme,
                       bench, multiply_recursive)
from .flips import (FlipMove, SearchState, WalkResult, WalkStats, find_moves,
                    flip, random_walk, reduce_if_possible)
from .gf2 import GF2, BitMatrix, GF2k, GF2kElement, add, mul_naive, random_matrix
from .io import (CanonicalFormatError, ParseError, load_scheme,
                 parse_expression, read_canonical, save_scheme,
                 serialize_expression, write_canonical)
from .scheme import Product, Scheme, canonical_hash, normalize, standard_scheme
from .verify import BrentReport, brent_residual, verify, verify_randomized

__all__ = [
    "BenchReport", "BitMatrix", "BrentReport", "CanonicalFormatError",
    "FlipMove", "GF2", "GF2k", "GF2kElement", "MulCounter", "ParseError",
    "Product", "RecursionPlan", "Scheme", "SearchState", "WalkResult",
    "WalkStats", "add", "apply_scheme", "bench", "brent_residual",
    "bundled_scheme", "bundled_text", "canonical_hash", "find_moves", "flip",
    "load_scheme", "mul_naive", "multiply_recursive", "normalize",
    "parse_expression", "random_matrix", "random_walk", "read_canonical",
    "reduce_if_possible", "rotate", "save_scheme", "serialize_expression",
    "standard_scheme", "tensor", "verify", "verify_randomized",
    "write_canonical",
]

__version__ = "0.1.0"
