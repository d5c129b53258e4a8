"""Exact linear algebra over GF(2) and the small extension fields GF(2^k).

A :class:`BitMatrix` stores one Python integer per row, low bit = column 0,
so a row is its own little-endian bit-packing (64-bit words fall out of
``int.to_bytes``).  Values are immutable and hashable; ``+`` is entrywise
XOR and ``*`` is the classical matrix product, which doubles as the trusted
oracle everything else is checked against.

GF(2^k) for k <= 8 is provided for running schemes over a coefficient
domain other than plain bits; any characteristic-2 ring works, these are
just the convenient test instances.
"""

from __future__ import annotations

import random
from typing import Iterable, Iterator

WORD_BITS = 64

# Irreducible polynomials over GF(2), one per degree k; bit i = coefficient
# of x^i.  Checked by the field axioms test (every nonzero element has an
# inverse iff the modulus is irreducible).
IRREDUCIBLE_POLY = {
    1: 0b11,          # x + 1
    2: 0b111,         # x^2 + x + 1
    3: 0b1011,        # x^3 + x + 1
    4: 0b10011,       # x^4 + x + 1
    5: 0b100101,      # x^5 + x^2 + 1
    6: 0b1000011,     # x^6 + x + 1
    7: 0b10000011,    # x^7 + x + 1
    8: 0b100011011,   # x^8 + x^4 + x^3 + x + 1
}


class BitMatrix:
    """Dense matrix over GF(2), one bit-packed integer per row."""

    __slots__ = ("rows", "cols", "_bits")

    def __init__(self, rows: int, cols: int, bits: Iterable[int]):
        if rows < 1 or cols < 1:
            raise ValueError(f"matrix dimensions must be >= 1, got {rows}x{cols}")
        bits = tuple(bits)
        if len(bits) != rows:
            raise ValueError(f"expected {rows} rows, got {len(bits)}")
        limit = 1 << cols
        for r, value in enumerate(bits):
            if not 0 <= value < limit:
                raise ValueError(f"row {r} has bits outside {cols} columns")
        self.rows = rows
        self.cols = cols
        self._bits = bits

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "BitMatrix":
        return cls(rows, cols, (0,) * rows)

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        return cls(n, n, (1 << i for i in range(n)))

    @classmethod
    def from_lists(cls, entries: Iterable[Iterable[int]]) -> "BitMatrix":
        """Build from nested 0/1 lists."""
        packed = []
        width = None
        for row in entries:
            row = list(row)
            if width is None:
                width = len(row)
            elif len(row) != width:
                raise ValueError("ragged rows")
            value = 0
            for j, e in enumerate(row):
                if e not in (0, 1):
                    raise ValueError(f"entry {e!r} is not a bit")
                value |= e << j
            packed.append(value)
        if width is None or width == 0:
            raise ValueError("matrix dimensions must be >= 1")
        return cls(len(packed), width, packed)

    def row_bits(self, i: int) -> int:
        return self._bits[i]

    def get(self, i: int, j: int) -> int:
        return (self._bits[i] >> j) & 1

    def to_lists(self) -> list[list[int]]:
        return [[(r >> j) & 1 for j in range(self.cols)] for r in self._bits]

    def transpose(self) -> "BitMatrix":
        out = [0] * self.cols
        for i, r in enumerate(self._bits):
            while r:
                low = r & -r
                out[low.bit_length() - 1] |= 1 << i
                r ^= low
        return BitMatrix(self.cols, self.rows, out)

    def kron(self, other: "BitMatrix") -> "BitMatrix":
        """Kronecker product; index pairing is row-major ((i1,i2) -> i1*r2+i2)."""
        out = []
        for r1 in self._bits:
            for r2 in other._bits:
                value = 0
                j1 = 0
                t = r1
                while t:
                    if t & 1:
                        value |= r2 << (j1 * other.cols)
                    t >>= 1
                    j1 += 1
                out.append(value)
        return BitMatrix(self.rows * other.rows, self.cols * other.cols, out)

    def is_zero(self) -> bool:
        return all(r == 0 for r in self._bits)

    def popcount(self) -> int:
        return sum(r.bit_count() for r in self._bits)

    def packed_bytes(self) -> bytes:
        """Rows as little-endian 64-bit words (row-padded); the wire layout."""
        words_per_row = (self.cols + WORD_BITS - 1) // WORD_BITS
        return b"".join(r.to_bytes(words_per_row * 8, "little") for r in self._bits)

    def __add__(self, other: "BitMatrix") -> "BitMatrix":
        if not isinstance(other, BitMatrix):
            return NotImplemented
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError(
                f"shape mismatch: {self.rows}x{self.cols} + {other.rows}x{other.cols}")
        return BitMatrix(self.rows, self.cols,
                         (a ^ b for a, b in zip(self._bits, other._bits)))

    def __mul__(self, other: "BitMatrix"):
        if not isinstance(other, BitMatrix):
            return NotImplemented
        return mul_naive(self, other)

    def __eq__(self, other) -> bool:
        return (isinstance(other, BitMatrix) and self.rows == other.rows
                and self.cols == other.cols and self._bits == other._bits)

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self._bits))

    def __repr__(self) -> str:
        body = ", ".join(
            "".join(str((r >> j) & 1) for j in range(self.cols)) for r in self._bits)
        return f"BitMatrix({self.rows}x{self.cols}: {body})"


def add(x: BitMatrix, y: BitMatrix) -> BitMatrix:
    """Entrywise sum mod 2 (XOR)."""
    return x + y


def mul_naive(x: BitMatrix, y: BitMatrix) -> BitMatrix:
    """Classical matrix product over GF(2); the oracle for every other path.

    Row sweep with word-parallel XOR accumulation: C[i,:] is the XOR of the
    rows of ``y`` selected by the set bits of row i of ``x``.
    """
    if x.cols != y.rows:
        raise ValueError(
            f"shape mismatch: {x.rows}x{x.cols} * {y.rows}x{y.cols}")
    out = []
    yb = y._bits
    for r in x._bits:
        acc = 0
        t = r
        while t:
            low = t & -t
            acc ^= yb[low.bit_length() - 1]
            t ^= low
        out.append(acc)
    return BitMatrix(x.rows, y.cols, out)


def random_matrix(rows: int, cols: int, seed: int) -> BitMatrix:
    """Uniform random matrix, deterministic per seed."""
    rng = random.Random(seed)
    return BitMatrix(rows, cols, (rng.getrandbits(cols) for _ in range(rows)))


class GF2kElement:
    """Element of GF(2^k): a polynomial of degree < k, stored as an int."""

    __slots__ = ("field", "value")

    def __init__(self, field: "GF2k", value: int):
        self.field = field
        self.value = value

    def __add__(self, other: "GF2kElement") -> "GF2kElement":
        self._check(other)
        return GF2kElement(self.field, self.value ^ other.value)

    def __mul__(self, other: "GF2kElement") -> "GF2kElement":
        self._check(other)
        return GF2kElement(self.field, self.field._mul(self.value, other.value))

    def _check(self, other) -> None:
        if not isinstance(other, GF2kElement) or other.field.k != self.field.k:
            raise TypeError(f"mixed-field arithmetic: {self!r} with {other!r}")

    def __eq__(self, other) -> bool:
        return (isinstance(other, GF2kElement) and other.field.k == self.field.k
                and other.value == self.value)

    def __hash__(self) -> int:
        return hash((self.field.k, self.value))

    def __repr__(self) -> str:
        return f"GF({1 << self.field.k}):{self.value:#x}"


class GF2k:
    """The field GF(2^k) for 1 <= k <= 8, with a fixed modulus per k."""

    def __init__(self, k: int):
        if k not in IRREDUCIBLE_POLY:
            raise ValueError(f"unsupported field degree k={k}")
        self.k = k
        self.modulus = IRREDUCIBLE_POLY[k]
        self.order = 1 << k

    @property
    def zero(self) -> GF2kElement:
        return GF2kElement(self, 0)

    @property
    def one(self) -> GF2kElement:
        return GF2kElement(self, 1)

    def __call__(self, value: int) -> GF2kElement:
        if not 0 <= value < self.order:
            raise ValueError(f"value {value} outside GF(2^{self.k})")
        return GF2kElement(self, value)

    def random(self, rng: random.Random) -> GF2kElement:
        return GF2kElement(self, rng.getrandbits(self.k))

    def __iter__(self) -> Iterator[GF2kElement]:
        return (GF2kElement(self, v) for v in range(self.order))

    def _mul(self, a: int, b: int) -> int:
        # carry-less multiply, then reduce by the modulus
        acc = 0
        while b:
            if b & 1:
                acc ^= a
            a <<= 1
            b >>= 1
        for shift in range(acc.bit_length() - 1, self.k - 1, -1):
            if acc >> shift & 1:
                acc ^= self.modulus << (shift - self.k)
        return acc

    def __eq__(self, other) -> bool:
        return isinstance(other, GF2k) and other.k == self.k

    def __hash__(self) -> int:
        return hash(("GF2k", self.k))

    def __repr__(self) -> str:
        return f"GF2k({self.k})"


GF2 = GF2k(1)
