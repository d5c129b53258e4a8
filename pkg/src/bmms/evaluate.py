"""Run schemes: one-level bilinear evaluation and recursive block application.

``apply_scheme`` works over anything whose entries support ``+`` and ``*``
with x + x = 0 (field elements, BitMatrix blocks, counting wrappers); the
two factors of every product are multiplied in the given order, so
non-commutative entries (blocks) are fine.  Plain GF(2) inputs given as
BitMatrix take a bit-parallel path: each linear form is one mask-AND plus
a popcount parity.

``multiply_recursive`` applies a square base scheme to large bit matrices
by blocks, zero-padding up to cutoff * n^levels, and counts the scalar
multiplications actually performed at the naive base.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from functools import lru_cache

from .gf2 import BitMatrix, mul_naive, random_matrix
from .scheme import Scheme
from .verify import verify


@lru_cache(maxsize=64)
def _flat_masks(s: Scheme) -> tuple[tuple[int, int, int], ...]:
    out = []
    for prod in s.products:
        am = sum(prod.alpha.row_bits(i) << (i * s.m) for i in range(s.n))
        bm = sum(prod.beta.row_bits(i) << (i * s.p) for i in range(s.m))
        gm = sum(prod.gamma.row_bits(i) << (i * s.p) for i in range(s.n))
        out.append((am, bm, gm))
    return tuple(out)


def _apply_bits(s: Scheme, A: BitMatrix, B: BitMatrix) -> BitMatrix:
    aflat = sum(A.row_bits(i) << (i * s.m) for i in range(s.n))
    bflat = sum(B.row_bits(i) << (i * s.p) for i in range(s.m))
    cflat = 0
    for am, bm, gm in _flat_masks(s):
        if ((aflat & am).bit_count() & 1) and ((bflat & bm).bit_count() & 1):
            cflat ^= gm
    mask = (1 << s.p) - 1
    return BitMatrix(s.n, s.p, ((cflat >> (i * s.p)) & mask for i in range(s.n)))


def _masked_sum(mask: BitMatrix, entries, zero):
    acc = None
    for i in range(mask.rows):
        bits = mask.row_bits(i)
        while bits:
            low = bits & -bits
            j = low.bit_length() - 1
            e = entries[i][j]
            acc = e if acc is None else acc + e
            bits ^= low
    return zero if acc is None else acc


def apply_scheme(s: Scheme, A, B):
    """Compute C = A*B with exactly rank(s) entry multiplications.

    ``A`` is n x m and ``B`` is m x p, either as BitMatrix (GF(2) entries)
    or as nested sequences of ring elements; the result uses the same
    representation.
    """
    if isinstance(A, BitMatrix) and isinstance(B, BitMatrix):
        if (A.rows, A.cols) != (s.n, s.m) or (B.rows, B.cols) != (s.m, s.p):
            raise ValueError(
                f"shape mismatch: scheme <{s.n},{s.m},{s.p}> applied to "
                f"{A.rows}x{A.cols} and {B.rows}x{B.cols}")
        return _apply_bits(s, A, B)

    if len(A) != s.n or len(A[0]) != s.m or len(B) != s.m or len(B[0]) != s.p:
        raise ValueError(f"shape mismatch for scheme <{s.n},{s.m},{s.p}>")
    zero_a = A[0][0] + A[0][0]
    zero_b = B[0][0] + B[0][0]
    terms = []
    for prod in s.products:
        left = _masked_sum(prod.alpha, A, zero_a)
        right = _masked_sum(prod.beta, B, zero_b)
        terms.append(left * right)
    zero_c = terms[0] + terms[0] if terms else None
    out = []
    for i in range(s.n):
        row = []
        for j in range(s.p):
            acc = None
            for k, prod in enumerate(s.products):
                if prod.gamma.get(i, j):
                    acc = terms[k] if acc is None else acc + terms[k]
            row.append(zero_c if acc is None else acc)
        out.append(row)
    return out


@dataclass(frozen=True)
class MulCounter:
    """Multiplication accounting for one recursive run.

    ``block_multiplications[l]`` is the number of block products spawned at
    recursion depth l+1 (r^(l+1) for a rank-r base); ``base_multiplications``
    counts scalar GF(2) multiplications done by the naive kernel at the
    cutoff.
    """

    base_multiplications: int
    block_multiplications: tuple[int, ...]


@dataclass(frozen=True)
class RecursionPlan:
    """A verified square base scheme plus padding/cutoff geometry."""

    scheme: Scheme
    levels: int
    cutoff: int

    def __post_init__(self):
        if self.scheme.n != self.scheme.m or self.scheme.m != self.scheme.p:
            raise ValueError(f"recursion needs a square base scheme, got "
                             f"<{self.scheme.n},{self.scheme.m},{self.scheme.p}>")
        if self.levels < 0 or self.cutoff < 1:
            raise ValueError("levels must be >= 0 and cutoff >= 1")
        if not verify(self.scheme):
            raise ValueError("base scheme fails verification; refusing to "
                             "build a plan from it")

    @property
    def padded_dim(self) -> int:
        return self.scheme.n ** self.levels * self.cutoff

    @classmethod
    def for_size(cls, scheme: Scheme, size: int, cutoff: int = 1) -> "RecursionPlan":
        """Smallest number of levels so that cutoff * n^levels covers size."""
        levels = 0
        dim = cutoff
        while dim < size:
            dim *= scheme.n
            levels += 1
        return cls(scheme, levels, cutoff)


def _naive_int_rows(arows, brows):
    out = []
    for r in arows:
        acc = 0
        t = r
        while t:
            low = t & -t
            acc ^= brows[low.bit_length() - 1]
            t ^= low
        out.append(acc)
    return out


def multiply_recursive(plan: RecursionPlan, A: BitMatrix, B: BitMatrix):
    """Blockwise scheme application; returns (product, MulCounter).

    Output is exactly ``mul_naive(A, B)`` for every cutoff and level count.
    """
    if A.rows != A.cols or B.rows != B.cols or A.rows != B.rows:
        raise ValueError("recursive multiply expects equal square matrices")
    size = A.rows
    padded = plan.padded_dim
    if size > padded:
        raise ValueError(f"input size {size} exceeds plan capacity {padded}")

    arows = [A.row_bits(i) for i in range(size)] + [0] * (padded - size)
    brows = [B.row_bits(i) for i in range(size)] + [0] * (padded - size)

    scheme = plan.scheme
    n = scheme.n
    block_counts = [0] * plan.levels
    base_count = [0]
    flat = _flat_masks(scheme)

    def rec(ar, br, dim, depth):
        if depth == plan.levels:
            base_count[0] += dim * dim * dim
            return _naive_int_rows(ar, br)
        block_counts[depth] += scheme.rank
        sub = dim // n
        submask = (1 << sub) - 1

        def blocks_of(rows):
            grid = []
            for bi in range(n):
                row = []
                for bj in range(n):
                    row.append([(rows[bi * sub + r] >> (bj * sub)) & submask
                                for r in range(sub)])
                grid.append(row)
            return grid

        ab = blocks_of(ar)
        bb = blocks_of(br)
        cb = [[None] * n for _ in range(n)]
        for am, bm, gm in flat:
            asum = [0] * sub
            t = am
            while t:
                low = t & -t
                e = low.bit_length() - 1
                blk = ab[e // n][e % n]
                for r in range(sub):
                    asum[r] ^= blk[r]
                t ^= low
            bsum = [0] * sub
            t = bm
            while t:
                low = t & -t
                e = low.bit_length() - 1
                blk = bb[e // n][e % n]
                for r in range(sub):
                    bsum[r] ^= blk[r]
                t ^= low
            m = rec(asum, bsum, sub, depth + 1)
            t = gm
            while t:
                low = t & -t
                e = low.bit_length() - 1
                tgt = cb[e // n][e % n]
                if tgt is None:
                    cb[e // n][e % n] = list(m)
                else:
                    for r in range(sub):
                        tgt[r] ^= m[r]
                t ^= low
        crows = []
        for bi in range(n):
            for r in range(sub):
                value = 0
                for bj in range(n):
                    blk = cb[bi][bj]
                    if blk is not None:
                        value |= blk[r] << (bj * sub)
                crows.append(value)
        return crows

    crows = rec(arows, brows, padded, 0)
    mask = (1 << size) - 1
    result = BitMatrix(size, size, (crows[i] & mask for i in range(size)))
    return result, MulCounter(base_count[0], tuple(block_counts))


@dataclass(frozen=True)
class BenchReport:
    size: int
    rank: int
    levels: int
    cutoff: int
    repetitions: int
    seconds: tuple[float, ...]
    counter: MulCounter

    @property
    def classical_multiplications(self) -> int:
        return self.size ** 3

    @property
    def ratio(self) -> float:
        return self.classical_multiplications / self.counter.base_multiplications

    def to_dict(self) -> dict:
        return {
            "size": self.size,
            "rank": self.rank,
            "levels": self.levels,
            "cutoff": self.cutoff,
            "repetitions": self.repetitions,
            "seconds_min": min(self.seconds),
            "seconds_all": list(self.seconds),
            "base_multiplications": self.counter.base_multiplications,
            "block_multiplications": list(self.counter.block_multiplications),
            "classical_multiplications": self.classical_multiplications,
            "ratio": self.ratio,
        }

    def lines(self) -> list[str]:
        d = self.to_dict()
        d["seconds_all"] = ",".join(f"{t:.6f}" for t in self.seconds)
        d["block_multiplications"] = ",".join(
            str(c) for c in self.counter.block_multiplications)
        return [f"{k}={v}" for k, v in d.items()]


def bench(plan: RecursionPlan, size: int, repetitions: int, seed: int) -> BenchReport:
    """Time the recursion on one deterministic random pair of inputs."""
    if size < 1 or repetitions < 1:
        raise ValueError("size and repetitions must be >= 1")
    A = random_matrix(size, size, seed)
    B = random_matrix(size, size, seed + 1)
    times = []
    counter = None
    for _ in range(repetitions):
        t0 = time.perf_counter()
        _, counter = multiply_recursive(plan, A, B)
        times.append(time.perf_counter() - t0)
    return BenchReport(size, plan.scheme.rank, plan.levels, plan.cutoff,
                       repetitions, tuple(times), counter)
