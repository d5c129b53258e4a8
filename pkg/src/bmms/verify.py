"""Exact scheme verification via the Brent equations.

A scheme multiplies matrices over every ring of characteristic 2 iff, for
all index pairs (i,j), (x,y), (u,v),

    sum_k alpha_k[i,j] * beta_k[x,y] * gamma_k[u,v]  =  [j=x][i=u][y=v]  (mod 2).

Since all coefficients are bits, checking this identity over GF(2) decides
correctness over every characteristic-2 coefficient domain at once.  The
randomized check below re-derives the same verdict by actually running the
scheme over an extension field; it exists to cross-check the evaluator,
not to strengthen the decision.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

import numpy as np

from .gf2 import GF2k
from .scheme import Scheme

IndexTriple = tuple[tuple[int, int], tuple[int, int], tuple[int, int]]


@dataclass(frozen=True)
class BrentReport:
    """Outcome of the exact check: equation count, failures, first failure.

    ``first_violation`` is ((i,j),(x,y),(u,v)) with 0-based indices, taken
    in lexicographic equation order.
    """

    total_equations: int
    violations: int
    first_violation: IndexTriple | None

    @property
    def correct(self) -> bool:
        return self.violations == 0


def _mask_array(s: Scheme, side: str) -> np.ndarray:
    shapes = {"alpha": (s.n, s.m), "beta": (s.m, s.p), "gamma": (s.n, s.p)}
    rows, cols = shapes[side]
    out = np.zeros((s.rank, rows * cols), dtype=np.uint8)
    for k, prod in enumerate(s.products):
        mask = getattr(prod, side)
        for i in range(rows):
            bits = mask.row_bits(i)
            for j in range(cols):
                out[k, i * cols + j] = (bits >> j) & 1
    return out


def brent_residual(s: Scheme) -> BrentReport:
    """Evaluate every Brent equation; lexicographic order over ((i,j),(x,y),(u,v))."""
    a = _mask_array(s, "alpha")
    b = _mask_array(s, "beta")
    g = _mask_array(s, "gamma")
    total = np.einsum("ka,kb,kc->abc", a.astype(np.int64), b.astype(np.int64),
                      g.astype(np.int64)) & 1
    want = np.zeros_like(total)
    for i in range(s.n):
        for j in range(s.m):
            for y in range(s.p):
                want[i * s.m + j, j * s.p + y, i * s.p + y] = 1
    diff = total != want
    violations = int(diff.sum())
    first = None
    if violations:
        flat = int(np.flatnonzero(diff.reshape(-1))[0])
        ab, c = divmod(flat, s.n * s.p)
        aa, bb = divmod(ab, s.m * s.p)
        first = (divmod(aa, s.m), divmod(bb, s.p), divmod(c, s.p))
    return BrentReport(total.size, violations, first)


def verify(s: Scheme) -> bool:
    """True iff the scheme computes matrix multiplication (char 2, exact)."""
    return brent_residual(s).violations == 0


def verify_randomized(s: Scheme, field: GF2k, trials: int, seed: int) -> bool:
    """Compare scheme evaluation against the naive product on random inputs.

    Deterministic per seed.  A correct scheme always passes; an incorrect
    one escapes detection in a single trial only if every violated bilinear
    coefficient is masked by the random draw.
    """
    from .evaluate import apply_scheme  # local import: evaluate uses verify

    if trials < 1:
        raise ValueError("trials must be >= 1")
    rng = random.Random(seed)
    for _ in range(trials):
        A = [[field.random(rng) for _ in range(s.m)] for _ in range(s.n)]
        B = [[field.random(rng) for _ in range(s.p)] for _ in range(s.m)]
        got = apply_scheme(s, A, B)
        for i in range(s.n):
            for j in range(s.p):
                acc = A[i][0] * B[0][j]
                for x in range(1, s.m):
                    acc = acc + A[i][x] * B[x][j]
                if got[i][j] != acc:
                    return False
    return True
