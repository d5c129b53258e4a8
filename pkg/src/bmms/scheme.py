"""Data model for bilinear matrix-multiplication schemes.

A scheme for <n,m,p> (multiply n x m by m x p) is an ordered list of
products; product k holds three GF(2) coefficient masks (alpha, beta,
gamma).  Evaluating the scheme computes every entry of the result from the
rank(s) products

    t_k = (sum of A entries selected by alpha_k) * (sum of B entries by beta_k)
    C[i,j] = XOR of t_k over all k with gamma_k[i,j] set.

Structural validity (shapes agree) is enforced here; whether a scheme
actually multiplies matrices is the verifier's business.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass

from .gf2 import BitMatrix


@dataclass(frozen=True)
class Product:
    """One rank-one term: coefficient masks for A, B and C."""

    alpha: BitMatrix
    beta: BitMatrix
    gamma: BitMatrix

    def has_zero_mask(self) -> bool:
        return self.alpha.is_zero() or self.beta.is_zero() or self.gamma.is_zero()


@dataclass(frozen=True)
class Scheme:
    """Dimensions plus an ordered product list; rank = number of products."""

    n: int
    m: int
    p: int
    products: tuple[Product, ...]

    def __post_init__(self):
        if self.n < 1 or self.m < 1 or self.p < 1:
            raise ValueError(f"dimensions must be >= 1, got <{self.n},{self.m},{self.p}>")
        for k, prod in enumerate(self.products):
            shapes = (
                (prod.alpha.rows, prod.alpha.cols, self.n, self.m, "alpha"),
                (prod.beta.rows, prod.beta.cols, self.m, self.p, "beta"),
                (prod.gamma.rows, prod.gamma.cols, self.n, self.p, "gamma"),
            )
            for rows, cols, want_r, want_c, name in shapes:
                if (rows, cols) != (want_r, want_c):
                    raise ValueError(
                        f"product {k}: {name} is {rows}x{cols}, "
                        f"expected {want_r}x{want_c}")

    @property
    def rank(self) -> int:
        return len(self.products)

    @property
    def dims(self) -> tuple[int, int, int]:
        return (self.n, self.m, self.p)

    def __repr__(self) -> str:
        return f"Scheme(<{self.n},{self.m},{self.p}>, rank={self.rank})"


def standard_scheme(n: int, m: int, p: int) -> Scheme:
    """The classical algorithm: one product per entry triple (i, j, l)."""
    products = []
    for i in range(n):
        for j in range(m):
            for l in range(p):
                products.append(Product(
                    BitMatrix(n, m, tuple(1 << j if r == i else 0 for r in range(n))),
                    BitMatrix(m, p, tuple(1 << l if r == j else 0 for r in range(m))),
                    BitMatrix(n, p, tuple(1 << l if r == i else 0 for r in range(n))),
                ))
    return Scheme(n, m, p, tuple(products))


def _merge_key(prod: Product, skip: int) -> tuple:
    masks = (prod.alpha, prod.beta, prod.gamma)
    return tuple(masks[i] for i in range(3) if i != skip)


def _merged(a: Product, b: Product, third: int) -> Product:
    masks = [a.alpha, a.beta, a.gamma]
    others = (b.alpha, b.beta, b.gamma)
    masks[third] = masks[third] + others[third]
    return Product(*masks)


def normalize(s: Scheme) -> Scheme:
    """Drop zero-mask products and merge pairs sharing two masks.

    Two products equal in two components combine into one whose third
    component is the sum (char 2), possibly cancelling entirely.  Repeats
    until stable, so the result has no zero masks and no mergeable pair;
    the represented bilinear map is unchanged.  May return rank 0 when
    everything cancels.
    """
    products = list(s.products)
    changed = True
    while changed:
        changed = False
        products = [p for p in products if not p.has_zero_mask()]
        for third in (2, 1, 0):  # shared (alpha,beta), then (alpha,gamma), (beta,gamma)
            seen: dict[tuple, int] = {}
            for idx, prod in enumerate(products):
                key = _merge_key(prod, third)
                if key in seen:
                    j = seen[key]
                    products[j] = _merged(products[j], prod, third)
                    del products[idx]
                    changed = True
                    break
                seen[key] = idx
            if changed:
                break
    return Scheme(s.n, s.m, s.p, tuple(products))


def canonical_hash(s: Scheme) -> str:
    """Order-insensitive digest of a scheme (hash of the product multiset)."""
    blobs = sorted(
        p.alpha.packed_bytes() + p.beta.packed_bytes() + p.gamma.packed_bytes()
        for p in s.products
    )
    h = hashlib.sha256()
    h.update(f"<{s.n},{s.m},{s.p}>".encode())
    for blob in blobs:
        h.update(blob)
    return h.hexdigest()
