"""Build schemes from schemes: Kronecker composition and cyclic rotation.

Tensoring an <n1,m1,p1> scheme with an <n2,m2,p2> scheme yields an
<n1*n2, m1*m2, p1*p2> scheme of rank r1*r2 - the scheme-level form of
applying one algorithm recursively inside the other.  Rotation exploits
the cyclic symmetry of the matrix-multiplication tensor to turn a scheme
for <n,m,p> into one for <m,p,n>.
"""

from __future__ import annotations

from .scheme import Product, Scheme


def tensor(s1: Scheme, s2: Scheme) -> Scheme:
    """Kronecker composition; correct whenever both inputs are correct.

    Index pairing is row-major ((i1, i2) -> i1 * n2 + i2), matching the
    block layout of the recursion engine: tensor(s, s) evaluated flat
    agrees with two recursion levels of s.
    """
    products = []
    for p1 in s1.products:
        for p2 in s2.products:
            products.append(Product(
                p1.alpha.kron(p2.alpha),
                p1.beta.kron(p2.beta),
                p1.gamma.kron(p2.gamma),
            ))
    return Scheme(s1.n * s2.n, s1.m * s2.m, s1.p * s2.p, tuple(products))


def rotate(s: Scheme) -> Scheme:
    """Cyclic rotation <n,m,p> -> <m,p,n>: (alpha, beta, gamma) -> (beta, gamma^T, alpha^T).

    This transposition convention is the one under which a correct scheme
    stays correct (pinned against the Brent verifier); applying it three
    times is the identity.
    """
    products = tuple(
        Product(p.beta, p.gamma.transpose(), p.alpha.transpose())
        for p in s.products
    )
    return Scheme(s.m, s.p, s.n, products)
