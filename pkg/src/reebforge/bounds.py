"""Exact evaluators for the quantitative Betti bounds, plus a univariate
sign-condition counter.

Every evaluator works in arbitrary-precision integers; binomials with an
oversized lower index evaluate to zero, matching the summation convention.
The univariate counter isolates nothing explicitly: distinct real roots of
the product polynomial are counted exactly with a Sturm chain over rationals,
and the cell count of the induced partition of the line follows.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .errors import InvalidParamsError, ZeroPolynomialError


@dataclass(frozen=True)
class BoundParams:
    """Parameters shared by the bound evaluators; all strictly positive."""

    s: int = 1
    d: int = 1
    k: int = 1
    n: int = 1
    m: int = 1
    c: int = 1

    def __post_init__(self):
        for name in ("s", "d", "k", "n", "m", "c"):
            value = getattr(self, name)
            if not isinstance(value, int) or value < 1:
                raise InvalidParamsError(f"{name} must be a positive integer, got {value!r}")


def _require_positive(**params):
    for name, value in params.items():
        if not isinstance(value, int) or value < 1:
            raise InvalidParamsError(f"{name} must be a positive integer, got {value!r}")


def bound_closed(s, d, k):
    """Betti bound for a closed sign-condition set:
    sum_{i=0}^{k} sum_{j=0}^{k-i} C(s+1, j) 6^j d (2d-1)^(k-1)."""
    _require_positive(s=s, d=d, k=k)
    unit = d * (2 * d - 1) ** (k - 1)
    return sum(
        comb(s + 1, j) * 6**j * unit for i in range(k + 1) for j in range(k - i + 1)
    )


def bound_general(s, d, k):
    """Betti bound for an arbitrary sign-condition set:
    sum_{i=0}^{k} sum_{j=0}^{k-i} C(2ks+1, j) 6^j d (2d-1)^(k-1)."""
    _require_positive(s=s, d=d, k=k)
    unit = d * (2 * d - 1) ** (k - 1)
    return sum(
        comb(2 * k * s + 1, j) * 6**j * unit
        for i in range(k + 1)
        for j in range(k - i + 1)
    )


def bound_sign_components(s, d, k):
    """Bound on the total number of connected components over all realizable
    sign conditions: sum_{1<=j<=k} C(s, j) 4^j d (2d-1)^(k-1)."""
    _require_positive(s=s, d=d, k=k)
    unit = d * (2 * d - 1) ** (k - 1)
    return sum(comb(s, j) * 4**j * unit for j in range(1, k + 1))


def bound_reeb(s, d, n, m, c):
    """Parametric Reeb-space bound (s*d) ** ((n+m) ** c).

    The exponent constant c is caller-supplied; no specific value is claimed,
    so comparisons against computed Betti totals are reported, never asserted.
    """
    _require_positive(s=s, d=d, n=n, m=m, c=c)
    return (s * d) ** ((n + m) ** c)


def _strip(poly):
    while poly and poly[-1] == 0:
        poly = poly[:-1]
    return poly


def _poly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _strip(out)


def _poly_div(a, b):
    """Quotient and remainder over the rationals."""
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    inv = 1 / Fraction(b[-1])
    while len(a) >= len(b) and _strip(a):
        a = _strip(a)
        if len(a) < len(b):
            break
        coeff = a[-1] * inv
        shift = len(a) - len(b)
        q[shift] = coeff
        for i, y in enumerate(b):
            a[shift + i] -= coeff * y
        a = a[:-1]
    return _strip(q), _strip(a)


def _poly_derivative(a):
    return _strip([i * c for i, c in enumerate(a)][1:])


def _poly_gcd(a, b):
    a, b = _strip(a), _strip(b)
    while b:
        _, r = _poly_div(a, b)
        a, b = b, r
    if a:
        lead = a[-1]
        a = [c / lead for c in a]
    return a


def _sign_variations(signs):
    signs = [s for s in signs if s != 0]
    return sum(1 for x, y in zip(signs, signs[1:]) if x * y < 0)


def count_distinct_real_roots(poly):
    """Number of distinct real roots of a nonzero rational polynomial.

    Sturm's theorem applied to the squarefree part: the variation difference
    of the chain's leading-coefficient signs at -infinity and +infinity.
    """
    poly = _strip([Fraction(c) for c in poly])
    if not poly:
        raise ZeroPolynomialError("the zero polynomial has no root structure")
    if len(poly) == 1:
        return 0
    derivative = _poly_derivative(poly)
    square_part = _poly_gcd(poly, derivative)
    poly, _ = _poly_div(poly, square_part)

    chain = [poly, _poly_derivative(poly)]
    while chain[-1]:
        _, r = _poly_div(chain[-2], chain[-1])
        chain.append([-c for c in r])
    chain.pop()

    at_minus = []
    at_plus = []
    for f in chain:
        lead = f[-1]
        degree = len(f) - 1
        at_plus.append(1 if lead > 0 else -1)
        at_minus.append((1 if lead > 0 else -1) * (-1) ** degree)
    return _sign_variations(at_minus) - _sign_variations(at_plus)


def univariate_sign_components(polys):
    """Total number of connected components over all realizable sign
    conditions of a family of univariate polynomials.

    The distinct real roots of the product cut the line into cells on which
    every sign vector is constant, and adjacent cells always differ in some
    sign, so the total is 2r + 1 for r distinct roots.
    """
    if not polys:
        raise ZeroPolynomialError("at least one polynomial is required")
    product = [Fraction(1)]
    for poly in polys:
        poly = _strip([Fraction(c) for c in poly])
        if not poly:
            raise ZeroPolynomialError("the zero polynomial is not allowed")
        product = _poly_mul(product, poly)
    roots = count_distinct_real_roots(product)
    return 2 * roots + 1


def bound_report(name, value, **params):
    """Report document with the value as a decimal string."""
    return {"bound_name": name, "params": dict(sorted(params.items())), "value": str(value)}
