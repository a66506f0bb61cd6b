"""Exact rational scalars, generalized binomials and the binomial
resummation identities behind the vanishing-series arguments.

All scalars in the package are ``gmpy2.mpq`` values; they are kept in
lowest terms by gmpy2 itself.
"""
from __future__ import annotations

from math import factorial

from gmpy2 import mpq

Rational = mpq


class PoleError(ZeroDivisionError):
    """A normalizing factor has a vanishing denominator."""


def Q(x, d=1) -> mpq:
    """Coerce ints, strings ("p/q") and rationals to an exact rational."""
    if isinstance(x, str):
        return mpq(x.strip())
    return mpq(x, d) if d != 1 else mpq(x)


def qstr(x) -> str:
    """Serialize a rational as "p/q", or "p" when the denominator is 1."""
    return str(mpq(x))


def sign(e: int) -> int:
    """(-1)**e as an integer, for any integer e."""
    return -1 if e % 2 else 1


def gen_binomial(alpha, k: int) -> mpq:
    """alpha (alpha-1) ... (alpha-k+1) / k!, with 0 for negative k."""
    if k < 0:
        return mpq(0)
    alpha = mpq(alpha)
    num = mpq(1)
    for i in range(k):
        num *= alpha - i
    return num / factorial(k)


def gamma_factor(omega: int, m: int) -> mpq:
    """(omega + m - 2) / (omega + 2m - 2)."""
    den = omega + 2 * m - 2
    if den == 0:
        raise PoleError(f"gamma_{m}({omega}) has a pole")
    return mpq(omega + m - 2, den)


# -- resummation identities ------------------------------------------------

def _b_sides(N: int, m: int, k: int):
    alpha = mpq(N, 2) - 2
    lhs = sum((gen_binomial(alpha, N + r - 3) * sign(r - k)
               * gen_binomial(N + r - 3, r - k) for r in range(k, m + 1)), mpq(0))
    rhs = gen_binomial(alpha, N + k - 3) * gen_binomial(mpq(N, 2) + m - 1, m - k)
    sides = [lhs, rhs]
    if N != 2 or k != 0:
        # the second form involves gamma_k(N), defined away from its pole
        third = (-2 * sign(m - k) * gamma_factor(N, k) if k > 0 else
                 -2 * sign(m) * mpq(1))
        third *= gen_binomial(alpha, N + m - 2) * gen_binomial(N + m - 2, m - k)
        sides.append(third)
    return sides


def _c_sides(N: int, m: int, k: int):
    n = N // 2
    p = 2 * n + 2
    lhs = sum((gen_binomial(2 * n - r + 2, n + 1) * sign(r - k)
               * gen_binomial(p - k, r - k) for r in range(k, m + 1)), mpq(0))
    rhs = sign(m - k) * gen_binomial(n - k, m - k) * gen_binomial(2 * n - k + 2, n + 1)
    sides = [lhs, rhs]
    if m <= n:
        g = gamma_factor(-2 * n, k) if k > 0 else mpq(1)
        sides.append(2 * sign(m - k) * g * gen_binomial(2 * n - m + 1, n + 1)
                     * gen_binomial(2 * n - k + 1, m - k))
    return sides


def _d_coefficients(n: int, m: int, k: int):
    """Coefficients of the two lambda-sum classes in the four-term sigma
    expression, next to the values they must take.

    Class A: words avoiding both n and n'. Class B: words containing exactly
    one of them (with any multiplicity).
    """
    def c(r):
        return mpq(sign(r - 1)) / gen_binomial(2 * n + r - 2, n - 1)

    def hexp(p, r, k):
        # coefficient of h_k(x) in h_r(x - 1) over p variables
        return sign(r - k) * gen_binomial(p + r - 1, r - k)

    def neither(r):            # sigma-sum with a_n = a_n' = 0, as (A, B) coefficients
        return hexp(2 * n - 2, r, k), mpq(0)

    def exactly_one(r):
        full = hexp(2 * n - 1, r, k)
        return 2 * full - 2 * hexp(2 * n - 2, r, k), full

    terms = [(2 * c(m), neither(m)), (c(m), exactly_one(m))]
    for r in range(1, m + 1):
        terms.append((-r * c(r) / (n + r - 1), neither(r)))
        terms.append(((n - 1) * c(r) / (n + r - 1), exactly_one(r)))
    coef_a = sum((w * ab[0] for w, ab in terms), mpq(0))
    coef_b = sum((w * ab[1] for w, ab in terms), mpq(0))
    g = gamma_factor(2 * n, k) if k > 0 else mpq(1)
    target = 2 * c(m) * sign(m - k) * g * gen_binomial(2 * n + m - 2, m - k)
    return coef_a, coef_b, target


def verify_resummation_identity(family: str, N: int, m: int, k: int) -> bool:
    """Check the binomial resummation identity of the given family exactly."""
    if not 0 <= k <= m:
        raise ValueError("need 0 <= k <= m")
    if family == "B":
        if N % 2 == 0:
            raise ValueError("type B needs odd N")
        sides = _b_sides(N, m, k)
    elif family == "C":
        if N % 2:
            raise ValueError("type C needs even N")
        sides = _c_sides(N, m, k)
    elif family == "D":
        if N % 2 or N < 4:
            raise ValueError("type D needs even N >= 4")
        a, b, target = _d_coefficients(N // 2, m, k)
        # no word of length 0 contains n or n'
        sides = [a, b, target] if k > 0 else [a, target]
    else:
        raise ValueError(f"unknown family {family!r}")
    return all(s == sides[0] for s in sides)
