"""High-precision Gamma and Riemann zeta evaluation.

Every analytic constant in the pipeline is built from Gamma(rho), zeta(rho+1),
zeta and zeta' at non-positive points; evaluation is delegated to mpmath at
the global working precision.  Exact rational values of zeta at non-positive
integers (Bernoulli numbers) are exposed separately because the power-of-n
exponent in the final asymptotic formula must be assembled in exact rational
arithmetic.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb

from mpmath import mp, mpf

from .precision import to_hpreal


def gamma(x) -> mpf:
    """Gamma(x) for real x > 0."""
    xm = to_hpreal(x)
    if not xm > 0:
        raise ValueError(f"gamma requires x > 0, got {x}")
    return mp.gamma(xm)


def zeta(x) -> mpf:
    """Riemann zeta(x) for real x != 1 (negative arguments included)."""
    xm = to_hpreal(x)
    if xm == 1:
        raise ValueError("zeta has a pole at x = 1")
    return mp.zeta(xm)


def zeta_prime(x) -> mpf:
    """zeta'(x) for real x < 1 (x <= 0 is the case needed for D'(0) data)."""
    xm = to_hpreal(x)
    if xm >= 1:
        raise ValueError(f"zeta_prime is provided left of the pole only, got {x}")
    return mp.zeta(xm, derivative=1)


@lru_cache(maxsize=None)
def bernoulli(n: int) -> Fraction:
    """Exact Bernoulli number B_n (B_1 = -1/2 convention)."""
    if n < 0:
        raise ValueError("Bernoulli index must be nonnegative")
    if n == 0:
        return Fraction(1)
    # sum_{j=0}^{n} C(n+1, j) B_j = 0
    acc = Fraction(0)
    for j in range(n):
        acc += comb(n + 1, j) * bernoulli(j)
    return -acc / (n + 1)


def zeta_nonpositive_exact(m: int) -> Fraction:
    """Exact rational zeta(-m) for integer m >= 0."""
    if m < 0:
        raise ValueError("argument must be -m with m >= 0")
    if m == 0:
        return Fraction(-1, 2)
    # -B_{m+1}/(m+1); the m = 0 case differs because B_1 = -1/2 here
    return -bernoulli(m + 1) / (m + 1)
