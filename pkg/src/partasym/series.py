"""Truncated series with nonnegative rational exponents.

The saddle-point expansion lives in series of the form
sum_e c_e z^e where the exponents e are exact nonnegative rationals (pole
gaps and their integer combinations) and the coefficients are
high-precision reals.  Exponent arithmetic is exact so that coefficient
collisions are decided unambiguously; coefficients below 1e-40 of the
largest one are treated as zero and dropped.

Truncation is part of a series' identity: exponents above it do not exist,
and binary operations require equal truncations.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

from mpmath import mp, mpf

from .precision import to_hpreal

_PRUNE_REL = mpf(10)**-40

Exponent = Union[Fraction, int]


def _exp(e) -> Fraction:
    if isinstance(e, Fraction):
        return e
    if isinstance(e, int):
        return Fraction(e)
    raise TypeError(f"exponents must be exact rationals, got {type(e).__name__}")


class GenSeries:
    """Immutable truncated generalized power series."""

    __slots__ = ("terms", "truncation")

    def __init__(self, terms, truncation: Exponent):
        trunc = _exp(truncation)
        if trunc < 0:
            raise ValueError("truncation must be nonnegative")
        if isinstance(terms, dict):
            items = terms.items()
        else:
            items = terms
        acc: dict[Fraction, mpf] = {}
        for e, c in items:
            e = _exp(e)
            if e < 0:
                raise ValueError(f"negative exponent {e} not supported")
            if e > trunc:
                continue
            acc[e] = acc.get(e, mpf(0)) + to_hpreal(c)
        if acc:
            mx = max(abs(c) for c in acc.values())
            floor = mx * _PRUNE_REL
            acc = {e: c for e, c in acc.items() if abs(c) > floor}
        object.__setattr__(self, "terms", dict(sorted(acc.items())))
        object.__setattr__(self, "truncation", trunc)

    def __setattr__(self, *a):
        raise AttributeError("GenSeries is immutable")

    # -- inspection ---------------------------------------------------------

    def exponents(self) -> list[Fraction]:
        return list(self.terms)

    def coeff(self, e: Exponent) -> mpf:
        e = _exp(e)
        if e > self.truncation:
            raise ValueError(f"exponent {e} exceeds truncation {self.truncation}")
        return self.terms.get(e, mpf(0))

    def min_exponent(self) -> Fraction | None:
        return next(iter(self.terms), None)

    def is_zero(self) -> bool:
        return not self.terms

    def __repr__(self):
        inner = " + ".join(f"{mp.nstr(c, 8)}*z^{e}" for e, c in self.terms.items())
        return f"GenSeries({inner or '0'}; trunc={self.truncation})"

    def __eq__(self, other):
        return (isinstance(other, GenSeries) and self.truncation == other.truncation
                and self.terms == other.terms)

    # -- arithmetic ---------------------------------------------------------

    def _require_same_trunc(self, other: "GenSeries"):
        if self.truncation != other.truncation:
            raise ValueError(
                f"truncation mismatch: {self.truncation} vs {other.truncation}")

    def __add__(self, other: "GenSeries") -> "GenSeries":
        self._require_same_trunc(other)
        d = dict(self.terms)
        for e, c in other.terms.items():
            d[e] = d.get(e, mpf(0)) + c
        return GenSeries(d, self.truncation)

    def __sub__(self, other: "GenSeries") -> "GenSeries":
        return self + other.scale(-1)

    def scale(self, s) -> "GenSeries":
        sm = to_hpreal(s)
        return GenSeries({e: c * sm for e, c in self.terms.items()}, self.truncation)

    def __mul__(self, other: "GenSeries") -> "GenSeries":
        self._require_same_trunc(other)
        trunc = self.truncation
        d: dict[Fraction, mpf] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = e1 + e2
                if e > trunc:
                    continue
                d[e] = d.get(e, mpf(0)) + c1 * c2
        return GenSeries(d, trunc)

    def shift(self, e0: Exponent) -> "GenSeries":
        """Multiply by z^e0."""
        e0 = _exp(e0)
        return GenSeries({e + e0: c for e, c in self.terms.items()}, self.truncation)

    def drop_constant(self) -> "GenSeries":
        return GenSeries({e: c for e, c in self.terms.items() if e != 0},
                         self.truncation)

    def evaluate(self, z) -> mpf:
        """Numeric value at a point (pointwise oracle for the tests)."""
        zm = to_hpreal(z)
        acc = mpf(0)
        for e, c in self.terms.items():
            acc += c * zm**(mpf(e.numerator) / e.denominator)
        return acc

    @staticmethod
    def constant(c, truncation: Exponent) -> "GenSeries":
        return GenSeries({Fraction(0): to_hpreal(c)}, truncation)

    @staticmethod
    def monomial(c, e: Exponent, truncation: Exponent) -> "GenSeries":
        return GenSeries({_exp(e): to_hpreal(c)}, truncation)


def series_mul(a: GenSeries, b: GenSeries) -> GenSeries:
    """Exponentwise convolution of two series with equal truncation."""
    return a * b


def series_binpow(u: GenSeries, g, trunc: Exponent | None = None) -> GenSeries:
    """(1 + u)^g = sum_m C(g, m) u^m for a series u with zero constant term.

    The sum terminates because the minimal exponent of u is positive, so
    u^m vanishes beyond the truncation for m large enough.  g may be any
    real (or exact rational) exponent.
    """
    if trunc is None:
        trunc = u.truncation
    trunc = _exp(trunc)
    if u.truncation != trunc:
        u = GenSeries(u.terms, trunc)
    if u.coeff(Fraction(0)) != 0:
        raise ValueError("series_binpow requires a zero constant term in u")
    out = GenSeries.constant(1, trunc)
    e_min = u.min_exponent()
    if e_min is None:
        return out
    m_max = int(trunc / e_min)
    gm = to_hpreal(g)
    power = GenSeries.constant(1, trunc)
    coef = mpf(1)
    for m in range(1, m_max + 1):
        coef = coef * (gm - (m - 1)) / m
        power = power * u
        if power.is_zero():
            break
        out = out + power.scale(coef)
    return out


def series_coeff(a: GenSeries, e: Exponent) -> mpf:
    """Stored coefficient at exponent e, or exactly 0 (e must be <= truncation)."""
    return a.coeff(e)
