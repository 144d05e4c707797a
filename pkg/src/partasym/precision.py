"""Global working-precision configuration.

All real-valued constants produced by this package (saddle points, series
coefficients, asymptotic-formula data) are mpmath floats evaluated at a
single global working precision, 60 significant digits by default.  The
multi-pole coefficient algebra involves heavy cancellation, so precision is
kept deliberately generous; it can be raised further with
``set_working_precision``.
"""

from __future__ import annotations

from contextlib import contextmanager
from fractions import Fraction

import mpmath
from mpmath import mp, mpf

DEFAULT_DPS = 60

# Downstream modules assume at least the default precision from import time on.
if mp.dps < DEFAULT_DPS:
    mp.dps = DEFAULT_DPS

HPReal = mpf


def working_dps() -> int:
    """Current number of significant decimal digits."""
    return mp.dps


def set_working_precision(dps: int) -> int:
    """Set the global working precision in decimal digits, returning the old one."""
    if dps < 1:
        raise ValueError(f"precision must be a positive digit count, got {dps}")
    old = mp.dps
    mp.dps = dps
    return old


@contextmanager
def extra_precision(dps: int = 20):
    """Temporarily raise the working precision by `dps` digits."""
    old = mp.dps
    mp.dps = old + dps
    try:
        yield
    finally:
        mp.dps = old


def mpf_from_fraction(q: Fraction | int) -> mpf:
    """Round an exact rational to the working precision."""
    if isinstance(q, int):
        return mpf(q)
    with extra_precision(10):
        v = mpf(q.numerator) / q.denominator
    return +v


def mpf_from_mpfr(x) -> mpf:
    """Convert a gmpy2.mpfr to an mpmath float without going through text."""
    man, exp = x.as_mantissa_exp()
    return mpmath.ldexp(mpf(int(man)), int(exp))


def to_hpreal(x) -> mpf:
    """Coerce int/Fraction/float/mpf to an mpf at working precision."""
    if isinstance(x, mpf):
        return x
    if isinstance(x, Fraction):
        return mpf_from_fraction(x)
    return mpf(x)


def nstr(x, digits: int | None = None) -> str:
    """Deterministic decimal rendering at (by default) the working precision."""
    return mpmath.nstr(mpf(x), digits if digits is not None else mp.dps)
