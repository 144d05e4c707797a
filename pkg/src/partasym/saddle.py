"""Numeric solution of the free-parameter (saddle-point) equation.

For each structure kind the mean equation E U_n = n takes the form
S(delta) = n with a strictly decreasing left-hand side

  kind 1:  S(delta) = sum_{k<=n} k b_k / (e^(k delta) - 1)
  kind 2:  S(delta) = sum_{k<=n} k b_k / (e^(k delta) + 1)
  kind 3:  S(delta) = sum_{k<=n} k b_k e^(-k delta)

(the kind-1 summand is the stable rewriting of e^(-k delta)/(1 - e^(-k delta))).
The solver brackets the root in float64, then Newton-polishes in multiprecision
until |S(delta) - n| <= tol * n (default tol 1e-30).  Every evaluation is a
full O(n) pass; nothing is truncated.

The second and third log-derivatives of the truncated product are evaluated
analytically term by term:

  B^2 = (log f_n)''  and  T = -(log f_n)'''

which at the solution give the variance and third cumulant of U_n.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import gmpy2
import numpy as np
from mpmath import mp, mpf

from .exact import CountTable
from .precision import mpf_from_mpfr, to_hpreal
from .weights import StructureKind

GUARD_BITS = 80


class NoSolutionError(ValueError):
    """The mean equation has no positive root for this (kind, b, n)."""


def _float_weights(b: Sequence, n: int) -> np.ndarray:
    return np.array([float(x) for x in b[1:n + 1]], dtype=np.float64)


def mean_constraint(kind: StructureKind, b: Sequence, n: int, delta) -> mpf:
    """S(delta) - n at working precision (delta > 0 required)."""
    kind = StructureKind(kind)
    dm = to_hpreal(delta)
    if not dm > 0:
        raise ValueError(f"delta must be positive, got {delta}")
    if len(b) < n + 1:
        raise ValueError(f"need b_1..b_{n}")
    acc = mpf(0)
    for k in range(1, n + 1):
        bk = b[k]
        if not bk:
            continue
        kd = k * dm
        if kind is StructureKind.PARTITION:
            acc += k * to_hpreal(bk) / mp.expm1(kd)
        elif kind is StructureKind.SELECTION:
            acc += k * to_hpreal(bk) / (mp.exp(kd) + 1)
        else:
            acc += k * to_hpreal(bk) * mp.exp(-kd)
    return acc - n


def _mean_float(kind: StructureKind, bf: np.ndarray, n: int, delta: float) -> float:
    k = np.arange(1, n + 1, dtype=np.float64)
    t = k * delta
    with np.errstate(over="ignore", under="ignore"):
        if kind is StructureKind.PARTITION:
            s = np.sum(k * bf / np.expm1(t))
        elif kind is StructureKind.SELECTION:
            s = np.sum(k * bf / (np.exp(t) + 1.0))
        else:
            s = np.sum(k * bf * np.exp(-t))
    return float(s) - n


def _coerce_gmpy_weights(b: Sequence, n: int) -> tuple[list, list]:
    """b_k and k*b_k, k = 1..n, as int/mpq/mpfr scalars gmpy2 multiplies fast."""
    bg = [0] * (n + 1)
    kb = [0] * (n + 1)
    for k in range(1, n + 1):
        x = b[k]
        if isinstance(x, int):
            bg[k] = x
            kb[k] = k * x
        elif isinstance(x, Fraction):
            if x.denominator == 1:
                bg[k] = x.numerator
                kb[k] = k * x.numerator
            else:
                bg[k] = gmpy2.mpq(x.numerator, x.denominator)
                kb[k] = gmpy2.mpq(k * x.numerator, x.denominator)
        else:
            bg[k] = gmpy2.mpfr(str(x))
            kb[k] = k * bg[k]
    return bg, kb


def _sums_gmpy(kind: StructureKind, kb: list, bg: list, n: int, delta,
               with_t: bool, with_logfn: bool):
    """One O(n) multiprecision pass: S, B2 and optionally T, log f_n."""
    one = gmpy2.mpfr(1)
    q = gmpy2.exp(-delta)
    S = gmpy2.mpfr(0)
    B2 = gmpy2.mpfr(0)
    T = gmpy2.mpfr(0) if with_t else None
    logfn = gmpy2.mpfr(0) if with_logfn else None
    xk = one
    if kind is StructureKind.PARTITION:
        for k in range(1, n + 1):
            xk = xk * q
            kbk = kb[k]
            if not kbk:
                continue
            d1 = one - xk
            t0 = kbk * xk / d1
            S += t0
            t1 = k * t0 / d1
            B2 += t1
            if with_t:
                T += (k * t1) * (one + xk) / d1
            if with_logfn:
                logfn -= bg[k] * gmpy2.log1p(-xk)
    elif kind is StructureKind.SELECTION:
        for k in range(1, n + 1):
            xk = xk * q
            kbk = kb[k]
            if not kbk:
                continue
            d1 = one + xk
            t0 = kbk * xk / d1
            S += t0
            t1 = k * t0 / d1
            B2 += t1
            if with_t:
                T += (k * t1) * (one - xk) / d1
            if with_logfn:
                logfn += bg[k] * gmpy2.log1p(xk)
    else:
        for k in range(1, n + 1):
            xk = xk * q
            kbk = kb[k]
            if not kbk:
                continue
            t0 = kbk * xk
            S += t0
            t1 = k * t0
            B2 += t1
            if with_t:
                T += k * t1
            if with_logfn:
                logfn += bg[k] * xk
    return S, B2, T, logfn


def _feasibility_bound(kind: StructureKind, b: Sequence, n: int):
    """Upper bound sup_delta S(delta) for kinds 2 and 3 (None if unbounded)."""
    if kind is StructureKind.PARTITION:
        return None
    total = sum(k * b[k] for k in range(1, n + 1))
    if kind is StructureKind.ASSEMBLY:
        return total
    half = Fraction(total) / 2 if isinstance(total, (int, Fraction)) else total / 2
    return half


@dataclass(frozen=True)
class SaddlePoint:
    """Solved saddle point with entropy derivatives at the solution."""

    n: int
    kind: StructureKind
    delta: mpf
    residual: mpf   # S(delta) - n at the returned delta
    log_fn: mpf     # log f_n(e^-delta)
    B2: mpf         # (log f_n)''  > 0
    T: mpf          # -(log f_n)'''


def solve_delta(kind: StructureKind, b: Sequence, n: int, tol=None,
                delta_hint=None) -> SaddlePoint:
    """Solve S(delta) = n to |residual| <= tol*n and evaluate B^2, T, log f_n.

    `delta_hint` (when the caller knows the leading-order scale
    (h_r / n)^(1/(rho_r+1))) seeds the bracket [hint/64, 64*hint]; otherwise
    the bracket is found by geometric scanning.  The left-hand side is
    strictly decreasing in delta, so bisection on the float64 profile is
    safe; Newton polishing then runs at working precision plus guard bits.
    """
    kind = StructureKind(kind)
    if n < 1:
        raise ValueError("n must be >= 1")
    if len(b) < n + 1:
        raise ValueError(f"need b_1..b_{n}")
    if not any(b[k] for k in range(1, n + 1)):
        raise NoSolutionError("all weights vanish; the mean equation has no root")
    bound = _feasibility_bound(kind, b, n)
    if bound is not None and not n < bound:
        side = "(1/2) sum k b_k" if kind is StructureKind.SELECTION else "sum k b_k"
        raise NoSolutionError(
            f"kind {int(kind)} requires n < {side} = {bound}; got n = {n}")
    tol_m = mpf("1e-30") if tol is None else to_hpreal(tol)

    bf = _float_weights(b, n)
    hint = float(delta_hint) if delta_hint is not None else None
    if hint is None:
        # scan for a sign change around delta = 1
        lo = hi = 1.0
        for _ in range(200):
            if _mean_float(kind, bf, n, lo) > 0:
                break
            lo /= 2
        for _ in range(200):
            if _mean_float(kind, bf, n, hi) < 0:
                break
            hi *= 2
    else:
        lo, hi = hint / 64, hint * 64
        for _ in range(40):
            if _mean_float(kind, bf, n, lo) > 0:
                break
            lo /= 8
        for _ in range(40):
            if _mean_float(kind, bf, n, hi) < 0:
                break
            hi *= 8
    if not (_mean_float(kind, bf, n, lo) > 0 > _mean_float(kind, bf, n, hi)):
        raise NoSolutionError("failed to bracket the root")
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        if _mean_float(kind, bf, n, mid) > 0:
            lo = mid
        else:
            hi = mid
        if hi - lo <= 1e-13 * lo:
            break

    prec = mp.prec + GUARD_BITS
    with gmpy2.context(precision=prec):
        bg, kb = _coerce_gmpy_weights(b, n)
        d = gmpy2.mpfr(0.5 * (lo + hi))
        target = gmpy2.mpfr(str(tol_m)) * n
        for _ in range(20):
            S, B2, _, _ = _sums_gmpy(kind, kb, bg, n, d, False, False)
            f = S - n
            d_new = d + f / B2
            if d_new <= 0:
                d_new = d / 2
            d = d_new
            if abs(f) <= target / 1000:
                break
        S, B2, T, logfn = _sums_gmpy(kind, kb, bg, n, d, True, True)
        residual = S - n
        if abs(residual) > target:
            raise ArithmeticError(
                f"Newton polish failed to reach tolerance: |{residual}| > {target}")
        return SaddlePoint(
            n=n, kind=kind,
            delta=mpf_from_mpfr(d),
            residual=mpf_from_mpfr(residual),
            log_fn=mpf_from_mpfr(logfn),
            B2=mpf_from_mpfr(B2),
            T=mpf_from_mpfr(T),
        )


def llt_probability_exact(kind: StructureKind, b: Sequence, n: int,
                          counts: CountTable, sp: SaddlePoint | None) -> mpf:
    """P(U_n = n) = c_n e^(-n delta) / f_n(e^-delta), from exact counts.

    This is the exact lattice point probability whose normal approximation
    1/sqrt(2 pi B^2) the local limit theorem asserts; n = 0 gives 1 by the
    empty-product convention.
    """
    if n == 0:
        return mpf(1)
    if sp is None:
        raise ValueError("a solved SaddlePoint is required for n >= 1")
    if counts.nmax < n:
        raise ValueError(f"count table covers n <= {counts.nmax}, need {n}")
    if sp.n != n or StructureKind(sp.kind) != StructureKind(kind):
        raise ValueError("saddle point was solved for a different (kind, n)")
    c = counts[n]
    log_c = mp.log(mpf(c.numerator)) - mp.log(mpf(c.denominator))
    return mp.exp(log_c - n * sp.delta - sp.log_fn)
