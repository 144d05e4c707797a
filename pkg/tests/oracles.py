"""Independent reference implementations used as test oracles.

Everything here is deliberately written from first principles, without using
the package's own algorithms: pentagonal-number recurrence for classical
partition numbers, direct enumeration over partition multiplicity vectors
for all three structure kinds, direct d-vector products for the exponent
sets, and Richardson-extrapolated central differences for derivatives.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from mpmath import mpf


def pentagonal_partition_counts(N: int) -> list[int]:
    """p(0)..p(N) via Euler's pentagonal number theorem."""
    p = [0] * (N + 1)
    p[0] = 1
    for n in range(1, N + 1):
        total = 0
        k = 1
        while True:
            g1 = k * (3 * k - 1) // 2
            g2 = k * (3 * k + 1) // 2
            if g1 > n and g2 > n:
                break
            sign = 1 if k % 2 == 1 else -1
            if g1 <= n:
                total += sign * p[n - g1]
            if g2 <= n:
                total += sign * p[n - g2]
            k += 1
        p[n] = total
    return p


def multiplicity_vectors(n: int):
    """All (j_1..j_n) with sum k*j_k = n, as dicts {k: j_k} of nonzero parts."""

    def rec(remaining: int, kmax: int, acc: dict):
        if remaining == 0:
            yield dict(acc)
            return
        for k in range(min(kmax, remaining), 0, -1):
            for j in range(1, remaining // k + 1):
                acc[k] = j
                yield from rec(remaining - k * j, k - 1, acc)
                del acc[k]

    yield from rec(n, n, {})


def _rising(b: Fraction, j: int) -> Fraction:
    out = Fraction(1)
    for i in range(j):
        out *= b + i
    return out


def _falling(b: Fraction, j: int) -> Fraction:
    out = Fraction(1)
    for i in range(j):
        out *= b - i
    return out


def _fact(j: int) -> int:
    out = 1
    for i in range(2, j + 1):
        out *= i
    return out


def brute_force_counts(kind: int, b: list, N: int) -> list[Fraction]:
    """c_0..c_N by direct summation over multiplicity vectors.

    kind 1: prod C(b_k + j - 1, j);  kind 2: prod C(b_k, j);
    kind 3: prod b_k^j / j!.
    """
    out = [Fraction(0)] * (N + 1)
    out[0] = Fraction(1)
    for n in range(1, N + 1):
        acc = Fraction(0)
        for mult in multiplicity_vectors(n):
            term = Fraction(1)
            for k, j in mult.items():
                bk = Fraction(b[k])
                if kind == 1:
                    term *= _rising(bk, j) / _fact(j)
                elif kind == 2:
                    term *= _falling(bk, j) / _fact(j)
                else:
                    term *= bk**j / _fact(j)
                if term == 0:
                    break
            acc += term
        out[n] = acc
    return out


def brute_force_upsilon(poles: list[Fraction]):
    """(alphas, lambdas) by direct product enumeration of d-vectors."""
    rho_r = poles[-1]
    gaps = [rho_r - p for p in [Fraction(0)] + list(poles[:-1])]
    limit = rho_r + 1
    ranges = [range(int(limit / g) + 1) for g in gaps]
    alphas = set()
    for dvec in itertools.product(*ranges):
        if sum(dvec) < 2:
            continue
        total = sum(d * g for d, g in zip(dvec, gaps))
        if 0 < total <= limit:
            alphas.add(total)
    lambdas = sorted(alphas | set(gaps))
    return sorted(alphas), lambdas


def richardson_derivative(f, x, h0=None, levels: int = 4) -> mpf:
    """Richardson-extrapolated central difference d/dx f at x."""
    x = mpf(x)
    h0 = mpf("1e-6") if h0 is None else mpf(h0)
    tab = []
    for i in range(levels):
        h = h0 / 2**i
        tab.append((f(x + h) - f(x - h)) / (2 * h))
    for j in range(1, levels):
        fac = mpf(4)**j
        tab = [(fac * tab[i + 1] - tab[i]) / (fac - 1)
               for i in range(len(tab) - 1)]
    return tab[0]
