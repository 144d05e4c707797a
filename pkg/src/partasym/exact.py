"""Exact counting of the three structures by two independent algorithms.

The production path is the Euler-type convolution recurrence
n c_n = sum_{m=1..n} Lambda_m c_{n-m}, where Lambda is the coefficient
sequence of z (log f)'(z):

  kind 1:  Lambda_m = sum_{k | m} k b_k
  kind 2:  Lambda_m = sum_{k | m} (-1)^(m/k + 1) k b_k
  kind 3:  Lambda_m = m b_m

The cross-check path multiplies the truncated factor polynomials
S_k(z) = sum_j d_k(j) z^(k j) directly, with

  kind 1:  d_k(j) = C(b_k + j - 1, j)   (rising factorial for rational b_k)
  kind 2:  d_k(j) = C(b_k, j)           (falling factorial)
  kind 3:  d_k(j) = b_k^j / j!

Both paths are exact in rational arithmetic; agreement is asserted by the
test suite coefficient-for-coefficient.  Counts for kinds 1 and 2 with
integer weights stay integral, which the recurrence exploits.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .weights import StructureKind

PRODUCT_N_CAP = 500  # the product expansion is a test oracle, not a production path


@dataclass(frozen=True)
class CountTable:
    """Exact counts c_0..c_N for one structure kind over one weight table."""

    kind: StructureKind
    b: tuple[Fraction, ...]       # b[0] is a zero pad; weights are b[1..N]
    counts: tuple[Fraction, ...]  # c_0..c_N

    @property
    def nmax(self) -> int:
        return len(self.counts) - 1

    def __getitem__(self, n: int) -> Fraction:
        return self.counts[n]

    def to_csv(self) -> str:
        lines = ["n,count"]
        for n, c in enumerate(self.counts):
            lines.append(f"{n},{_count_str(c)}")
        return "\n".join(lines) + "\n"


def _count_str(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _check_exact(b: Sequence) -> list[Fraction]:
    out = []
    for x in b:
        if isinstance(x, Fraction):
            out.append(x)
        elif isinstance(x, int):
            out.append(Fraction(x))
        else:
            raise TypeError(
                "exact counting requires rational weights; "
                f"got {type(x).__name__} (families with non-integer power-sum "
                "exponents are handled by the numeric saddle path only)")
    return out


def lambda_weights(kind: StructureKind, b: Sequence, N: int) -> list[Fraction]:
    """Lambda_1..Lambda_N (index 0 unused) for the convolution recurrence."""
    bq = _check_exact(b)
    if len(bq) < N + 1:
        raise ValueError(f"need b_1..b_{N}, got {len(bq) - 1} weights")
    lam = [Fraction(0)] * (N + 1)
    kind = StructureKind(kind)
    if kind is StructureKind.ASSEMBLY:
        for m in range(1, N + 1):
            lam[m] = m * bq[m]
        return lam
    for k in range(1, N + 1):
        if bq[k] == 0:
            continue
        kb = k * bq[k]
        if kind is StructureKind.PARTITION:
            for m in range(k, N + 1, k):
                lam[m] += kb
        else:
            for m in range(k, N + 1, k):
                lam[m] += kb if (m // k) % 2 == 1 else -kb
    return lam


def exact_counts(kind: StructureKind, b: Sequence, N: int) -> CountTable:
    """Counts c_0..c_N by the convolution recurrence (O(N^2) exact ops)."""
    if N < 0:
        raise ValueError("N must be >= 0")
    kind = StructureKind(kind)
    bq = _check_exact(b)
    if N == 0:
        return CountTable(kind, tuple(bq[:1]) or (Fraction(0),), (Fraction(1),))
    lam = lambda_weights(kind, bq, N)
    if (kind is not StructureKind.ASSEMBLY
            and all(x.denominator == 1 for x in bq[:N + 1])):
        # integer fast path: counts of kinds 1,2 with integer weights are integers
        lami = [int(x) for x in lam]
        ci = [0] * (N + 1)
        ci[0] = 1
        for n in range(1, N + 1):
            acc = 0
            for m in range(1, n + 1):
                acc += lami[m] * ci[n - m]
            q, r = divmod(acc, n)
            if r != 0:
                raise ArithmeticError(f"non-integral count at n={n}")  # unreachable
            ci[n] = q
        counts = tuple(Fraction(c) for c in ci)
    else:
        c = [Fraction(0)] * (N + 1)
        c[0] = Fraction(1)
        for n in range(1, N + 1):
            acc = Fraction(0)
            for m in range(1, n + 1):
                if lam[m]:
                    acc += lam[m] * c[n - m]
            c[n] = acc / n
        counts = tuple(c)
    return CountTable(kind, tuple(bq[:N + 1]), counts)


def _rising_binomial(b: Fraction, j: int) -> Fraction:
    """C(b + j - 1, j) = b (b+1) ... (b+j-1) / j!"""
    num = Fraction(1)
    for i in range(j):
        num *= b + i
    return num / _factorial(j)


def _falling_binomial(b: Fraction, j: int) -> Fraction:
    """C(b, j) = b (b-1) ... (b-j+1) / j!"""
    num = Fraction(1)
    for i in range(j):
        num *= b - i
    return num / _factorial(j)


def _factorial(j: int) -> int:
    out = 1
    for i in range(2, j + 1):
        out *= i
    return out


def product_counts(kind: StructureKind, b: Sequence, N: int) -> CountTable:
    """Counts c_0..c_N by truncated multiplication of the factor polynomials."""
    if N > PRODUCT_N_CAP:
        raise ValueError(f"product oracle is capped at N={PRODUCT_N_CAP}")
    if N < 0:
        raise ValueError("N must be >= 0")
    kind = StructureKind(kind)
    bq = _check_exact(b)
    if len(bq) < N + 1:
        raise ValueError(f"need b_1..b_{N}, got {len(bq) - 1} weights")
    prod = [Fraction(0)] * (N + 1)
    prod[0] = Fraction(1)
    top = 0  # highest nonzero degree reached so far
    for k in range(1, N + 1):
        if bq[k] == 0:
            continue
        jmax = N // k
        sk = []
        for j in range(jmax + 1):
            if kind is StructureKind.PARTITION:
                d = _rising_binomial(bq[k], j)
            elif kind is StructureKind.SELECTION:
                d = _falling_binomial(bq[k], j)
            else:
                d = bq[k]**j / Fraction(_factorial(j))
            sk.append(d)
        new = [Fraction(0)] * (N + 1)
        for j, d in enumerate(sk):
            if d == 0:
                continue
            base = k * j
            hi = min(top, N - base)
            for i in range(hi + 1):
                if prod[i]:
                    new[base + i] += d * prod[i]
        prod = new
        top = min(N, top + k * jmax)
    return CountTable(kind, tuple(bq[:N + 1]), tuple(prod))
