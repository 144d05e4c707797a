"""Weight sequences {b_k} and their Dirichlet data.

Three structure types share one parameter sequence b_k >= 0: weighted
partitions (kind 1), selections (kind 2) and assemblies (kind 3).  A weight
family is either

* ``PowerSum``:   b_k = sum_j a_j k^(r_j - 1) with positive rational a_j and
  distinct positive rational exponents r_j.  Its Dirichlet generating
  function D(s) = sum_k b_k k^(-s) = sum_j a_j zeta(s - r_j + 1) has simple
  poles exactly at s = r_j with residues a_j.
* ``Binomial``:   b_k = C(k+l, l), which expands into a PowerSum with integer
  exponents 1..l+1.
* ``Tabulated``:  an explicit table of rational b_k together with
  user-supplied Dirichlet data (no analytic continuation is inferred).

Rational parameters are kept exact: the expansion machinery decides exponent
collisions by exact comparison, so pole positions must never be floats.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import IntEnum
from fractions import Fraction
from math import gcd
from typing import Union

from mpmath import mp, mpf

from .precision import mpf_from_fraction, nstr, to_hpreal
from .special import zeta, zeta_nonpositive_exact, zeta_prime


class StructureKind(IntEnum):
    """The three decomposable structures (ideal-gas statistics)."""

    PARTITION = 1   # products (1 - z^k)^(-b_k)   (Bose-Einstein)
    SELECTION = 2   # products (1 + z^k)^(b_k)    (Fermi-Dirac)
    ASSEMBLY = 3    # exp(sum b_k z^k)            (Maxwell-Boltzmann)

    @property
    def indicator(self) -> int:
        """1 for partitions, 0 otherwise (the log-delta term switch)."""
        return 1 if self is StructureKind.PARTITION else 0

    @property
    def m_const(self) -> mpf:
        """Constant M used by the numeric check of the sin^2 lower-bound condition."""
        if self is StructureKind.PARTITION:
            return 4 / mp.log(5)
        if self is StructureKind.SELECTION:
            return mpf(4)
        return mpf(1)


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"expected exact rational, got {type(x).__name__}: {x!r}")


@dataclass(frozen=True)
class DirichletData:
    """Pole/residue data of D(s) plus its values D(0), D'(0) at the origin.

    `poles` are strictly increasing positive rationals, `residues` the
    matching positive residues (kept as Fractions whenever exact).  `d0`
    is D(0); when it is known as an exact rational it is stored as such,
    because the power-of-n exponent of the final formula is
    -(2 + rho_r - 2 D(0) 1(i)) / (2 (rho_r + 1)) in exact arithmetic.
    `c0` is bookkeeping metadata for the meromorphic-continuation strip
    width (the contour remainder itself is never computed).
    """

    poles: tuple[Fraction, ...]
    residues: tuple[Union[Fraction, mpf], ...]
    d0: Union[Fraction, mpf]
    d0_prime: mpf
    c0: Fraction = field(default=Fraction(1, 2))

    def __post_init__(self):
        if not self.poles:
            raise ValueError("at least one pole is required")
        if len(self.poles) != len(self.residues):
            raise ValueError("poles and residues must have matching lengths")
        if any(p <= 0 for p in self.poles):
            raise ValueError("poles must be positive")
        if any(self.poles[i] >= self.poles[i + 1] for i in range(len(self.poles) - 1)):
            raise ValueError("poles must be strictly increasing")
        if any(not (to_hpreal(a) > 0) for a in self.residues):
            raise ValueError("residues must be positive")
        if not (0 < self.c0 <= 1):
            raise ValueError("c0 must lie in (0, 1]")

    @property
    def rho_r(self) -> Fraction:
        return self.poles[-1]

    @property
    def d0_rational(self) -> Fraction | None:
        return self.d0 if isinstance(self.d0, Fraction) else None

    def d0_real(self) -> mpf:
        return to_hpreal(self.d0)


@dataclass(frozen=True)
class PowerSum:
    """b_k = sum_j a_j k^(r_j - 1); terms as (a_j, r_j) pairs."""

    terms: tuple[tuple[Fraction, Fraction], ...]

    def __post_init__(self):
        terms = tuple((_as_fraction(a), _as_fraction(r)) for a, r in self.terms)
        object.__setattr__(self, "terms", tuple(sorted(terms, key=lambda t: t[1])))
        if not self.terms:
            raise ValueError("PowerSum needs at least one term")
        for a, r in self.terms:
            if a <= 0:
                raise ValueError(f"coefficients must be positive, got {a}")
            if r <= 0:
                raise ValueError(f"exponents must be positive, got {r}")
        exps = [r for _, r in self.terms]
        if len(set(exps)) != len(exps):
            raise ValueError("exponents r_j must be distinct")


@dataclass(frozen=True)
class Binomial:
    """b_k = C(k + l, l) for integer l >= 1."""

    l: int

    def __post_init__(self):
        if not isinstance(self.l, int) or self.l < 1:
            raise ValueError("Binomial parameter l must be an integer >= 1")


@dataclass(frozen=True)
class Tabulated:
    """Explicit weight table with user-supplied Dirichlet data."""

    b: tuple[Fraction, ...]
    dirichlet: DirichletData

    def __post_init__(self):
        b = tuple(_as_fraction(x) for x in self.b)
        object.__setattr__(self, "b", b)
        if any(x < 0 for x in b):
            raise ValueError("weights must be nonnegative")
        if not any(x > 0 for x in b):
            raise ValueError("at least one weight must be positive")


WeightFamily = Union[PowerSum, Binomial, Tabulated]


def normalize_family(family: WeightFamily) -> WeightFamily:
    """Expand Binomial into an explicit PowerSum; pass others through.

    C(k+l, l) = prod_{j=1..l} (k+j) / l! is expanded in powers of k, giving
    integer pole positions 1..l+1.
    """
    if not isinstance(family, Binomial):
        return family
    # polynomial coefficients of prod (k + j), ascending in powers of k
    coeffs = [Fraction(1)]
    for j in range(1, family.l + 1):
        new = [Fraction(0)] * (len(coeffs) + 1)
        for p, c in enumerate(coeffs):
            new[p] += c * j
            new[p + 1] += c
        coeffs = new
    fact = Fraction(1)
    for j in range(2, family.l + 1):
        fact *= j
    terms = tuple((c / fact, Fraction(p + 1)) for p, c in enumerate(coeffs) if c != 0)
    return PowerSum(terms)


def has_exact_weights(family: WeightFamily) -> bool:
    """True when eval_weights can produce exact rationals (integer exponents)."""
    family = normalize_family(family)
    if isinstance(family, Tabulated):
        return True
    return all(r.denominator == 1 for _, r in family.terms)


def eval_weights(family: WeightFamily, nmax: int):
    """Weights b_1..b_nmax as a list indexed 1..nmax (entry 0 is a zero pad).

    PowerSum families with integer exponents and Tabulated families give
    exact Fractions; non-integer exponents force high-precision reals (the
    table is then inexact and refused by the exact counting oracle).
    """
    if nmax < 1:
        raise ValueError("nmax must be >= 1")
    family = normalize_family(family)
    if isinstance(family, Tabulated):
        if len(family.b) < nmax:
            raise ValueError(
                f"tabulated family has {len(family.b)} weights, need {nmax}")
        return [Fraction(0)] + list(family.b[:nmax])
    if has_exact_weights(family):
        # integer arithmetic over a common denominator; plain ints keep
        # million-entry tables compact
        den = 1
        for a, _ in family.terms:
            den = den * a.denominator // gcd(den, a.denominator)
        coeffs = [(a.numerator * (den // a.denominator), int(r) - 1)
                  for a, r in family.terms]
        out: list = [0] * (nmax + 1)
        for k in range(1, nmax + 1):
            val = sum(c * k**p for c, p in coeffs)
            q, rem = divmod(val, den)
            out[k] = q if rem == 0 else Fraction(val, den)
        return out
    out = [mpf(0)] * (nmax + 1)
    for a, r in family.terms:
        am = mpf_from_fraction(a)
        rm = mpf_from_fraction(r - 1)
        for k in range(1, nmax + 1):
            out[k] += am * mpf(k)**rm
    return out


def dirichlet_data(family: WeightFamily, c0: Fraction = Fraction(1, 2)) -> DirichletData:
    """Poles, residues, D(0) and D'(0) of the family's Dirichlet series.

    For b_k = sum a_j k^(r_j-1):  D(s) = sum a_j zeta(s - r_j + 1), so the
    poles are the exponents r_j with residues a_j, D(0) = sum a_j zeta(1-r_j)
    and D'(0) = sum a_j zeta'(1-r_j).  D(0) stays an exact rational whenever
    all exponents are integers (Bernoulli values).
    """
    family = normalize_family(family)
    if isinstance(family, Tabulated):
        return family.dirichlet
    terms = family.terms  # sorted by exponent
    poles = tuple(r for _, r in terms)
    residues = tuple(a for a, _ in terms)
    if all(r.denominator == 1 for r in poles):
        d0 = sum((a * zeta_nonpositive_exact(int(r) - 1) for a, r in terms),
                 Fraction(0))
    else:
        d0 = mpf(0)
        for a, r in terms:
            d0 += mpf_from_fraction(a) * zeta(mpf(1) - mpf_from_fraction(r))
    d0p = mpf(0)
    for a, r in terms:
        d0p += mpf_from_fraction(a) * zeta_prime(mpf(1) - mpf_from_fraction(r))
    return DirichletData(poles=poles, residues=residues, d0=d0, d0_prime=d0p, c0=c0)


# ---------------------------------------------------------------------------
# family document format (the CLI's canonical text form)
# ---------------------------------------------------------------------------

def _frac_str(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def family_from_json(text: str) -> WeightFamily:
    """Parse the canonical family document.

    Forms:
      {"type":"power","terms":[{"a":"1/2","r":"3"}, ...]}
      {"type":"binomial","l":2}
      {"type":"tabulated","b":["1","0","2"],
       "dirichlet":{"poles":["1"],"residues":["1"],"d0":"-0.5",
                    "d0_prime":"-0.91893853","c0":"0.5"}}
    Rationals are "p/q" or integer strings; decimal strings are accepted and
    read exactly.
    """
    doc = json.loads(text)
    ftype = doc.get("type")
    if ftype == "power":
        terms = tuple((_as_fraction(t["a"]), _as_fraction(t["r"]))
                      for t in doc["terms"])
        return PowerSum(terms)
    if ftype == "binomial":
        return Binomial(int(doc["l"]))
    if ftype == "tabulated":
        dd = doc["dirichlet"]
        data = DirichletData(
            poles=tuple(_as_fraction(p) for p in dd["poles"]),
            residues=tuple(_as_fraction(a) for a in dd["residues"]),
            d0=_as_fraction(dd["d0"]),
            d0_prime=mpf_from_fraction(_as_fraction(dd["d0_prime"])),
            c0=_as_fraction(dd.get("c0", "1/2")),
        )
        return Tabulated(tuple(_as_fraction(x) for x in doc["b"]), data)
    raise ValueError(f"unknown family type: {ftype!r}")


def family_to_json(family: WeightFamily) -> str:
    if isinstance(family, PowerSum):
        return json.dumps({
            "type": "power",
            "terms": [{"a": _frac_str(a), "r": _frac_str(r)} for a, r in family.terms],
        })
    if isinstance(family, Binomial):
        return json.dumps({"type": "binomial", "l": family.l})
    if isinstance(family, Tabulated):
        dd = family.dirichlet
        d0 = dd.d0_rational
        return json.dumps({
            "type": "tabulated",
            "b": [_frac_str(x) for x in family.b],
            "dirichlet": {
                "poles": [_frac_str(p) for p in dd.poles],
                "residues": [_frac_str(a) if isinstance(a, Fraction) else nstr(a)
                             for a in dd.residues],
                "d0": _frac_str(d0) if d0 is not None else nstr(dd.d0),
                "d0_prime": nstr(dd.d0_prime),
                "c0": _frac_str(dd.c0),
            },
        })
    raise TypeError(f"not a weight family: {family!r}")
