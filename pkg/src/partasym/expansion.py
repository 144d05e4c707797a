"""Multi-pole saddle-point expansion and assembly of the count asymptotics.

Pipeline, for Dirichlet data with poles 0 < rho_1 < ... < rho_r (rho_0 = 0
adjoined) and the constants h_l, hhat_l = rho_l h_l:

1. Exponent bookkeeping.  With gaps g_k = rho_r - rho_k, the correction
   powers that survive above o(1/n) are indexed by two finite exponent sets:
   sums of at least two gaps clipped to (0, rho_r + 1], and the gaps
   themselves.

2. Functional ansatz.  In the variable z = n^(-1/(rho_r+1)) the scaled
   mean equation is solved by a series with one monomial per pole gap plus
   a matched part supported on the gap-sum exponents, whose coefficients
   are fixed one exponent at a time: each new coefficient depends only on
   the previously determined ones, so the recursion closes.

3. Saddle expansion.  delta_n = lead * z * (1 + ansatz/hhat_r)^(1/(rho_r+1))
   expanded binomially and read off in powers of n.  Terms are retained down
   to z-exponent rho_r + 2 on delta itself, i.e. every correction power the
   exponent sets supply (the error of the construction is o(1/n)).

4. Assembly.  n delta_n, the expansion of log f_n(e^-delta_n) through the
   (delta_n)^(-rho_l) binomials, and the local-limit prefactor
   (2 pi K2)^(-1/2) delta^(1+rho_r/2) combine into
       c_n ~ H n^(-(2+rho_r-2 D(0) 1(i))/(2(rho_r+1))) exp(sum coeff * n^power).
   Contributions at n^0 fold multiplicatively into H; log n terms fold into
   the power of n, which stays an exact rational.

For equidistant poles rho_l = l a there is an independent route: the
expansion coefficients psi_s solve a triangular recursion obtained by
matching powers z^(a s) directly, which the tests compare against route 3.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from mpmath import mp, mpf

from .precision import mpf_from_fraction, nstr, to_hpreal
from .series import GenSeries, series_binpow
from .special import gamma, zeta, zeta_nonpositive_exact, zeta_prime
from .weights import DirichletData, StructureKind


@dataclass(frozen=True)
class UpsilonSets:
    """The two finite exponent sets driving the correction powers.

    `alphas`: sums of >= 2 pole gaps, clipped to (0, rho_r + 1] (the
    exponents carried by the matched part of the saddle ansatz).
    `lambdas`: alphas together with the gaps rho_r - rho_k themselves.
    """

    alphas: tuple[Fraction, ...]
    lambdas: tuple[Fraction, ...]


def upsilon_sets(poles) -> UpsilonSets:
    poles = [Fraction(p) for p in poles]
    if any(p <= 0 for p in poles) or any(
            poles[i] >= poles[i + 1] for i in range(len(poles) - 1)):
        raise ValueError("poles must be strictly increasing and positive")
    rho_r = poles[-1]
    gaps = [rho_r - p for p in [Fraction(0)] + poles[:-1]]  # k = 0 .. r-1
    limit = rho_r + 1
    alphas: set[Fraction] = set()

    def descend(i: int, total: Fraction, count: int):
        if i == len(gaps):
            if count >= 2:
                alphas.add(total)
            return
        g = gaps[i]
        d = 0
        while total + d * g <= limit:
            descend(i + 1, total + d * g, count + d)
            d += 1

    descend(0, Fraction(0), 0)
    alphas.discard(Fraction(0))
    lambdas = sorted(alphas | set(gaps))
    return UpsilonSets(alphas=tuple(sorted(alphas)), lambdas=tuple(lambdas))


@dataclass(frozen=True)
class HConstants:
    """h_0..h_r and hhat_0..hhat_r for one structure kind.

    For l >= 1:  h_l is A_l Gamma(rho_l) zeta(rho_l+1) (partitions), with the
    factor (1 - 2^-rho_l) inserted for selections and the zeta factor dropped
    for assemblies; hhat_l = rho_l h_l.  At l = 0: h_0 is D'(0), D(0) log 2,
    D(0) respectively, and hhat_0 is D(0) for partitions, else 0.
    """

    kind: StructureKind
    h: tuple[mpf, ...]
    hhat: tuple[mpf, ...]


def h_constants(kind: StructureKind, dd: DirichletData) -> HConstants:
    kind = StructureKind(kind)
    h = [mpf(0)]
    hhat = [mpf(0)]
    for rho, res in zip(dd.poles, dd.residues):
        rho_m = mpf_from_fraction(rho)
        a_m = to_hpreal(res)
        if kind is StructureKind.PARTITION:
            hl = a_m * gamma(rho_m) * zeta(rho_m + 1)
        elif kind is StructureKind.SELECTION:
            hl = a_m * gamma(rho_m) * (1 - mpf(2)**(-rho_m)) * zeta(rho_m + 1)
        else:
            hl = a_m * gamma(rho_m)
        h.append(hl)
        hhat.append(rho_m * hl)
    d0 = dd.d0_real()
    if kind is StructureKind.PARTITION:
        h[0] = dd.d0_prime
        hhat[0] = d0
    elif kind is StructureKind.SELECTION:
        h[0] = d0 * mp.log(2)
        hhat[0] = mpf(0)
    else:
        h[0] = d0
        hhat[0] = mpf(0)
    return HConstants(kind=kind, h=tuple(h), hhat=tuple(hhat))


def q_expansion(kind: StructureKind, dd: DirichletData,
                sets: UpsilonSets | None = None,
                hc: HConstants | None = None) -> GenSeries:
    """The matched ansatz for the (rho_r+1)-th power of the scaled saddle root.

    The returned series is hhat_r plus one monomial per pole gap plus the
    matched part: its coefficients are determined in ascending exponent
    order by extracting, per gap, the matching coefficient of the growth of
    the fractional powers of the ansatz itself, each extraction only
    involving coefficients fixed earlier.  Substituting the result back
    into the scaled mean equation annihilates every coefficient up to the
    truncation (the test suite asserts the residual).
    """
    if sets is None:
        sets = upsilon_sets(dd.poles)
    if hc is None:
        hc = h_constants(kind, dd)
    poles0 = [Fraction(0)] + list(dd.poles[:-1])
    rho_r = dd.rho_r
    trunc = rho_r + 1
    rr_m = mpf_from_fraction(rho_r)
    hhat_r = hc.hhat[-1]
    q0 = hhat_r**(1 / (rr_m + 1))

    gap_part = GenSeries({}, trunc)
    gap_pow = []
    for k, rho_k in enumerate(poles0):
        g = rho_r - rho_k
        g_m = mpf_from_fraction(g)
        gap_pow.append((g, g_m, hc.hhat[k] * q0**g_m))
        gap_part = gap_part + GenSeries.monomial(hc.hhat[k] * q0**g_m, g, trunc)

    matched = GenSeries({}, trunc)
    for alpha in sets.alphas:
        u = (gap_part + matched).scale(1 / hhat_r)
        rhs = GenSeries({}, trunc)
        for g, g_m, hk_q0g in gap_pow:
            grown = series_binpow(u, g_m / (rr_m + 1)).drop_constant()
            rhs = rhs + grown.shift(g).scale(hk_q0g)
        matched = matched + GenSeries.monomial(rhs.coeff(alpha), alpha, trunc)
    return GenSeries.constant(hhat_r, trunc) + gap_part + matched


@dataclass(frozen=True)
class DeltaExpansion:
    """delta_n = lead n^(-1/(rho_r+1)) + sum_s K_s n^(-(1+lambda_s)/(rho_r+1)).

    Terms are kept for every correction exponent lambda_s <= rho_r + 1 that
    the construction determines; the remaining error is o(1/n).
    """

    kind: StructureKind
    rho_r: Fraction
    lead: mpf
    terms: tuple[tuple[Fraction, mpf], ...]  # (lambda_s, K_s), ascending

    def evaluate(self, n: int) -> mpf:
        den = self.rho_r + 1
        nm = mpf(n)
        out = self.lead * nm**(-mpf_from_fraction(Fraction(1, 1) / den))
        for lam, K in self.terms:
            out += K * nm**(-mpf_from_fraction((1 + lam) / den))
        return out


def _delta_series(kind, dd, hc):
    """lead and the unit series w(z) with delta = lead * z * w(z), w(0) = 1."""
    S = q_expansion(kind, dd, hc=hc)
    rho_r = dd.rho_r
    rr_m = mpf_from_fraction(rho_r)
    hhat_r = hc.hhat[-1]
    u = (S - GenSeries.constant(hhat_r, S.truncation)).scale(1 / hhat_r)
    w = series_binpow(u, 1 / (rr_m + 1))
    lead = hhat_r**(1 / (rr_m + 1))
    return lead, w


def delta_expansion(kind: StructureKind, dd: DirichletData) -> DeltaExpansion:
    """Correction coefficients of the saddle point, from the matched ansatz."""
    kind = StructureKind(kind)
    hc = h_constants(kind, dd)
    lead, w = _delta_series(kind, dd, hc)
    terms = tuple((e, lead * c) for e, c in w.terms.items() if e != 0)
    return DeltaExpansion(kind=kind, rho_r=dd.rho_r, lead=lead, terms=terms)


def equidistant_psi(kind: StructureKind, dd: DirichletData) -> DeltaExpansion:
    """Independent route for poles in arithmetic progression rho_l = l a.

    Writing delta_n = hhat_r^(1/(ar+1)) sum_l psi_l z^(a l + 1) with
    psi_0 = 1, matching the coefficient of z^(a s) in the scaled mean
    equation pins psi_s via a triangular linear step: the nonlinear part at
    z^(a s) involves psi_1..psi_{s-1} only.
    """
    kind = StructureKind(kind)
    poles = dd.poles
    a = poles[0]
    r = len(poles)
    if any(poles[l] != (l + 1) * a for l in range(r)):
        raise ValueError("poles must form an arithmetic progression l*a")
    hc = h_constants(kind, dd)
    hhat = hc.hhat
    rho_r = dd.rho_r
    trunc = rho_r + 1
    rr_m = mpf_from_fraction(rho_r)
    a_m = mpf_from_fraction(a)
    lead = hhat[-1]**(1 / (rr_m + 1))

    smax = r + int(Fraction(1) / a)  # largest s with a*s <= a*r + 1
    psi: list[mpf] = [mpf(1)]
    for s in range(1, smax + 1):
        T = GenSeries({Fraction(l) * a: psi[l] for l in range(len(psi))}, trunc)
        Tm1 = T.drop_constant()
        E = series_binpow(Tm1, rr_m + 1).scale(hhat[-1])
        for k in range(r + 1):
            g = rho_r - Fraction(k) * a          # rho_r - rho_k, rho_0 = 0 at k=0
            g_m = mpf_from_fraction(g)
            piece = series_binpow(Tm1, g_m).shift(g).scale(hhat[k] * lead**g_m)
            E = E - piece
        psi.append(-E.coeff(Fraction(s) * a) / ((rr_m + 1) * hhat[-1]))
    terms = tuple((Fraction(l) * a, lead * psi[l])
                  for l in range(1, len(psi)) if abs(psi[l]) > 0)
    return DeltaExpansion(kind=kind, rho_r=rho_r, lead=lead, terms=terms)


@dataclass(frozen=True)
class AsymptoticFormula:
    """c_n ~ H n^n_exponent exp(sum coeff n^power), with the LLT variance K2.

    `exp_terms` holds every surviving positive power (saddle and
    log-generating-function contributions merged by power, descending);
    constants are already folded into H and log n terms into n_exponent.
    """

    kind: StructureKind
    H: mpf
    n_exponent: Fraction
    exp_terms: tuple[tuple[Fraction, mpf], ...]
    K2: mpf

    def top_coefficient(self) -> mpf:
        return self.exp_terms[0][1]

    def to_doc(self) -> dict:
        return {
            "H": nstr(self.H),
            "n_exponent": (str(self.n_exponent.numerator)
                           if self.n_exponent.denominator == 1
                           else f"{self.n_exponent.numerator}/{self.n_exponent.denominator}"),
            "exp_terms": [
                {"power": f"{p.numerator}/{p.denominator}", "coeff": nstr(c)}
                for p, c in self.exp_terms
            ],
            "K2": nstr(self.K2),
            "note": ("exp_terms merge the saddle and log-generating-function "
                     "contributions at equal powers of n"),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_doc(), indent=2)


def _k2_constant(kind: StructureKind, dd: DirichletData) -> mpf:
    rho_m = mpf_from_fraction(dd.rho_r)
    a_m = to_hpreal(dd.residues[-1])
    if kind is StructureKind.PARTITION:
        return a_m * gamma(rho_m + 2) * zeta(rho_m + 1)
    if kind is StructureKind.SELECTION:
        return a_m * (1 - mpf(2)**(-rho_m)) * gamma(rho_m + 2) * zeta(rho_m + 1)
    return a_m * gamma(rho_m + 2)


def asymptotic_formula(kind: StructureKind, dd: DirichletData) -> AsymptoticFormula:
    """Assemble H, the n-exponent and the exponential terms for this family."""
    kind = StructureKind(kind)
    if kind is StructureKind.PARTITION and dd.d0_rational is None:
        raise ValueError(
            "the partition n-exponent needs D(0) as an exact rational; "
            "supply rational Dirichlet data (integer pole positions do)")
    hc = h_constants(kind, dd)
    lead, w = _delta_series(kind, dd, hc)
    rho_r = dd.rho_r
    den = rho_r + 1
    rr_m = mpf_from_fraction(rho_r)
    hhat_r = hc.hhat[-1]

    exp_terms: dict[Fraction, mpf] = {}
    log_h = mpf(0)

    def add(power: Fraction, coeff: mpf):
        nonlocal log_h
        if power == 0:
            log_h += coeff
        elif power > 0:
            exp_terms[power] = exp_terms.get(power, mpf(0)) + coeff

    # saddle part: n * delta_n
    add(rho_r / den, lead)
    for lam, c in w.terms.items():
        if lam == 0 or lam > rho_r:
            continue
        add((rho_r - lam) / den, lead * c)

    # log f_n part: sum_l h_l delta^(-rho_l) plus the log-delta term for kind 1
    wt = w.drop_constant()
    for l, rho_l in enumerate(dd.poles, start=1):
        rho_m = mpf_from_fraction(rho_l)
        base = hc.h[l] * lead**(-rho_m)
        add(rho_l / den, base)
        g = series_binpow(wt, -rho_m)
        for lam, c in g.terms.items():
            if lam == 0 or lam > rho_l:
                continue
            add((rho_l - lam) / den, base * c)
    log_h += hc.h[0]

    n_exponent = -Fraction(2 + rho_r, 1) / (2 * den)
    if kind is StructureKind.PARTITION:
        d0_frac = dd.d0_rational
        n_exponent += d0_frac / den
        log_h -= dd.d0_real() / (rr_m + 1) * mp.log(hhat_r)

    K2 = _k2_constant(kind, dd)
    H = mp.exp(log_h) / mp.sqrt(2 * mp.pi * K2) \
        * hhat_r**((2 + rr_m) / (2 * (rr_m + 1)))

    if exp_terms:
        top = max(abs(c) for c in exp_terms.values())
        kept = tuple(sorted(((p, c) for p, c in exp_terms.items()
                             if abs(c) > top * mpf(10)**-40),
                            key=lambda t: t[0], reverse=True))
    else:
        kept = ()
    return AsymptoticFormula(kind=kind, H=H, n_exponent=n_exponent,
                             exp_terms=kept, K2=K2)


def single_pole_formula(kind: StructureKind, dd: DirichletData,
                        d0=None, d0_prime=None) -> AsymptoticFormula:
    """The formula a rightmost-pole-only model would give.

    The truncated data keeps only (rho_r, A_r); unless overridden, D(0) and
    D'(0) are recomputed as those of the one-term power family
    b_k = A_r k^(rho_r - 1), which is the model the rightmost-pole heuristic
    actually describes.  Comparing this against the full formula (and against
    exact counts) exhibits how much the discarded poles contribute.
    """
    kind = StructureKind(kind)
    rho_r = dd.rho_r
    a_r = dd.residues[-1]
    if d0 is None:
        if rho_r.denominator == 1 and isinstance(a_r, Fraction):
            d0 = a_r * zeta_nonpositive_exact(int(rho_r) - 1)
        else:
            d0 = to_hpreal(a_r) * zeta(1 - mpf_from_fraction(rho_r))
    if d0_prime is None:
        d0_prime = to_hpreal(a_r) * zeta_prime(1 - mpf_from_fraction(rho_r))
    single = DirichletData(poles=(rho_r,), residues=(a_r,),
                           d0=d0, d0_prime=d0_prime, c0=dd.c0)
    return asymptotic_formula(kind, single)


def evaluate_formula(f: AsymptoticFormula, n: int) -> mpf:
    """H * n^n_exponent * exp(sum coeff * n^power)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    nm = mpf(n)
    s = mpf(0)
    for p, c in f.exp_terms:
        s += c * nm**mpf_from_fraction(p)
    return f.H * nm**mpf_from_fraction(f.n_exponent) * mp.exp(s)
