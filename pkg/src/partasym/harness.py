"""Comparison tables and diagnostics: the user-facing computations.

`compare_table` lines up, per n: the exact count, the asymptotic-formula
value, their ratio, the numeric and expansion saddle points, and the
local-limit ratio P(U_n = n) sqrt(2 pi B_n^2) (which tends to 1).
`belief_table` runs the rightmost-pole experiment: the full formula against
the formula of the one-pole model, against exact counts.
`condition3_check` numerically probes the sin^2 lower-bound hypothesis on a
(delta, alpha) grid; it reports margins and never gates anything.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np
from mpmath import mp, mpf

from .exact import CountTable, exact_counts, _count_str
from .expansion import (AsymptoticFormula, DeltaExpansion, asymptotic_formula,
                        delta_expansion, single_pole_formula, evaluate_formula)
from .precision import mpf_from_fraction, nstr
from .saddle import llt_probability_exact, solve_delta
from .weights import (StructureKind, WeightFamily, dirichlet_data, eval_weights,
                      has_exact_weights, normalize_family)


def parse_ngrid(spec: str) -> tuple[int, ...]:
    """Parse an n-grid: 'start:stop:geometric:count', a comma list, or one int."""
    spec = spec.strip()
    if ":" in spec:
        parts = spec.split(":")
        if len(parts) != 4 or parts[2] != "geometric":
            raise ValueError(
                f"grid spec must be start:stop:geometric:count, got {spec!r}")
        start, stop, count = int(parts[0]), int(parts[1]), int(parts[3])
        if start < 1 or stop < start or count < 1:
            raise ValueError(f"bad geometric grid {spec!r}")
        if count == 1:
            return (start,)
        ratio = (stop / start) ** (1 / (count - 1))
        ns = sorted({round(start * ratio**i) for i in range(count)})
        return tuple(ns)
    return tuple(sorted({int(tok) for tok in spec.split(",") if tok.strip()}))


@dataclass
class RunConfig:
    """One experiment: a family, a structure kind, an n-grid and output options."""

    family: WeightFamily
    kind: StructureKind
    ns: tuple[int, ...]
    precision: int = 60
    tol: Optional[mpf] = None
    fmt: str = "csv"
    out: Optional[str] = None

    def __post_init__(self):
        self.kind = StructureKind(self.kind)
        self.ns = tuple(self.ns)
        if not self.ns:
            raise ValueError("n-grid must be nonempty")
        if any(self.ns[i] >= self.ns[i + 1] for i in range(len(self.ns) - 1)):
            raise ValueError("n-grid must be strictly ascending")
        if any(n < 0 for n in self.ns):
            raise ValueError("n must be >= 0")
        if self.fmt not in ("csv", "json"):
            raise ValueError(f"format must be csv or json, got {self.fmt!r}")


@dataclass(frozen=True)
class CompareRow:
    n: int
    c_exact: Optional[Fraction]
    c_asym: Optional[mpf]
    ratio: Optional[mpf]
    log_ratio: Optional[mpf]
    delta_num: Optional[mpf]
    delta_exp: Optional[mpf]
    llt_ratio: Optional[mpf]


@dataclass(frozen=True)
class FamilyContext:
    """Shared per-family data: weights to max n, formula, expansions."""

    kind: StructureKind
    b: list
    exact: bool
    counts: Optional[CountTable]
    formula: AsymptoticFormula
    dexp: DeltaExpansion
    lead_scale: mpf
    rho_r: Fraction


def _prepare(cfg: RunConfig, need_counts: bool = True) -> FamilyContext:
    family = normalize_family(cfg.family)
    kind = cfg.kind
    dd = dirichlet_data(family)
    nmax = max(cfg.ns)
    b = eval_weights(family, max(nmax, 1))
    exact = has_exact_weights(family)
    counts = exact_counts(kind, b, nmax) if (exact and need_counts) else None
    form = asymptotic_formula(kind, dd)
    dexp = delta_expansion(kind, dd)
    return FamilyContext(kind=kind, b=b, exact=exact, counts=counts,
                         formula=form, dexp=dexp, lead_scale=dexp.lead,
                         rho_r=dd.rho_r)


def _hint(ctx: FamilyContext, n: int) -> float:
    e = 1 / (float(ctx.rho_r) + 1)
    return float(ctx.lead_scale) * n**(-e)


def compare_table(cfg: RunConfig) -> list[CompareRow]:
    """One CompareRow per n; exact columns appear only for rational families."""
    ctx = _prepare(cfg)
    rows = []
    for n in cfg.ns:
        if n == 0:
            rows.append(CompareRow(0, Fraction(1), None, None, None,
                                   None, None, None))
            continue
        sp = solve_delta(cfg.kind, ctx.b, n, tol=cfg.tol, delta_hint=_hint(ctx, n))
        c_asym = evaluate_formula(ctx.formula, n)
        d_exp = ctx.dexp.evaluate(n)
        if ctx.counts is not None:
            c_ex = ctx.counts[n]
            c_ex_m = mpf_from_fraction(c_ex)
            ratio = c_ex_m / c_asym
            log_ratio = mp.log(ratio)
            llt = llt_probability_exact(cfg.kind, ctx.b, n, ctx.counts, sp) \
                * mp.sqrt(2 * mp.pi * sp.B2)
        else:
            c_ex = ratio = log_ratio = llt = None
        rows.append(CompareRow(n=n, c_exact=c_ex, c_asym=c_asym, ratio=ratio,
                               log_ratio=log_ratio, delta_num=sp.delta,
                               delta_exp=d_exp, llt_ratio=llt))
    return rows


@dataclass(frozen=True)
class BeliefRow:
    n: int
    c_exact: Optional[Fraction]
    c_full: mpf
    c_single: mpf
    ratio_exact_to_single: Optional[mpf]
    log_gap: Optional[mpf]        # log c_exact - log c_single
    log_gap_predicted: mpf        # log c_full - log c_single
    log_equivalence: Optional[mpf]  # log c_exact / log c_single


def belief_table(cfg: RunConfig) -> list[BeliefRow]:
    """Full-formula vs rightmost-pole-only evaluation against exact counts."""
    family = normalize_family(cfg.family)
    dd = dirichlet_data(family)
    full = asymptotic_formula(cfg.kind, dd)
    single = single_pole_formula(cfg.kind, dd)
    nmax = max(cfg.ns)
    exact = has_exact_weights(family)
    counts = None
    if exact:
        b = eval_weights(family, max(nmax, 1))
        counts = exact_counts(cfg.kind, b, nmax)
    rows = []
    for n in cfg.ns:
        if n == 0:
            continue
        cf = evaluate_formula(full, n)
        cs = evaluate_formula(single, n)
        pred = mp.log(cf) - mp.log(cs)
        if counts is not None:
            ce = counts[n]
            ce_m = mpf_from_fraction(ce)
            rows.append(BeliefRow(n, ce, cf, cs, ce_m / cs,
                                  mp.log(ce_m) - mp.log(cs), pred,
                                  mp.log(ce_m) / mp.log(cs)))
        else:
            rows.append(BeliefRow(n, None, cf, cs, None, None, pred, None))
    return rows


@dataclass(frozen=True)
class Cond3Row:
    delta: float
    alpha: float
    lhs: float
    rhs: float
    margin: float


@dataclass(frozen=True)
class Cond3Report:
    rows: tuple[Cond3Row, ...]
    min_margin: float
    passed: bool


def condition3_check(family: WeightFamily, kind: StructureKind,
                     deltas: Sequence[float], alphas: Sequence[float],
                     K: int, eps: float) -> Cond3Report:
    """Margins of 2 sum b_k e^(-k delta) sin^2(pi k alpha) over the bound.

    The bound is (1 + rho_r/2 + eps) * M * |log delta| with M the
    kind-specific constant.  Pairs must satisfy sqrt(delta) <= |alpha| <= 1/2;
    alphas outside [−1/2, 1/2] \\ {0} are rejected, pairs below sqrt(delta)
    are skipped, and every delta must keep at least one valid alpha.
    """
    kind = StructureKind(kind)
    family = normalize_family(family)
    dd = dirichlet_data(family)
    if K < 1:
        raise ValueError("K must be >= 1")
    for a in alphas:
        if not 0 < abs(a) <= 0.5:
            raise ValueError(f"alpha must satisfy 0 < |alpha| <= 1/2, got {a}")
    b = np.array([float(x) for x in eval_weights(family, K)[1:]], dtype=np.float64)
    k = np.arange(1, K + 1, dtype=np.float64)
    rho_r = float(dd.rho_r)
    m_const = float(kind.m_const)
    rows = []
    for d in deltas:
        if not 0 < d < 1:
            raise ValueError(f"delta must lie in (0, 1), got {d}")
        valid = [a for a in alphas if abs(a) >= np.sqrt(d)]
        if not valid:
            raise ValueError(
                f"no alpha in the grid satisfies sqrt({d}) <= |alpha| <= 1/2")
        decay = np.exp(-k * d)
        rhs = (1 + rho_r / 2 + eps) * m_const * abs(np.log(d))
        for a in valid:
            lhs = 2.0 * float(np.sum(b * decay * np.sin(np.pi * k * a)**2))
            rows.append(Cond3Row(delta=float(d), alpha=float(a), lhs=lhs,
                                 rhs=float(rhs), margin=lhs - float(rhs)))
    min_margin = min(r.margin for r in rows)
    return Cond3Report(rows=tuple(rows), min_margin=min_margin,
                       passed=min_margin > 0)


# ---------------------------------------------------------------------------
# rendering
# ---------------------------------------------------------------------------

def _cell(x) -> str:
    if x is None:
        return ""
    if isinstance(x, Fraction):
        return _count_str(x)
    if isinstance(x, (int, np.integer)):
        return str(x)
    if isinstance(x, float):
        return repr(x)
    return nstr(x)


def rows_to_csv(rows: Sequence, columns: Sequence[str]) -> str:
    lines = [",".join(columns)]
    for r in rows:
        lines.append(",".join(_cell(getattr(r, c)) for c in columns))
    return "\n".join(lines) + "\n"


def rows_to_json(rows: Sequence, columns: Sequence[str]) -> str:
    import json
    payload = [{c: _cell(getattr(r, c)) for c in columns} for r in rows]
    return json.dumps(payload, indent=2)


COMPARE_COLUMNS = ("n", "c_exact", "c_asym", "ratio", "log_ratio",
                   "delta_num", "delta_exp", "llt_ratio")
BELIEF_COLUMNS = ("n", "c_exact", "c_full", "c_single",
                  "ratio_exact_to_single", "log_gap", "log_gap_predicted",
                  "log_equivalence")
COND3_COLUMNS = ("delta", "alpha", "lhs", "rhs", "margin")
