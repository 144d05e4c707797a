"""Exact counting and multi-pole saddle-point asymptotics for weighted
partitions, selections and assemblies.

The library computes, for a weight sequence b_k with a Dirichlet generating
function having r >= 1 simple positive poles:

* exact counts c_0..c_N (two independent algorithms over exact rationals),
* the numeric saddle point delta_n with variance and third-cumulant data,
* the symbolic expansion of delta_n in correction powers of n,
* the full asymptotic formula
  c_n ~ H n^q exp(sum_j coeff_j n^(p_j)),
* tables cross-validating all of the above against each other.
"""

from .precision import (HPReal, extra_precision, set_working_precision,
                        working_dps)
from .special import gamma, zeta, zeta_prime
from .weights import (Binomial, DirichletData, PowerSum, StructureKind,
                      Tabulated, WeightFamily, dirichlet_data, eval_weights,
                      family_from_json, family_to_json, has_exact_weights,
                      normalize_family)
from .exact import CountTable, exact_counts, lambda_weights, product_counts
from .series import GenSeries, series_binpow, series_coeff, series_mul
from .saddle import (NoSolutionError, SaddlePoint, llt_probability_exact,
                     mean_constraint, solve_delta)
from .expansion import (AsymptoticFormula, DeltaExpansion, HConstants,
                        UpsilonSets, asymptotic_formula, delta_expansion,
                        equidistant_psi, evaluate_formula, h_constants,
                        q_expansion, single_pole_formula, upsilon_sets)
from .harness import (CompareRow, Cond3Report, RunConfig, belief_table,
                      compare_table, condition3_check, parse_ngrid)

__version__ = "0.1.0"

__all__ = [
    "HPReal", "set_working_precision", "working_dps", "extra_precision",
    "gamma", "zeta", "zeta_prime",
    "StructureKind", "PowerSum", "Binomial", "Tabulated", "WeightFamily",
    "DirichletData", "normalize_family", "eval_weights", "dirichlet_data",
    "has_exact_weights", "family_from_json", "family_to_json",
    "CountTable", "lambda_weights", "exact_counts", "product_counts",
    "GenSeries", "series_mul", "series_binpow", "series_coeff",
    "SaddlePoint", "NoSolutionError", "mean_constraint", "solve_delta",
    "llt_probability_exact",
    "UpsilonSets", "HConstants", "DeltaExpansion", "AsymptoticFormula",
    "upsilon_sets", "h_constants", "q_expansion", "delta_expansion",
    "equidistant_psi", "asymptotic_formula", "single_pole_formula",
    "evaluate_formula",
    "RunConfig", "CompareRow", "Cond3Report", "compare_table", "belief_table",
    "condition3_check", "parse_ngrid",
]
