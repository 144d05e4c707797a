#!/usr/bin/env python3
# The saddle point delta_n: numeric solution vs symbolic expansion.
#
# delta_n solves E U_n = n, a strictly decreasing O(n)-term equation; the
# expansion expresses it as lead * n^(-1/(rho_r+1)) plus correction powers
# indexed by the pole-gap exponent sets.  The difference times n goes to 0.

import mpmath
from mpmath import mp

from partasym import (Binomial, StructureKind, delta_expansion, dirichlet_data,
                      eval_weights, normalize_family, solve_delta)

family = normalize_family(Binomial(1))   # b_k = k+1, poles at 1 and 2
kind = StructureKind.PARTITION
dd = dirichlet_data(family)
dexp = delta_expansion(kind, dd)

print("expansion: delta_n = lead * n^(-1/3) + sum K n^(-(1+lambda)/3)")
print(f"  lead = {mpmath.nstr(dexp.lead, 12)}")
for lam, K in dexp.terms:
    print(f"  lambda = {lam}:  K = {mpmath.nstr(K, 12)}")
print()

ns = [10**3, 10**4, 10**5]
b = eval_weights(family, max(ns))
e = 1 / (float(dd.rho_r) + 1)
print(f"{'n':>8s} {'delta_num':>22s} {'delta_exp':>22s} {'n|diff|':>12s}")
for n in ns:
    sp = solve_delta(kind, b, n, delta_hint=float(dexp.lead) * n**(-e))
    de = dexp.evaluate(n)
    print(f"{n:>8d} {mpmath.nstr(sp.delta, 16):>22s} {mpmath.nstr(de, 16):>22s}"
          f" {mpmath.nstr(n * abs(sp.delta - de), 4):>12s}")

print()
print("variance of U_n scales like K2 * delta^(-rho_r-2):")
sp = solve_delta(kind, b, 10**5, delta_hint=float(dexp.lead) * (10**5)**(-e))
K2 = mp.gamma(4) * mp.zeta(3)   # A_r Gamma(rho_r+2) zeta(rho_r+1), rho_r = 2
print(f"  B^2 * delta^4 = {mpmath.nstr(sp.B2 * sp.delta**4, 10)}"
      f"   vs K2 = {mpmath.nstr(K2, 10)}")
