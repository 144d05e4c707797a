#!/usr/bin/env python3
# Exact counting of the three decomposable structures over one weight
# sequence, by two independent algorithms.
#
# Weighted partitions multiply factors (1-z^k)^(-b_k), selections multiply
# (1+z^k)^(b_k), assemblies exponentiate sum b_k z^k.  The production path
# is the Euler-type convolution recurrence n c_n = sum Lambda_m c_{n-m};
# the cross-check multiplies the truncated factor polynomials directly.

from fractions import Fraction

from partasym import (Binomial, StructureKind, eval_weights, exact_counts,
                      normalize_family, product_counts)

family = Binomial(1)            # b_k = k + 1
N = 30
b = eval_weights(normalize_family(family), N)

print(f"weights b_1..b_8: {[int(x) for x in b[1:9]]}")
print()

for kind in StructureKind:
    rec = exact_counts(kind, b, N)
    prod = product_counts(kind, b, N)
    assert rec.counts == prod.counts, "the two algorithms must agree exactly"
    head = ", ".join(str(c) for c in rec.counts[:9])
    print(f"{kind.name.lower():10s} c_0..c_8 = {head}")

print()
print("Selections embed into partitions, so their counts never exceed them:")
p = exact_counts(StructureKind.PARTITION, b, N)
s = exact_counts(StructureKind.SELECTION, b, N)
print(f"  c_30(selection)/c_30(partition) = {s[30]}/{p[30]}"
      f" = {float(Fraction(s[30], p[30])):.4f}")

# assemblies carry rational counts; the CSV serializer keeps them exact
ones = [Fraction(1)] * (N + 1)
asm = exact_counts(StructureKind.ASSEMBLY, ones, 5)
print()
print("assembly counts are exact rationals (b = 1):")
print(asm.to_csv())
