"""Exact counting: recurrence vs product expansion vs direct enumeration."""

from fractions import Fraction

import pytest
from mpmath import mpf

from partasym import (StructureKind, eval_weights, exact_counts, lambda_weights,
                      normalize_family, product_counts)
from conftest import ALL_KINDS, STD_FAMILIES

from oracles import brute_force_counts, pentagonal_partition_counts

F = Fraction
ONES = [F(1)] * 401


class TestLambdaWeights:
    def test_partition_divisor_sum(self):
        lam = lambda_weights(StructureKind.PARTITION, ONES, 6)
        assert lam[6] == 12  # sigma(6)
        assert lam[1:] == [1, 3, 4, 7, 6, 12]

    def test_selection_signed_divisor_sum(self):
        lam = lambda_weights(StructureKind.SELECTION, ONES, 6)
        assert lam[6] == -1 + 2 - 3 + 6

    def test_assembly(self):
        lam = lambda_weights(StructureKind.ASSEMBLY, ONES, 6)
        assert lam[6] == 6


class TestExactCounts:
    def test_partitions_small(self):
        t = exact_counts(StructureKind.PARTITION, ONES, 5)
        assert list(t.counts) == [1, 1, 2, 3, 5, 7]

    def test_selections_small(self):
        t = exact_counts(StructureKind.SELECTION, ONES, 5)
        assert list(t.counts) == [1, 1, 1, 2, 2, 3]

    def test_assemblies_small(self):
        t = exact_counts(StructureKind.ASSEMBLY, ONES, 3)
        assert list(t.counts) == [F(1), F(1), F(3, 2), F(13, 6)]

    def test_partition_numbers_match_pentagonal_oracle(self):
        t = exact_counts(StructureKind.PARTITION, ONES, 300)
        p = pentagonal_partition_counts(300)
        assert [int(c) for c in t.counts] == p
        assert p[10] == 42 and p[50] == 204226 and p[100] == 190569292

    def test_c0_is_one_counts_nonnegative(self):
        for name, fam in STD_FAMILIES.items():
            b = eval_weights(normalize_family(fam), 40)
            for kind in ALL_KINDS:
                t = exact_counts(kind, b, 40)
                assert t.counts[0] == 1
                assert all(c >= 0 for c in t.counts)

    def test_integer_weights_give_integer_counts(self):
        b = eval_weights(Binomial2 := normalize_family(STD_FAMILIES["binom2"]), 60)
        for kind in (StructureKind.PARTITION, StructureKind.SELECTION):
            t = exact_counts(kind, b, 60)
            assert all(c.denominator == 1 for c in t.counts)

    def test_refuses_float_weights(self):
        with pytest.raises(TypeError):
            exact_counts(StructureKind.PARTITION, [F(0), mpf(1), mpf(1)], 2)


class TestProductCounts:
    def test_selection_square(self):
        b = [F(0), F(2)] + [F(0)] * 10
        t = product_counts(StructureKind.SELECTION, b, 2)
        assert list(t.counts) == [1, 2, 1]  # (1+z)^2

    def test_assembly_exponential(self):
        b = [F(0), F(1)] + [F(0)] * 10
        t = product_counts(StructureKind.ASSEMBLY, b, 3)
        assert list(t.counts) == [F(1), F(1), F(1, 2), F(1, 6)]

    def test_partition_small(self):
        t = product_counts(StructureKind.PARTITION, ONES, 5)
        assert list(t.counts) == [1, 1, 2, 3, 5, 7]

    def test_cap(self):
        with pytest.raises(ValueError):
            product_counts(StructureKind.PARTITION, [F(1)] * 602, 501)


class TestOracleEquivalence:
    @pytest.mark.parametrize("name", list(STD_FAMILIES))
    @pytest.mark.parametrize("kind", ALL_KINDS)
    def test_recurrence_equals_product(self, name, kind):
        b = eval_weights(normalize_family(STD_FAMILIES[name]), 60)
        a = exact_counts(kind, b, 60)
        c = product_counts(kind, b, 60)
        assert a.counts == c.counts

    @pytest.mark.parametrize("name", list(STD_FAMILIES))
    @pytest.mark.parametrize("kind", ALL_KINDS)
    def test_matches_direct_enumeration(self, name, kind):
        b = eval_weights(normalize_family(STD_FAMILIES[name]), 18)
        t = exact_counts(kind, b, 18)
        brute = brute_force_counts(int(kind), b, 18)
        assert list(t.counts) == brute

    def test_rational_weights(self):
        b = [F(0)] + [F(1, 2)] * 30
        for kind in ALL_KINDS:
            a = exact_counts(kind, b, 30)
            c = product_counts(kind, b, 30)
            assert a.counts == c.counts
            brute = brute_force_counts(int(kind), b, 12)
            assert list(a.counts[:13]) == brute


class TestDominance:
    @pytest.mark.parametrize("name", list(STD_FAMILIES))
    def test_selections_below_partitions(self, name):
        b = eval_weights(normalize_family(STD_FAMILIES[name]), 100)
        t1 = exact_counts(StructureKind.PARTITION, b, 100)
        t2 = exact_counts(StructureKind.SELECTION, b, 100)
        assert all(t2[n] <= t1[n] for n in range(101))


class TestCsv:
    def test_integer_and_rational_cells(self):
        t = exact_counts(StructureKind.ASSEMBLY, ONES, 3)
        text = t.to_csv()
        lines = text.strip().split("\n")
        assert lines[0] == "n,count"
        assert lines[1] == "0,1"
        assert lines[3] == "2,3/2"
