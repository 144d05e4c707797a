"""Comparison tables, the sin^2-condition diagnostic, and the CLI."""

import json
import math
from fractions import Fraction

import pytest

from partasym import (PowerSum, RunConfig, belief_table, compare_table,
                      condition3_check, parse_ngrid)
from partasym.cli import run_command
from partasym.harness import COMPARE_COLUMNS, rows_to_csv, rows_to_json
from conftest import STD_FAMILIES

F = Fraction
ONES_JSON = '{"type":"power","terms":[{"a":"1","r":"1"}]}'


class TestParseNgrid:
    def test_geometric(self):
        ns = parse_ngrid("100:2000:geometric:6")
        assert len(ns) == 6
        assert ns[0] == 100 and ns[-1] == 2000
        assert list(ns) == sorted(ns)

    def test_comma_list(self):
        assert parse_ngrid("10, 5,100") == (5, 10, 100)

    def test_single(self):
        assert parse_ngrid("42") == (42,)

    def test_bad_spec(self):
        with pytest.raises(ValueError):
            parse_ngrid("10:100:linear:5")


class TestRunConfig:
    def test_validates_grid(self):
        with pytest.raises(ValueError):
            RunConfig(family=STD_FAMILIES["ones"], kind=1, ns=())
        with pytest.raises(ValueError):
            RunConfig(family=STD_FAMILIES["ones"], kind=1, ns=(10, 10))
        with pytest.raises(ValueError):
            RunConfig(family=STD_FAMILIES["ones"], kind=1, ns=(10,), fmt="xml")


class TestCompareTable:
    def test_partition_ratios_approach_one(self):
        cfg = RunConfig(family=STD_FAMILIES["ones"], kind=1,
                        ns=(125, 250, 500, 1000))
        rows = compare_table(cfg)
        errs = [abs(r.ratio - 1) for r in rows]
        assert all(errs[i] > errs[i + 1] for i in range(len(errs) - 1))
        assert errs[-1] <= 0.02
        assert all(r.ratio > 0 for r in rows)
        assert 0.9 < rows[-1].llt_ratio < 1.1

    def test_zero_row(self):
        cfg = RunConfig(family=STD_FAMILIES["ones"], kind=1, ns=(0,))
        rows = compare_table(cfg)
        assert len(rows) == 1
        assert rows[0].c_exact == 1
        assert rows[0].c_asym is None

    def test_inexact_family_drops_exact_columns(self):
        fam = PowerSum(((F(1), F(3, 2)),))
        cfg = RunConfig(family=fam, kind=3, ns=(50, 100))
        rows = compare_table(cfg)
        for r in rows:
            assert r.c_exact is None and r.ratio is None and r.llt_ratio is None
            assert r.delta_num is not None and r.delta_exp is not None
            assert abs(r.delta_num - r.delta_exp) < 0.05 * r.delta_num

    def test_csv_deterministic(self):
        cfg = RunConfig(family=STD_FAMILIES["kplus1"], kind=2, ns=(50, 100))
        a = rows_to_csv(compare_table(cfg), COMPARE_COLUMNS)
        b = rows_to_csv(compare_table(cfg), COMPARE_COLUMNS)
        assert a == b
        assert a.splitlines()[0] == ",".join(COMPARE_COLUMNS)

    def test_json_rendering(self):
        cfg = RunConfig(family=STD_FAMILIES["ones"], kind=1, ns=(50,))
        payload = json.loads(rows_to_json(compare_table(cfg), COMPARE_COLUMNS))
        assert payload[0]["n"] == "50"
        float(payload[0]["ratio"])


class TestBeliefTable:
    def test_two_pole_partition_experiment(self):
        cfg = RunConfig(family=STD_FAMILIES["kplus1"], kind=1,
                        ns=(500, 1000, 2000))
        rows = belief_table(cfg)
        gaps = [r.log_gap for r in rows]
        assert all(g > 0 for g in gaps)
        assert gaps == sorted(gaps)
        last = rows[-1]
        # the full formula's extra terms fit the measured gap
        assert abs(last.log_gap - last.log_gap_predicted) <= 0.1 * last.log_gap
        assert 0.9 < last.log_equivalence < 1.1


class TestCondition3:
    def test_assembly_spec_point(self):
        rep = condition3_check(STD_FAMILIES["ones"], 3, [0.01], [0.25],
                               K=2000, eps=0.1)
        row = rep.rows[0]
        assert 90 < row.lhs < 110          # about 1/delta here
        assert abs(row.rhs - (1.5 + 0.1) * 1.0 * abs(math.log(0.01))) < 1e-9
        assert rep.passed and row.margin > 0

    def test_alpha_half_structure(self):
        # sin^2(pi k / 2) alternates 1, 0: LHS = 2 sum over odd k
        K = 3000
        rep = condition3_check(STD_FAMILIES["ones"], 3, [0.01], [0.5], K=K,
                               eps=0.1)
        direct = 2 * sum(math.exp(-k * 0.01) for k in range(1, K + 1, 2))
        assert abs(rep.rows[0].lhs - direct) < 1e-6 * direct

    def test_partition_sweep(self):
        rep = condition3_check(STD_FAMILIES["ones"], 1, [1e-3],
                               [0.05, 0.1, 0.25, 0.5], K=20000, eps=0.1)
        assert rep.passed
        assert all(r.margin > 0 for r in rep.rows)

    def test_alpha_out_of_range(self):
        with pytest.raises(ValueError):
            condition3_check(STD_FAMILIES["ones"], 1, [0.01], [0.7], K=100,
                             eps=0.1)

    def test_no_valid_alpha_for_delta(self):
        with pytest.raises(ValueError):
            condition3_check(STD_FAMILIES["ones"], 1, [0.25], [0.3], K=100,
                             eps=0.1)


class TestCli:
    def test_count_partition_10(self, capsys):
        rc = run_command(["count", "--family", ONES_JSON, "--kind", "1",
                          "--n", "10"])
        out = capsys.readouterr().out
        assert rc == 0
        assert out.strip().splitlines()[0] == "n,count"
        assert out.strip().splitlines()[-1] == "10,42"

    def test_formula_document(self, capsys):
        rc = run_command(["formula", "--family", ONES_JSON, "--kind", "1"])
        assert rc == 0
        doc = json.loads(capsys.readouterr().out)
        assert abs(float(doc["H"]) - 0.1443375673) < 1e-9
        assert doc["n_exponent"] == "-1"

    def test_compare_binomial_grid(self, capsys):
        rc = run_command(["compare", "--family", '{"type":"binomial","l":1}',
                          "--kind", "1", "--ngrid", "100:2000:geometric:6"])
        assert rc == 0
        lines = capsys.readouterr().out.strip().splitlines()
        assert len(lines) == 7  # header + 6 rows
        header = lines[0].split(",")
        idx = header.index("ratio")
        ratios = [float(row.split(",")[idx]) for row in lines[1:]]
        assert abs(ratios[-1] - 1) < abs(ratios[0] - 1)
        assert abs(ratios[-1] - 1) < 0.05

    def test_delta_subcommand(self, capsys):
        rc = run_command(["delta", "--family", ONES_JSON, "--kind", "3",
                          "--ngrid", "100,200"])
        assert rc == 0
        lines = capsys.readouterr().out.strip().splitlines()
        assert lines[0].startswith("n,delta_num,residual")
        assert len(lines) == 3

    def test_belief_subcommand(self, capsys):
        rc = run_command(["belief", "--family", '{"type":"binomial","l":1}',
                          "--kind", "1", "--ngrid", "200,400", "--format",
                          "json"])
        assert rc == 0
        payload = json.loads(capsys.readouterr().out)
        assert len(payload) == 2
        assert float(payload[1]["log_gap"]) > float(payload[0]["log_gap"]) > 0

    def test_check_cond3_subcommand(self, capsys):
        rc = run_command(["check-cond3", "--family", ONES_JSON, "--kind", "3",
                          "--deltas", "0.01", "--alphas", "0.25,0.5",
                          "--eps", "0.1"])
        assert rc == 0
        out = capsys.readouterr().out
        assert "PASS" in out

    def test_out_file(self, tmp_path, capsys):
        path = tmp_path / "counts.csv"
        rc = run_command(["count", "--family", ONES_JSON, "--kind", "1",
                          "--n", "5", "--out", str(path)])
        assert rc == 0
        assert path.read_text().strip().splitlines()[-1] == "5,7"

    def test_usage_error_is_2(self, capsys):
        assert run_command(["count", "--bogus"]) == 2
        assert run_command([]) == 2

    def test_computation_error_is_1(self, capsys):
        rc = run_command(["count", "--family", '{"type":"mystery"}',
                          "--kind", "1", "--n", "5"])
        assert rc == 1
        assert "error:" in capsys.readouterr().err

    def test_infeasible_saddle_is_1(self, capsys):
        rc = run_command(["delta", "--family", ONES_JSON, "--kind", "2",
                          "--ngrid", "2"])
        assert rc == 1

    def test_precision_flag(self, capsys):
        rc = run_command(["formula", "--family", ONES_JSON, "--kind", "2",
                          "--precision", "40"])
        assert rc == 0
        doc = json.loads(capsys.readouterr().out)
        assert abs(float(doc["H"]) - 0.18995892141) < 1e-9
