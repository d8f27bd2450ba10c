import json
import math

import numpy as np
import pytest

from hullselect import active_set_path, sparsity_penalty
from hullselect.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def vector_csv(tmp_path):
    p = tmp_path / "xs.csv"
    p.write_text("3.0\n0.0\n")
    return str(p)


class TestSelect:
    def test_json_on_stdout(self, capsys, vector_csv):
        code, out, _ = run_cli(capsys, "select", "--input", vector_csv, "--sigma", "1", "--K", "1")
        assert code == 0
        payload = json.loads(out)
        assert payload["preselector"] == [1]
        assert payload["selected"] == [1]
        assert payload["threshold"] == pytest.approx(math.log(2 * math.e**2))
        assert payload["criterion"] == pytest.approx(2 + math.log(2))

    def test_json_array_input(self, capsys, tmp_path):
        p = tmp_path / "xs.json"
        p.write_text("[0.0, 0.0, 0.0]")
        code, out, _ = run_cli(capsys, "select", "--input", str(p), "--sigma", "1", "--K", "4")
        assert code == 0
        payload = json.loads(out)
        assert payload["selected"] == [] and payload["threshold"] is None

    def test_missing_file_is_runtime_error(self, capsys, tmp_path):
        code, _, err = run_cli(
            capsys, "select", "--input", str(tmp_path / "nope.csv"), "--sigma", "1", "--K", "4"
        )
        assert code == 1 and "error" in err

    def test_bad_content_is_config_error(self, capsys, tmp_path):
        p = tmp_path / "xs.csv"
        p.write_text("3.0\nnot-a-number\n")
        code, _, err = run_cli(capsys, "select", "--input", str(p), "--sigma", "1", "--K", "4")
        assert code == 2 and "line 2" in err


class TestUsageErrors:
    def test_unknown_flag(self, capsys, vector_csv):
        code, _, _ = run_cli(
            capsys, "select", "--input", vector_csv, "--sigma", "1", "--K", "4", "--bogus"
        )
        assert code == 2

    def test_unknown_subcommand(self, capsys):
        code, _, _ = run_cli(capsys, "frobnicate")
        assert code == 2

    def test_no_subcommand(self, capsys):
        assert run_cli(capsys)[0] == 2


class TestOracleAndPath:
    def test_oracle(self, capsys, tmp_path):
        p = tmp_path / "theta.csv"
        p.write_text("10.0\n0.0\n0.0\n0.0\n")
        code, out, _ = run_cli(capsys, "oracle", "--theta", str(p), "--sigma", "1", "--A", "1")
        assert code == 0
        payload = json.loads(out)
        assert payload["active"] == [1]
        assert payload["r_squared"] == pytest.approx(sparsity_penalty(1, 4))

    def test_path(self, capsys, tmp_path):
        p = tmp_path / "theta.json"
        p.write_text("[10.0, 0.0, 0.0, 0.0]")
        code, out, _ = run_cli(capsys, "path", "--theta", str(p), "--sigma", "1")
        assert code == 0
        entries = json.loads(out)
        expect = [e.to_dict() for e in active_set_path([10.0, 0, 0, 0], 1.0)]
        assert entries == expect
        assert entries[-1]["a_high"] is None  # +inf encodes as null


class TestSimulate:
    def config(self, tmp_path, **over):
        d = {
            "n": 30,
            "sigma": 1.0,
            "K": 4.0,
            "signal": {"s": 3, "A": 16.0},
            "noise": {"variant": "iid-gaussian"},
            "replications": 10,
            "master_seed": 7,
            "oracle_A": 16.0,
        }
        d.update(over)
        p = tmp_path / "exp.json"
        p.write_text(json.dumps(d))
        return str(p)

    def test_writes_report_and_reps(self, capsys, tmp_path):
        cfg = self.config(tmp_path)
        report_path = tmp_path / "report.json"
        reps_path = tmp_path / "reps.csv"
        code, out, _ = run_cli(
            capsys,
            "simulate", "--config", cfg, "--out", str(report_path), "--reps-out", str(reps_path),
        )
        assert code == 0 and out == ""
        report = json.loads(report_path.read_text())
        for key in ("config", "rates", "uq", "version"):
            assert key in report
        lines = reps_path.read_text().strip().split("\n")
        assert lines[0].startswith("rep,") and len(lines) == 11

    def test_stdout_without_out(self, capsys, tmp_path):
        code, out, _ = run_cli(capsys, "simulate", "--config", self.config(tmp_path))
        assert code == 0
        assert "rates" in json.loads(out)

    def test_seed_override(self, capsys, tmp_path):
        cfg = self.config(tmp_path, signal={"s": 3, "A": 2.0}, K=1.0, replications=20)
        _, out_a, _ = run_cli(capsys, "simulate", "--config", cfg, "--seed", "100")
        _, out_b, _ = run_cli(capsys, "simulate", "--config", cfg, "--seed", "101")
        _, out_a2, _ = run_cli(capsys, "simulate", "--config", cfg, "--seed", "100")
        ja, jb, ja2 = json.loads(out_a), json.loads(out_b), json.loads(out_a2)
        assert ja["config"]["master_seed"] == 100
        ja.pop("wall_time_s"), jb.pop("wall_time_s"), ja2.pop("wall_time_s")
        assert ja == ja2
        assert ja["rates"] != jb["rates"]

    def test_config_error_exit_2(self, capsys, tmp_path):
        cfg = self.config(tmp_path, K=-1.0)
        code, _, err = run_cli(capsys, "simulate", "--config", cfg)
        assert code == 2 and "K" in err


class TestBound:
    def test_grid_csv(self, capsys):
        code, out, _ = run_cli(
            capsys, "bound", "--n", "1000", "--s", "10,20", "--A", "2,8", "--sigma", "1"
        )
        assert code == 0
        lines = out.strip().split("\n")
        assert lines[0] == "n,s,A,a,lower_bound,regime"
        assert len(lines) == 5  # header + 2x2 grid
        for line in lines[1:]:
            fields = line.split(",")
            assert fields[0] == "1000"
            assert fields[5] in {"inconsistent", "lower-bounded", "vacuous"}


class TestNoiseCheck:
    def test_inline_model(self, capsys):
        code, out, _ = run_cli(
            capsys,
            "noise-check", "--model", '{"variant": "bounded-uniform", "b": 1.0}',
            "--C", "1.0", "--reps", "200", "--n", "50", "--sizes", "5",
            "--m-grid", "1,2,5", "--seed", "3",
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["passes"] is True
        assert payload["note"] == "survival vanished"
        assert payload["empirical_survival"] == [0.0, 0.0, 0.0]

    def test_model_from_file(self, capsys, tmp_path):
        p = tmp_path / "model.json"
        p.write_text('{"variant": "iid-gaussian"}')
        code, out, _ = run_cli(
            capsys,
            "noise-check", "--model", str(p), "--C", "2.0", "--reps", "2000",
            "--n", "50", "--sizes", "10", "--seed", "1",
        )
        assert code == 0
        assert json.loads(out)["passes"] is True

    def test_bad_model_json(self, capsys):
        code, _, err = run_cli(
            capsys, "noise-check", "--model", '{"variant": "nope"}', "--C", "1", "--reps", "200"
        )
        assert code == 2


class TestUq:
    def test_from_reps_csv(self, capsys, tmp_path):
        p = tmp_path / "reps.csv"
        p.write_text(
            "rep,false_pos,false_neg,selected_size,preselector_size,active_size,hamming\n"
            "1,0,0,3,3,3,0\n"
            "2,1,1,3,10,3,2\n"
        )
        code, out, _ = run_cli(
            capsys, "uq", "--reps-in", str(p), "--n", "100",
            "--alpha4-prime", "1.0", "--m1-prime", "4.0",
        )
        assert code == 0
        payload = json.loads(out)
        # rep 1: r_hat 3 >= ham 0; rep 2: r_hat 10 >= ham 2 -> no failures
        assert payload["coverage_fail_rate"] == 0.0
        # rep 2: r_hat 10 < 4 * 3 = 12 -> no size exceed either
        assert payload["size_exceed_rate"] == 0.0
        assert payload["alpha4_prime"] == 1.0

    def test_header_checked(self, capsys, tmp_path):
        p = tmp_path / "reps.csv"
        p.write_text("wrong,header\n1,2\n")
        code, _, err = run_cli(capsys, "uq", "--reps-in", str(p), "--n", "10")
        assert code == 2


class TestVersionFlag:
    def test_version_exits_zero(self, capsys):
        assert run_cli(capsys, "--version")[0] == 0
