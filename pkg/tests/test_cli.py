import json
import math
import re

import pytest

from saranfk.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestEval:
    def test_2f1_closed_form(self, capsys):
        code, out, _ = run_cli(capsys, "eval", "2f1", "--a", "1", "--b", "1", "--c", "2", "--z", "0.5")
        assert code == 0
        value = float(re.search(r"value: ([\d.eE+-]+)", out).group(1))
        assert value == pytest.approx(2 * math.log(2), rel=1e-10)

    def test_fk_origin(self, capsys):
        code, out, _ = run_cli(
            capsys, "eval", "fk",
            "--alpha1", "0.5", "--alpha2", "0.5", "--beta1", "0.5", "--beta2", "0.5",
            "--gamma1", "1.5", "--gamma2", "1.5", "--gamma3", "1.5",
            "--x", "0", "--y", "0", "--z", "0",
        )
        assert code == 0
        assert "value: 1.0" in out

    def test_fk_outside_domain_exit_2(self, capsys):
        code, _, err = run_cli(
            capsys, "eval", "fk",
            "--alpha1", "0.5", "--alpha2", "0.5", "--beta1", "0.5", "--beta2", "0.5",
            "--gamma1", "1.5", "--gamma2", "1.5", "--gamma3", "1.5",
            "--x", "0.5", "--y", "0.5", "--z", "0.3",
        )
        assert code == 2
        assert "outside D_K" in err

    def test_qgamma(self, capsys):
        code, out, _ = run_cli(capsys, "eval", "qgamma", "--x", "2", "--q", "0.5")
        assert code == 0
        assert float(re.search(r"value: ([\d.eE+-]+)", out).group(1)) == pytest.approx(1.0)

    def test_pole_exit_2(self, capsys):
        code, _, err = run_cli(capsys, "eval", "2f1", "--a", "1", "--b", "1", "--c", "-2", "--z", "0.5")
        assert code == 2

    def test_unknown_function(self, capsys):
        code, _, err = run_cli(capsys, "eval", "nope", "--a", "1")
        assert code == 2

    def test_q_moment(self, capsys):
        code, out, _ = run_cli(
            capsys, "eval", "q-moment",
            "--measure", "qdirichlet", "--params", "0.8,1.3", "--ell", "0", "--q", "0.5",
        )
        assert code == 0
        assert float(re.search(r"value: ([\d.eE+-]+)", out).group(1)) == pytest.approx(1.0)


class TestList:
    def test_contains_anchor(self, capsys):
        code, out, _ = run_cli(capsys, "list")
        assert code == 0
        assert "fk-erdelyi" in out
        assert "Theorem 1.1" in out

    def test_line_count_matches_registry(self, capsys):
        from saranfk import builtin_registry

        code, out, _ = run_cli(capsys, "list")
        assert len(out.strip().splitlines()) == len(builtin_registry())

    def test_json_parses(self, capsys):
        code, out, _ = run_cli(capsys, "list", "--format", "json")
        rows = [json.loads(line) for line in out.strip().splitlines()]
        assert {"id", "anchor", "cost_class", "tol"} <= set(rows[0])


class TestVerify:
    def test_single_identity_json_schema(self, capsys):
        code, out, _ = run_cli(
            capsys, "verify", "--identities", "euler-1", "--samples", "5", "--format", "json"
        )
        assert code == 0
        rec = json.loads(out.strip())
        assert set(rec) == {
            "id", "anchor", "q", "samples", "max_rel_residual", "pass",
            "wall_time_ms", "failures",
        }
        assert rec["id"] == "euler-1"
        assert rec["q"] is None
        assert rec["pass"] is True

    def test_unknown_identity_exit_2(self, capsys):
        code, _, err = run_cli(capsys, "verify", "--identities", "bogus-id")
        assert code == 2

    def test_failure_exit_1(self, capsys):
        code, out, _ = run_cli(
            capsys, "verify", "--identities", "euler-1", "--samples", "3",
            "--tol", "1e-20", "--format", "json",
        )
        assert code == 1
        rec = json.loads(out.strip())
        assert rec["pass"] is False
        assert rec["failures"]
        assert set(rec["failures"][0]) == {"params", "residual"}

    def test_q_sweep_records(self, capsys):
        code, out, _ = run_cli(
            capsys, "verify", "--identities", "gasper-discrete", "--samples", "4",
            "--q", "0.3", "--q", "0.5", "--format", "json",
        )
        assert code == 0
        recs = [json.loads(line) for line in out.strip().splitlines()]
        assert [r["q"] for r in recs] == [0.3, 0.5]

    def test_determinism_modulo_wall_time(self, capsys):
        def strip(text):
            return [
                {k: v for k, v in json.loads(line).items() if k != "wall_time_ms"}
                for line in text.strip().splitlines()
            ]

        _, out1, _ = run_cli(capsys, "verify", "--identities", "euler-1,bateman",
                             "--samples", "4", "--format", "json")
        _, out2, _ = run_cli(capsys, "verify", "--identities", "euler-1,bateman",
                             "--samples", "4", "--format", "json")
        assert strip(out1) == strip(out2)

    def test_output_file_and_report(self, capsys, tmp_path):
        target = tmp_path / "report.jsonl"
        code, _, _ = run_cli(
            capsys, "verify", "--identities", "euler-1", "--samples", "3",
            "--format", "json", "--output", str(target),
        )
        assert code == 0
        assert target.exists()
        code, out, _ = run_cli(capsys, "report", str(target), "--format", "human")
        assert code == 0
        assert "PASS" in out and "euler-1" in out

    def test_csv_format(self, capsys):
        code, out, _ = run_cli(
            capsys, "verify", "--identities", "euler-1", "--samples", "3", "--format", "csv"
        )
        assert code == 0
        header = out.splitlines()[0]
        assert header.startswith("id,anchor,q,samples,max_rel_residual,pass")
