import json
import shutil
import subprocess
from pathlib import Path

import pytest

from cdhlab.cli import main

SAMPLES = Path(__file__).resolve().parent.parent / "samples"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


class TestAnalyze:
    def test_pseudo_clique(self, capsys):
        code, out, _ = run(capsys, "analyze", SAMPLES / "pseudo_clique13.json", "--epsilon", "1/10")
        rep = json.loads(out)
        assert code == 0 and rep["branch"] == 1 and rep["n"] == 13

    def test_cycle(self, capsys):
        code, out, _ = run(capsys, "analyze", SAMPLES / "cycle13.json", "--epsilon", "3/25")
        rep = json.loads(out)
        assert code == 0 and rep["branch"] == 2

    @pytest.mark.parametrize("eps", ["1/8", "0/1", "abc", "1/0", "0.1"])
    def test_bad_epsilon(self, capsys, eps):
        code, _, err = run(capsys, "analyze", SAMPLES / "cycle13.json", "--epsilon", eps)
        assert code == 2 and "epsilon" in err

    def test_input_errors(self, capsys):
        code, _, err = run(capsys, "analyze", SAMPLES / "bad_edge.json")
        assert code == 2 and "strictly increasing" in err
        code, _, err = run(capsys, "analyze", SAMPLES / "bad_syntax.json")
        assert code == 2 and "line" in err and "column" in err

    def test_cap(self, capsys):
        code, _, err = run(capsys, "purify", SAMPLES / "crossing4.json", "--cap-terms", "2")
        assert code == 3 and "CapExceeded" in err
        code, _, err = run(capsys, "period", SAMPLES / "and8.json", "--cap-truth-table", "4")
        assert code == 3 and "CapExceeded" in err


class TestPurifyAndPeriod:
    def test_purify_crossing(self, capsys, tmp_path):
        out_path = tmp_path / "out.json"
        code, _, _ = run(capsys, "purify", SAMPLES / "crossing4.json", "--verify", "-o", out_path)
        assert code == 0
        doc = json.loads(out_path.read_text())
        assert doc["kind"] == "symmetric" and doc["terms"]

    def test_purify_no_large_set(self, capsys):
        code, _, err = run(capsys, "purify", SAMPLES / "no_large_c.json")
        assert code == 2 and "HypothesisError" in err

    def test_period_pairs(self, capsys):
        code, out, _ = run(capsys, "period", SAMPLES / "pairs8.json")
        rep = json.loads(out)
        assert code == 0 and rep["minimal_period"] == 4 and rep["predicted_period"]["period"] == 4

    def test_period_summary(self, capsys):
        code, out, _ = run(capsys, "period", SAMPLES / "summary8.json", "--r", "1")
        rep = json.loads(out)
        assert code == 0 and rep["profile"] == [0, 0, 1, 1, 0, 0, 1, 1, 0]
        code, _, err = run(capsys, "period", SAMPLES / "summary8.json")
        assert code == 2 and "--r" in err

    def test_period_and(self, capsys):
        code, out, _ = run(capsys, "period", SAMPLES / "and8.json")
        rep = json.loads(out)
        assert code == 0 and rep["outer_minimal_period"] == 9
        assert "lower bound" in rep["note"]

    def test_period_round_trips_purified_output(self, capsys, tmp_path):
        out_path = tmp_path / "p.json"
        assert run(capsys, "purify", SAMPLES / "crossing4.json", "-o", out_path)[0] == 0
        code, out, _ = run(capsys, "period", out_path)
        assert code == 0 and json.loads(out)["checks"]["predicted_is_period"]


class TestDdl:
    def test_table(self, capsys):
        code, out, _ = run(capsys, "ddl", "--p", "2", "--q", "3", "--gamma", "1", "--t", "0", "--d", "3")
        rep = json.loads(out)
        assert code == 0 and rep["ddl"][0]["verified"] and rep["sddl"]["beta_gamma1"] == [[0, 1], [1, 0]]

    def test_bad_primes(self, capsys):
        assert run(capsys, "ddl", "--p", "4", "--q", "3")[0] == 2
        assert run(capsys, "ddl", "--p", "3", "--q", "3")[0] == 2
        assert run(capsys, "ddl", "--p", "3")[0] == 2


class TestSelftest:
    def test_subset_is_deterministic(self, capsys):
        code1, out1, err1 = run(capsys, "selftest", "--criteria", "6,7,8,10")
        code2, out2, _ = run(capsys, "selftest", "--criteria", "6,7,8,10")
        assert code1 == code2 == 0 and out1 == out2
        assert err1.count("[PASS]") == 4

    def test_fault_injection(self, capsys, monkeypatch):
        monkeypatch.setenv("CDHLAB_INJECT_FAULT", "7")
        code, out, err = run(capsys, "selftest", "--criteria", "6,7")
        assert code == 1 and "[FAIL] criterion 7" in err and "[PASS] criterion 6" in err
        assert json.loads(out)["passed"] is False

    def test_bad_subset(self, capsys):
        assert run(capsys, "selftest", "--criteria", "11")[0] == 2
        assert run(capsys, "selftest", "--criteria", "x")[0] == 2


@pytest.mark.skipif(shutil.which("cdhlab") is None, reason="console script not installed")
def test_console_script():
    proc = subprocess.run(["cdhlab", "ddl", "--p", "3", "--q", "2", "--gamma", "0", "--t", "1"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["ddl"][0]["beta"] == [{"j": [0, 0, 1], "r": 1, "coeff": 1}]
