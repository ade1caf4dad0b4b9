import json
import subprocess
import sys

import pytest

from polyglue import suites
from polyglue.cli import RunConfig, UsageError, main, parse_partition
from polyglue.fock import build_H, build_h
from polyglue.linalg import random_rational_matrix


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code = main(list(argv) + ["--json"])
    out = capsys.readouterr().out
    return code, json.loads(out)


def strip_time(report):
    report = dict(report)
    report.pop("wall_time")
    return report


class TestCommutation:
    def test_spec_example_HH(self, capsys):
        code, rep = run_json(capsys, "verify", "commutation", "--family", "HH", "--n", "2", "--m", "3",
                             "--N", "2", "--degree", "3", "--matrix", "random", "--seed", "7")
        assert code == 0 and rep["verdict"] == "pass"
        assert rep["params"]["seed"] == 7 and rep["params"]["N"] == 2
        assert rep["counterexample"] is None
        assert rep["version"]

    def test_trivial(self, capsys):
        code, _ = run(capsys, "verify", "commutation", "--family", "HH", "--n", "1", "--m", "1")
        assert code == 0

    def test_hh(self, capsys):
        code, _ = run(capsys, "verify", "commutation", "--family", "hh", "--n", "2", "--lambda", "2,1",
                      "--N", "2", "--degree", "3", "--matrix", "random", "--seed", "3")
        assert code == 0

    @pytest.mark.parametrize("args", [
        ["--family", "HHmu", "--n", "2", "--mu", "2,1"],
        ["--family", "HI-h", "--n", "2", "--lambda", "2,1"],
    ])
    def test_other_families(self, capsys, args):
        code, _ = run(capsys, "verify", "commutation", *args, "--N", "2", "--degree", "2")
        assert code == 0

    def test_determinism(self, capsys):
        argv = ["verify", "commutation", "--n", "2", "--m", "2", "--trials", "2", "--seed", "4"]
        _, a = run_json(capsys, *argv)
        _, b = run_json(capsys, *argv)
        assert strip_time(a) == strip_time(b)

    def test_failure_exit_code(self, capsys, monkeypatch):
        monkeypatch.setattr(suites, "family_operators",
                            lambda family, N, A, a, n, m, part: (build_H(2, A), build_h(1, a)))
        code, rep = run_json(capsys, "verify", "commutation", "--n", "2", "--m", "1", "--degree", "2")
        assert code == 1 and rep["verdict"] == "fail"
        cx = rep["counterexample"]
        assert cx["passed"] is False
        assert cx["detail"]["value"] != "0"
        assert "tr(" in cx["detail"]["operators"][0]

    def test_file_matrix(self, capsys, tmp_path):
        path = tmp_path / "A.txt"
        path.write_text("# test matrix\n" + random_rational_matrix(2, 1).to_text())
        code, rep = run_json(capsys, "verify", "commutation", "--n", "1", "--m", "2", "--matrix", f"file:{path}",
                             "--degree", "2")
        assert code == 0 and rep["params"]["matrix"] == f"file:{path}"

    def test_out_file(self, capsys, tmp_path):
        out = tmp_path / "report.json"
        code, _ = run(capsys, "verify", "commutation", "--n", "1", "--m", "1", "--out", str(out))
        assert code == 0
        assert json.loads(out.read_text())["suite"] == "verify commutation"


class TestUsageErrors:
    @pytest.mark.parametrize("argv", [
        ["verify", "commutation", "--family", "HH", "--n", "2"],
        ["verify", "commutation", "--family", "HHmu", "--n", "2"],
        ["verify", "commutation", "--family", "HHmu", "--n", "2", "--mu", "1,x"],
        ["verify", "commutation", "--family", "XX", "--n", "1"],
        ["verify", "commutation", "--n", "1", "--m", "1", "--matrix", "bogus"],
        ["verify", "commutation", "--n", "1", "--m", "1", "--matrix", "file:/nonexistent/file"],
        ["verify", "gluing", "--k", "9"],
        ["verify", "schur", "--degree", "9"],
        ["verify", "mmn", "--lambda", "2", "--mu", "1"],
        ["hurwitz", "table", "--degree", "6"],
        ["census", "genus", "--k", "0"],
        ["nonsense"],
    ])
    def test_exit_2(self, capsys, argv):
        assert main(argv) == 2

    def test_file_size_mismatch(self, capsys, tmp_path):
        path = tmp_path / "A.txt"
        path.write_text(random_rational_matrix(3, 1).to_text())
        assert main(["verify", "commutation", "--n", "1", "--m", "1", "--N", "2", "--matrix", f"file:{path}"]) == 2

    def test_parse_partition(self):
        assert parse_partition("3,1,1", "--mu").parts == (3, 1, 1)
        with pytest.raises(UsageError):
            parse_partition(None, "--mu")


class TestOtherCommands:
    def test_gluing_k1(self, capsys):
        code, rep = run_json(capsys, "verify", "gluing", "--k", "1")
        assert code == 0
        assert rep["cases"][0]["detail"]["monodromies"] == "tr(B1C1)"

    def test_gluing_k3(self, capsys):
        code, rep = run_json(capsys, "verify", "gluing", "--k", "3", "--N", "2")
        assert code == 0
        census = [c for c in rep["cases"] if c["case"].startswith("genus census")][0]
        assert census["detail"]["census"] == {"0": 3, "1": 3}
        assert sum(c["case"].startswith("k=3") for c in rep["cases"]) == 6

    def test_schur(self, capsys):
        code, rep = run_json(capsys, "verify", "schur", "--degree", "2")
        assert code == 0
        assert {c["case"] for c in rep["cases"]} >= {"orth1 d=2", "orth2 d=2", "roundtrip d=2"}

    def test_mmn_specific(self, capsys):
        code, rep = run_json(capsys, "verify", "mmn", "--lambda", "2", "--mu", "1,1", "--N", "2")
        assert code == 0 and rep["cases"][0]["detail"]["factor"] == "-2"

    def test_mmn_exhaustive(self, capsys):
        code, _ = run(capsys, "verify", "mmn", "--degree", "2", "--matrix", "identity")
        assert code == 0

    def test_hurwitz_d1(self, capsys):
        code, rep = run_json(capsys, "hurwitz", "table", "--degree", "1")
        assert code == 0
        assert rep["entries"] == 1 and rep["table"][0]["value"] == "1"

    def test_hurwitz_d2_file(self, capsys, tmp_path):
        path = tmp_path / "t.jsonl"
        code, rep = run_json(capsys, "hurwitz", "table", "--degree", "2", "--table", str(path))
        assert code == 0 and rep["entries"] == 8
        lines = path.read_text().splitlines()
        assert len(lines) == 8 and all(json.loads(l)["lambda"] for l in lines)

    def test_census(self, capsys):
        code, rep = run_json(capsys, "census", "genus", "--k", "4")
        assert code == 0
        assert rep["cases"][-1]["detail"]["census"] == {"0": 4, "1": 20}

    def test_summary_text(self, capsys):
        code, out = run(capsys, "census", "genus", "--k", "2")
        assert code == 0 and out.startswith("census genus: PASS")

    def test_module_entry_point(self):
        proc = subprocess.run([sys.executable, "-m", "polyglue", "census", "genus", "--k", "3"],
                              capture_output=True, text=True)
        assert proc.returncode == 0 and "PASS" in proc.stdout


def test_config_params_echo():
    cfg = RunConfig("verify gluing", k=3, seed=5)
    assert cfg.params() == {"command": "verify gluing", "k": 3, "matrix": "random", "seed": 5, "trials": 1}
