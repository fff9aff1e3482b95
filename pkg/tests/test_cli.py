import csv
import io
import json
import subprocess
import sys

import pytest

from motzkin_lab.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def csv_rows(text):
    lines = text.splitlines()
    assert lines[0] == "# motzkin-lab v1"
    body = [ln for ln in lines if not ln.startswith("#")]
    return list(csv.DictReader(io.StringIO("\n".join(body))))


class TestEnumerate:
    def test_returns_table(self, capsys):
        code, out, err = run(capsys, "enumerate", "-w", "1,1,1", "-n", "2",
                             "--stat", "returns", "--family", "walk")
        assert code == 0 and err == ""
        rows = csv_rows(out)
        assert [(int(r["k"]), int(r["count"])) for r in rows] == [(0, 4), (1, 4), (2, 1)]

    def test_excursion_total(self, capsys):
        code, out, _ = run(capsys, "enumerate", "-w", "1,1,1", "-n", "6", "--family", "excursion")
        assert code == 0
        assert sum(int(r["count"]) for r in csv_rows(out)) == 51

    def test_rational_weights_json(self, capsys):
        code, out, _ = run(capsys, "enumerate", "-w", "1/2,1,3/2", "-n", "2",
                           "--stat", "height", "--format", "json")
        data = json.loads(out)
        assert code == 0 and data["total"] == "9" and data["weights"] == "1/2,1,3/2"
        # height 0: ff, f-, -f, --, -+ ; height 2: ++ ; the rest have height 1
        assert {r["k"]: r["count"] for r in data["rows"]} == {0: "3", 1: "15/4", 2: "9/4"}

    @pytest.mark.parametrize("weights", ["0,1,1", "0.5,1,1", "1,1", "a,b,c", "1,-1,1"])
    def test_bad_weights(self, capsys, weights):
        code, out, err = run(capsys, "enumerate", "-w", weights, "-n", "3")
        assert code == 2 and out == "" and "error" in err

    def test_bad_pair(self, capsys):
        code, _, err = run(capsys, "enumerate", "-w", "1,1,1", "-n", "3",
                           "--stat", "height", "--family", "bridge")
        assert code == 2 and "unsupported" in err

    def test_missing_option(self, capsys):
        code, _, err = run(capsys, "enumerate", "-w", "1,1,1")
        assert code == 2 and "--n" in err

    def test_unknown_flag_is_usage_error(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["enumerate", "--bogus"])
        assert exc.value.code == 2

    def test_output_file(self, capsys, tmp_path):
        target = tmp_path / "out.csv"
        code, out, _ = run(capsys, "enumerate", "-w", "1,1,1", "-n", "3", "-o", str(target))
        assert code == 0 and out == ""
        assert target.read_text().startswith("# motzkin-lab v1\n")


class TestPredict:
    @pytest.mark.parametrize("argv, expected", [
        (["-w", "1,1,1", "--stat", "height"],
         {"law": "half_normal", "sigma": 0.8165, "scaling": "divide_by_sqrt_n"}),
        (["-w", "1,1,2", "--stat", "returns"], {"law": "geometric", "p": 0.25}),
        (["-w", "2,1,1", "--stat", "signs", "--family", "walk"], {"law": "geometric", "p": 0.5}),
    ])
    def test_descriptors(self, capsys, argv, expected):
        code, out, _ = run(capsys, "predict", *argv)
        data = json.loads(out)
        assert code == 0
        for key, val in expected.items():
            assert data[key] == (pytest.approx(val, abs=5e-5) if isinstance(val, float) else val)

    def test_missing_stat(self, capsys):
        assert run(capsys, "predict", "-w", "1,1,1")[0] == 2


class TestConverge:
    def test_csv_rows(self, capsys):
        code, out, _ = run(capsys, "converge", "-w", "1,1,1", "--stat", "returns", "-n", "400,1600")
        rows = csv_rows(out)
        assert code == 0 and len(rows) == 2
        assert list(rows[0]) == ["model", "weights", "n", "K", "TV", "mean_ratio", "var_ratio",
                                 "local_residual"]
        assert float(rows[1]["K"]) < float(rows[0]["K"])

    def test_json_matches_csv(self, capsys):
        _, out_csv, _ = run(capsys, "converge", "-w", "1,1,1", "--stat", "height", "-n", "100,200")
        _, out_json, _ = run(capsys, "converge", "-w", "1,1,1", "--stat", "height", "-n", "100,200",
                             "--format", "json")
        rows, data = csv_rows(out_csv), json.loads(out_json)
        assert isinstance(data, list) and len(data) == len(rows)
        for r, d in zip(rows, data):
            assert float(r["K"]) == d["K"] and int(r["n"]) == d["n"]

    def test_bad_convention(self, capsys):
        assert run(capsys, "converge", "-w", "1,1,1", "--stat", "height", "--convention", "x")[0] == 2


class TestSample:
    def test_deterministic(self, capsys):
        argv = ["sample", "-w", "1,1,1", "-n", "30", "--reps", "20000", "--seed", "4",
                "--stat", "signs", "--format", "json"]
        _, a, _ = run(capsys, *argv)
        _, b, _ = run(capsys, *argv)
        assert a == b
        data = json.loads(a)
        assert data["tv"] < 0.03 and data["chi2_pvalue"] > 1e-4 and data["acceptance_rate"] == 1.0

    def test_bridge(self, capsys):
        code, out, _ = run(capsys, "sample", "-w", "1,1,1", "-n", "10", "--reps", "20000",
                           "--stat", "signs", "--family", "bridge", "--format", "json")
        data = json.loads(out)
        assert code == 0
        assert data["acceptance_rate"] == pytest.approx(data["exact_acceptance_rate"], abs=0.02)

    def test_meander_rejected(self, capsys):
        assert run(capsys, "sample", "-w", "1,1,1", "-n", "5", "--stat", "height",
                   "--family", "meander")[0] == 2


class TestSchemeCheck:
    def test_builtin(self, capsys):
        code, out, _ = run(capsys, "scheme-check", "--builtin", "returns", "-w", "1,1,1")
        data = json.loads(out)
        assert code == 0 and data["passed"]
        assert data["sigma"] == pytest.approx(1.2247, abs=5e-5)

    def test_failing_instance(self, capsys, tmp_path):
        f = tmp_path / "inst.json"
        f.write_text(json.dumps({"rho": "1/3", "g": 0, "g_z": -3, "g_u": 1, "g_uu": 0,
                                 "h": 0, "h_u": -1}))
        code, out, _ = run(capsys, "scheme-check", "--instance", str(f))
        data = json.loads(out)
        assert code == 1 and "g_u(rho,1) != 0" in data["violations"]

    @pytest.mark.parametrize("content", ["not json", "[1, 2]", '{"rho": 1}'])
    def test_malformed_instance(self, capsys, tmp_path, content):
        f = tmp_path / "bad.json"
        f.write_text(content)
        assert run(capsys, "scheme-check", "--instance", str(f))[0] == 2

    def test_nonzero_drift_builtin(self, capsys):
        assert run(capsys, "scheme-check", "--builtin", "returns", "-w", "1,1,2")[0] == 2

    def test_needs_exactly_one_source(self, capsys):
        assert run(capsys, "scheme-check")[0] == 2


class TestConfig:
    def test_file_supplies_options(self, capsys, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("# unit weights\nweights = 1,1,1\nn = 2\nstat = returns\n")
        code, out, _ = run(capsys, "enumerate", "--config", str(cfg))
        assert code == 0 and [int(r["count"]) for r in csv_rows(out)] == [4, 4, 1]

    def test_flags_override_file(self, capsys, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("weights = 1,1,1\nn = 2\nformat = json\n")
        code, out, _ = run(capsys, "enumerate", "--config", str(cfg), "-n", "3", "--format", "csv")
        assert code == 0 and sum(int(r["count"]) for r in csv_rows(out)) == 27

    @pytest.mark.parametrize("content", ["weights 1,1,1\n", "colour = red\n"])
    def test_bad_file(self, capsys, tmp_path, content):
        cfg = tmp_path / "run.cfg"
        cfg.write_text(content)
        assert run(capsys, "enumerate", "--config", str(cfg))[0] == 2

    def test_missing_file(self, capsys, tmp_path):
        assert run(capsys, "enumerate", "--config", str(tmp_path / "nope.cfg"))[0] == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "motzkin_lab", "enumerate", "-w", "1,1,1",
                           "-n", "4", "--family", "bridge"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stderr == ""
    assert sum(int(r["count"]) for r in csv_rows(proc.stdout)) == 19


def test_threads_env_is_honoured():
    env_cmd = [sys.executable, "-m", "motzkin_lab", "converge", "-w", "1,1,1", "--stat", "signs",
               "-n", "100,200"]
    a = subprocess.run(env_cmd, capture_output=True, text=True, env={"MOTZKIN_LAB_THREADS": "1"})
    b = subprocess.run(env_cmd, capture_output=True, text=True, env={"MOTZKIN_LAB_THREADS": "4"})
    assert a.returncode == 0 and a.stdout == b.stdout


def test_bad_threads_env_is_usage_error(capsys, monkeypatch):
    monkeypatch.setenv("MOTZKIN_LAB_THREADS", "lots")
    code, _, err = run(capsys, "predict", "-w", "1,1,1", "--stat", "height")
    assert code == 2 and "MOTZKIN_LAB_THREADS" in err
