import json
from pathlib import Path

import numpy as np

from entrosmote.cli import main
from entrosmote.data import Dataset
from entrosmote.keel import write_dataset

from conftest import KEEL_DIR, two_blobs

IRIS = str(KEEL_DIR / "iris.dat")


def run(argv, capsys):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestBalance:
    def test_iris_mismote_auto(self, tmp_path, capsys):
        out = tmp_path / "balanced.csv"
        code, stdout, _ = run([
            "balance", "--input", IRIS, "--positive", "1",
            "--method", "mismote", "--amount", "auto", "--seed", "1",
            "--output", str(out),
        ], capsys)
        assert code == 0
        assert "IR = 1.0000" in stdout
        assert "+90 synthetic rows" in stdout
        manifest = json.loads(Path(str(out) + ".manifest.json").read_text())
        assert manifest["n_synthetic"] == 90
        assert manifest["resolved_amount"] == 300

    def test_amount_100_doubles_minority(self, tmp_path, capsys):
        d = two_blobs(n_per=30, minority=10, separation=8.0, seed=2)
        src = tmp_path / "in.csv"
        src.write_text(write_dataset(d, "csv"))
        out = tmp_path / "out.csv"
        code, stdout, _ = run([
            "balance", "--input", str(src), "--method", "smote",
            "--amount", "100", "--seed", "0", "--output", str(out),
        ], capsys)
        assert code == 0
        assert "+10 synthetic rows" in stdout

    def test_missing_input_usage_error(self, capsys):
        code, _, err = run(["balance", "--method", "smote", "--output", "x.csv"], capsys)
        assert code == 1
        assert "--input" in err

    def test_unknown_method_lists_valid(self, capsys):
        code, _, err = run([
            "balance", "--input", IRIS, "--method", "adasyn", "--output", "x.csv",
        ], capsys)
        assert code == 1
        assert "smote" in err and "resmote" in err

    def test_insufficient_minority_data_error(self, tmp_path, capsys):
        d = Dataset(np.arange(10.0).reshape(5, 2), np.array([True] + [False] * 4))
        src = tmp_path / "tiny.csv"
        src.write_text(write_dataset(d, "csv"))
        code, _, err = run([
            "balance", "--input", str(src), "--method", "smote",
            "--output", str(tmp_path / "o.csv"),
        ], capsys)
        assert code == 2
        assert "minority" in err

    def test_byte_identical_reruns(self, tmp_path, capsys):
        args = lambda out: [
            "balance", "--input", IRIS, "--positive", "1", "--method", "resmote",
            "--amount", "200", "--seed", "5", "--output", str(out),
        ]
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        assert run(args(a), capsys)[0] == 0
        assert run(args(b), capsys)[0] == 0
        assert a.read_bytes() == b.read_bytes()

    def test_manifest_replay_reproduces_output(self, tmp_path, capsys):
        out = tmp_path / "out.csv"
        assert run([
            "balance", "--input", IRIS, "--positive", "1", "--method", "tesmote",
            "--seed", "3", "--output", str(out),
        ], capsys)[0] == 0
        manifest = json.loads(Path(str(out) + ".manifest.json").read_text())
        replay = tmp_path / "replay.csv"
        assert run([
            "balance", "--input", manifest["input"], "--positive", "1",
            "--method", manifest["method"],
            "--amount", str(manifest["resolved_amount"]),
            "--k", str(manifest["resolved_k"]),
            "--seed", str(manifest["seed"]), "--output", str(replay),
        ], capsys)[0] == 0
        assert out.read_bytes() == replay.read_bytes()


class TestEvaluate:
    def test_iris_mismote_structure(self, tmp_path, capsys):
        report = tmp_path / "r.json"
        code, stdout, _ = run([
            "evaluate", "--input", IRIS, "--positive", "1", "--method", "mismote",
            "--folds", "5", "--seed", "7", "--report", str(report),
        ], capsys)
        assert code == 0
        payload = json.loads(report.read_text())
        assert len(payload["cells"]) == 5
        assert payload["mean_auc"] is not None
        assert "mean AUC" in stdout

    def test_identical_invocations_identical_json(self, tmp_path, capsys):
        def go(name):
            path = tmp_path / name
            run(["evaluate", "--input", IRIS, "--positive", "1", "--method", "smote",
                 "--folds", "5", "--seed", "7", "--report", str(path)], capsys)
            return path.read_bytes()

        assert go("a.json") == go("b.json")

    def test_too_many_folds(self, tmp_path, capsys):
        d = two_blobs(n_per=30, minority=3, separation=8.0, seed=4)
        src = tmp_path / "few.csv"
        src.write_text(write_dataset(d, "csv"))
        code, _, err = run([
            "evaluate", "--input", str(src), "--method", "smote",
            "--folds", "20", "--report", str(tmp_path / "r.json"),
        ], capsys)
        assert code == 2
        assert "zero positives" in err


class TestCompare:
    def test_mini_plan(self, tmp_path, capsys):
        d = two_blobs(n_per=40, minority=10, separation=10.0, seed=6)
        (tmp_path / "blobs.csv").write_text(write_dataset(d, "csv"))
        plan = tmp_path / "plan.toml"
        plan.write_text(
            'folds = 5\nseed = 7\nmethods = ["imbalanced", "smote"]\n'
            '[[datasets]]\nname = "blobs"\npath = "blobs.csv"\nformat = "csv"\n'
        )
        out = tmp_path / "grid"
        code, stdout, _ = run(["compare", "--plan", str(plan), "--out", str(out)], capsys)
        assert code == 0
        for name in ("report.json", "report.csv", "report.md"):
            assert (out / name).exists()
        assert "| blobs |" in stdout

    def test_empty_methods_usage_error(self, tmp_path, capsys):
        plan = tmp_path / "plan.toml"
        plan.write_text('methods = []\n[[datasets]]\nname = "x"\npath = "x.csv"\n')
        code, _, err = run(["compare", "--plan", str(plan), "--out", str(tmp_path)], capsys)
        assert code == 1

    def test_missing_dataset_data_error(self, tmp_path, capsys):
        plan = tmp_path / "plan.toml"
        plan.write_text(
            'methods = ["imbalanced"]\n'
            '[[datasets]]\nname = "ghost"\npath = "nope.csv"\nformat = "csv"\n'
        )
        code, _, err = run(["compare", "--plan", str(plan), "--out", str(tmp_path)], capsys)
        assert code == 2
        assert "ghost" in err


class TestInspect:
    def test_iris_shannon_table(self, capsys):
        code, stdout, _ = run([
            "inspect", "--input", IRIS, "--positive", "1", "--entropy", "shannon",
        ], capsys)
        assert code == 0
        lines = [l for l in stdout.splitlines() if l.strip()]
        assert len(lines) == 5  # header + 4 attributes
        for line in lines[1:]:
            gain_v, lambda_v = map(float, line.split()[-2:])
            assert gain_v >= 0 and lambda_v >= 0

    def test_constant_attribute_zero_gain(self, tmp_path, capsys):
        rng = np.random.default_rng(0)
        features = np.column_stack([rng.normal(0, 1, 20), np.full(20, 3.0)])
        labels = np.array([True] * 5 + [False] * 15)
        src = tmp_path / "c.csv"
        src.write_text(write_dataset(Dataset(features, labels), "csv"))
        code, stdout, _ = run(["inspect", "--input", str(src)], capsys)
        assert code == 0
        constant_line = stdout.splitlines()[2]
        assert float(constant_line.split()[-2]) == 0.0

    def test_class_indicator_attribute_maximal_gain(self, tmp_path, capsys):
        rng = np.random.default_rng(1)
        labels = np.array([True] * 8 + [False] * 12)
        features = np.column_stack([rng.normal(0, 1, 20), labels.astype(float)])
        src = tmp_path / "ind.csv"
        src.write_text(write_dataset(Dataset(features, labels), "csv"))
        code, stdout, _ = run(["inspect", "--input", str(src)], capsys)
        assert code == 0
        gains = [float(l.split()[-2]) for l in stdout.splitlines()[1:] if l.strip()]
        assert gains[1] == max(gains) and gains[1] > 0

    def test_alpha_one_usage_error(self, capsys):
        code, _, err = run([
            "inspect", "--input", IRIS, "--positive", "1",
            "--entropy", "renyi", "--alpha", "1.0",
        ], capsys)
        assert code == 1
        assert "alpha" in err
