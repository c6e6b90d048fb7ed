import json
import subprocess
import sys

import pytest

from seqcomplexity.cli import ExperimentConfig, main


def run(*args):
    return main([str(a) for a in args])


@pytest.fixture
def out(tmp_path):
    return tmp_path / "out"


class TestGenerate:
    def test_zeckendorf(self, out):
        assert run("generate", "--preset", "zeckendorf", "--n", 21, "--out", out) == 0
        assert out.read_text() == "011101001000110001011\n"
        meta = json.loads((out.parent / "out.json").read_text())
        assert meta["config"]["preset"] == "zeckendorf" and meta["config"]["n"] == 21

    def test_thue_morse(self, out):
        assert run("generate", "--preset", "thue-morse", "--n", 8, "--out", out) == 0
        assert out.read_text() == "01101001\n"

    def test_empty(self, out):
        assert run("generate", "--preset", "thue-morse", "--n", 0, "--out", out) == 0
        assert out.read_text() == ""

    def test_deterministic_random(self, tmp_path):
        a, b = tmp_path / "a", tmp_path / "b"
        run("generate", "--preset", "random", "--seed", 9, "--n", 500, "--out", a)
        run("generate", "--preset", "random", "--seed", 9, "--n", 500, "--out", b)
        assert a.read_bytes() == b.read_bytes()

    def test_morphism_file(self, tmp_path, out):
        spec = tmp_path / "fib.json"
        spec.write_text(json.dumps({"alphabet": ["a", "b"], "images": {"a": "ab", "b": "a"},
                                    "start": "a", "coding": {"a": 0, "b": 1}}))
        assert run("generate", "--morphism", spec, "--n", 13, "--out", out) == 0
        assert out.read_text() == "0100101001001\n"

    def test_bad_morphism(self, tmp_path, out, capsys):
        spec = tmp_path / "bad.json"
        spec.write_text(json.dumps({"alphabet": ["a"], "images": {"a": "a"},
                                    "start": "a", "coding": {"a": 0}}))
        assert run("generate", "--morphism", spec, "--n", 5, "--out", out) == 2
        assert "prolongable" in capsys.readouterr().err

    def test_requires_out(self):
        assert run("generate", "--preset", "thue-morse", "--n", 5) == 2

    def test_regenerate_from_sidecar(self, tmp_path, out):
        run("generate", "--preset", "zeckendorf", "--poly", "1,0,1", "--n", 300, "--out", out)
        again = tmp_path / "again"
        assert run("regenerate", str(out) + ".json", "--out", again) == 0
        assert again.read_bytes() == out.read_bytes()

    def test_sidecar_digest_mismatch(self, out):
        run("generate", "--preset", "zeckendorf", "--n", 30, "--out", out)
        side = out.parent / "out.json"
        meta = json.loads(side.read_text())
        meta["sha256"] = "0" * 64
        side.write_text(json.dumps(meta))
        assert run("regenerate", side) == 1


class TestProfile:
    def test_zeckendorf_steps(self, capsys):
        assert run("profile", "--preset", "zeckendorf", "--n", 100000, "--measure", "moc") == 0
        rows = capsys.readouterr().out.splitlines()
        assert rows[0] == "N,M"
        assert [r.split(",")[0] for r in rows[1:4]] == ["2", "5", "12"]

    def test_thue_morse_squares(self, capsys):
        assert run("profile", "--preset", "thue-morse", "--poly", "0,0,1", "--n", 100000) == 0
        rows = capsys.readouterr().out.splitlines()
        assert [r.split(",")[0] for r in rows[1:5]] == ["2", "4", "10", "23"]

    def test_dense(self, capsys):
        run("profile", "--preset", "thue-morse", "--n", 8, "--dense")
        rows = capsys.readouterr().out.splitlines()
        assert len(rows) == 9 and rows[-1] == "8,3"

    def test_all_zero_input(self, tmp_path, capsys):
        f = tmp_path / "z.txt"
        f.write_text("0" * 50 + "\n")
        assert run("profile", "--input", f, "--n", 50) == 0
        cap = capsys.readouterr()
        assert cap.out == "N,M\n"
        assert "0 steps" in cap.err

    def test_expansion_guard(self):
        assert run("profile", "--preset", "thue-morse", "--n", 6000, "--measure", "expansion") == 2

    def test_moc_guard(self):
        assert run("profile", "--preset", "thue-morse", "--n", 3 * 10**8) == 2

    def test_expansion_thue_morse(self, capsys):
        run("profile", "--preset", "thue-morse", "--n", 200, "--measure", "expansion")
        assert capsys.readouterr().out == "N,M\n2,1\n3,2\n8,3\n10,4\n16,5\n"

    def test_subword(self, capsys):
        run("profile", "--preset", "thue-morse", "--n", 64, "--measure", "subword", "--kmax", 3)
        assert capsys.readouterr().out == "k,p\n1,2\n2,4\n3,6\n"

    def test_linear(self, capsys):
        run("profile", "--preset", "random", "--seed", 1, "--n", 100, "--measure", "linear")
        rows = capsys.readouterr().out.splitlines()
        assert rows[0] == "N,M" and len(rows) > 5

    def test_negative_polynomial_rejected(self, capsys):
        assert run("profile", "--preset", "thue-morse", "--poly", "0,-10,1", "--n", 10) == 2
        assert "negative" in capsys.readouterr().err
        # the first negative value sits at n = 1, outside [0, 1)
        assert run("profile", "--preset", "thue-morse", "--poly", "0,-10,1", "--n", 1) == 0

    def test_ostrowski(self, capsys):
        assert run("profile", "--preset", "ostrowski", "--cf", "1:2", "--n", 200) == 0
        assert capsys.readouterr().out.startswith("N,M\n")

    def test_writes_sidecar(self, out):
        assert run("profile", "--preset", "zeckendorf", "--n", 1000, "--out", out) == 0
        assert (out.parent / "out.json").exists()


class TestSteps:
    def test_sz_steps_last_row(self, capsys):
        run("steps", "--preset", "zeckendorf", "--n", 710648)
        assert capsys.readouterr().out.splitlines()[-1] == "710648,1.618032582"

    def test_tm_squares_steps_row(self, capsys):
        run("steps", "--preset", "thue-morse", "--poly", "0,0,1", "--n", 600000)
        assert "524802,1.999169555" in capsys.readouterr().out.splitlines()

    def test_comma_locale(self, capsys):
        run("steps", "--preset", "zeckendorf", "--n", 100, "--locale-comma")
        assert capsys.readouterr().out.splitlines()[1] == '5,"2,5"'

    def test_significant(self, capsys):
        run("steps", "--preset", "zeckendorf", "--poly", "0,0,1", "--n", 20000, "--significant", 9)
        assert '18367,40.9977679' in capsys.readouterr().out.splitlines()

    def test_header_only(self, capsys):
        run("steps", "--preset", "zeckendorf", "--n", 3)
        assert capsys.readouterr().out == "N,ratio\n"


class TestBoundAndFit:
    def test_bound_report(self, out):
        assert run("bound", "--preset", "zeckendorf", "--n", 20000, "--bound", "sz-linear",
                   "--lo", 5, "--out", out) == 0
        data = json.loads(out.read_text())
        assert data["violations"] == [] and data["range"] == [5, 20000]

    def test_bound_failure_exit(self, capsys):
        assert run("bound", "--preset", "zeckendorf", "--n", 1000, "--bound", "sz-linear",
                   "--lo", 4) == 1
        assert json.loads(capsys.readouterr().out)["violations"] == [4]

    def test_linear_fit(self, capsys):
        assert run("fit", "--preset", "zeckendorf", "--n", 100000, "--model", "linear") == 0
        rep = json.loads(capsys.readouterr().out)
        assert rep["coefficient"] == pytest.approx(0.27639, abs=0.005)

    def test_power_fit(self, capsys):
        assert run("fit", "--preset", "thue-morse", "--poly", "0,0,1", "--n", 200000) == 0
        assert json.loads(capsys.readouterr().out)["exponent"] == pytest.approx(0.5, abs=0.05)

    def test_degenerate_fit(self, tmp_path, capsys):
        f = tmp_path / "z.txt"
        f.write_text("0001\n")
        assert run("fit", "--input", f, "--n", 4) == 2
        assert json.loads(capsys.readouterr().out)["error"] == "insufficient-steps"


class TestVerify:
    def test_suite_passes(self, capsys):
        assert run("verify", "two-lucas-parity", "lemma-2.6") == 0
        out = capsys.readouterr().out
        assert "PASS two-lucas-parity" in out and "0 failures" in out

    def test_unknown_suite(self):
        assert run("verify", "nope") == 2


class TestUsage:
    def test_bad_arguments(self):
        assert run("profile", "--preset", "zeckendorf") == 2
        assert run("nope") == 2
        assert run("profile", "--preset", "zeckendorf", "--morphism", "x", "--n", 5) == 2
        assert run("profile", "--preset", "moon", "--n", 5) == 2

    def test_config_round_trip(self):
        cfg = ExperimentConfig(command="profile", n=10, preset="zeckendorf", poly=[0, 0, 1])
        assert ExperimentConfig.from_dict(cfg.to_dict()) == cfg

    def test_module_entry_point(self, tmp_path):
        out = tmp_path / "m.txt"
        proc = subprocess.run([sys.executable, "-m", "seqcomplexity", "generate", "--preset",
                               "thue-morse", "--n", "4", "--out", str(out)], capture_output=True)
        assert proc.returncode == 0 and out.read_text() == "0110\n"
