import csv
import json
import subprocess
import sys

import numpy as np
import pytest

from powchar.cli import main, parse_dist
from powchar.distributions import power, sample, sinshape
from powchar.fileio import DataFileError, RunManifest, dumps, manifest_path, read_sample_file
from powchar.rng import GENERATOR_VERSION, McConfig


def run(*argv):
    return main(list(argv))


def read_csv(path):
    with open(path, newline="", encoding="utf-8") as fh:
        return list(csv.reader(fh))


class TestVerify:
    def test_numeric_power(self, tmp_path):
        out = tmp_path / "r.json"
        assert run("verify", "--dist", "pow:2", "--k", "2", "--n", "5", "--mode", "numeric", "--out", str(out)) == 0
        report = json.loads(out.read_text())
        assert report["schema"] == 1
        assert report["report"]["verdict"] == "consistent"
        assert manifest_path(out).exists()

    def test_chain_uniform(self, tmp_path):
        out = tmp_path / "c.json"
        code = run("verify", "--dist", "pow:1", "--k", "1", "--n", "2", "--mode", "chain",
                   "--N", "100000", "--seed", "7", "--out", str(out))
        assert code == 0
        manifest = RunManifest.load(manifest_path(out))
        assert manifest.seed == 7 and manifest.generator_version == GENERATOR_VERSION

    def test_control_inconsistent(self, tmp_path):
        assert run("verify", "--dist", "expshape", "--k", "1", "--n", "3", "--mode", "numeric",
                   "--out", str(tmp_path / "x.json")) == 3

    def test_mc_mode(self, tmp_path, capsys):
        assert run("verify", "--dist", "sinshape", "--k", "1", "--n", "3", "--mode", "mc", "--N", "20000") == 3
        printed = json.loads(capsys.readouterr().out)
        assert printed["report"]["method"] == "mc"

    def test_numerical_failure_exit_2(self, tmp_path):
        # an unreachable tolerance exhausts the bisection depth
        assert run("verify", "--dist", "sinshape", "--k", "1", "--n", "3", "--abs-tol", "1e-300",
                   "--out", str(tmp_path / "f.json")) == 2

    @pytest.mark.parametrize("argv", [
        ["verify", "--dist", "pow:2", "--k", "0", "--n", "5"],
        ["verify", "--dist", "nope"],
        ["verify", "--dist", "pow:-1"],
        ["verify", "--dist", "par:2", "--k", "1", "--n", "2"],
        ["verify"],
        ["bogus"],
    ])
    def test_usage_errors(self, argv, capsys):
        with pytest.raises(SystemExit) as exc:
            code = run(*argv)
            raise SystemExit(code)
        assert exc.value.code == 1
        assert capsys.readouterr().err


class TestTable:
    def test_h_constant(self, tmp_path):
        out = tmp_path / "h.csv"
        assert run("table", "--dist", "pow:2", "--what", "h", "--grid", "11", "--out", str(out)) == 0
        rows = read_csv(out)
        assert rows[0] == ["x", "value"] and len(rows) == 12
        assert all(float(v) == 2.0 for _, v in rows[1:])

    def test_cdf(self, tmp_path):
        out = tmp_path / "c.csv"
        assert run("table", "--dist", "pow:1", "--k", "1", "--n", "2", "--what", "cdf", "--grid", "3",
                   "--out", str(out)) == 0
        values = {float(x): float(v) for x, v in read_csv(out)[1:]}
        assert values[0.5] == pytest.approx(0.75, abs=1e-15)

    def test_residual(self, tmp_path):
        out = tmp_path / "r.csv"
        assert run("table", "--dist", "expshape", "--what", "residual", "--k", "1", "--n", "3",
                   "--grid", "11", "--out", str(out)) == 0
        assert max(abs(float(v)) for _, v in read_csv(out)[1:]) > 1e-4

    def test_pdf_pareto(self, capsys):
        assert run("table", "--dist", "par:2", "--what", "pdf", "--k", "1", "--n", "2", "--grid", "3") == 0
        lines = capsys.readouterr().out.splitlines()
        assert float(lines[2].split(",")[0]) == pytest.approx(2**0.5)  # median of Par(2)

    def test_tabulated_input(self, tmp_path):
        cdf_file = tmp_path / "cdf.csv"
        xs = np.linspace(0, 1, 201)
        cdf_file.write_text("x,F\n" + "".join(f"{float(x)!r},{float(x) ** 3!r}\n" for x in xs))
        out = tmp_path / "h.csv"
        assert run("table", "--dist", f"table:{cdf_file}", "--what", "h", "--grid", "9", "--out", str(out)) == 0
        assert all(abs(float(v) - 3) < 1e-2 for _, v in read_csv(out)[2:])


class TestRss:
    def test_shape(self, tmp_path):
        out = tmp_path / "m.csv"
        assert run("rss", "--scheme", "maxima", "--n", "3", "--cycles", "5", "--seed", "1", "--out", str(out)) == 0
        rows = read_csv(out)
        assert rows[0] == ["X[1,1]", "X[2,2]", "X[3,3]"]
        assert len(rows) == 6 and all(len(r) == 3 for r in rows)

    def test_rerun_identical_bytes(self, tmp_path):
        out = tmp_path / "m.csv"
        args = ["rss", "--scheme", "maxima", "--n", "3", "--cycles", "5", "--seed", "1", "--out", str(out)]
        run(*args)
        first = out.read_bytes()
        run(*args)
        assert out.read_bytes() == first

    def test_standard_column_means(self, tmp_path):
        out = tmp_path / "s.csv"
        run("rss", "--scheme", "standard", "--n", "4", "--cycles", "10000", "--dist", "pow:1", "--out", str(out))
        m = np.array([[float(v) for v in r] for r in read_csv(out)[1:]])
        i = np.arange(1, 5)
        se = np.sqrt(i * (5 - i) / (25 * 6) / 10_000)
        assert np.all(np.abs(m.mean(axis=0) - i / 5) <= 3 * se)

    def test_seed_from_environment(self, tmp_path, monkeypatch):
        a, b, c = (tmp_path / f"{n}.csv" for n in "abc")
        monkeypatch.setenv("POWCHAR_SEED", "11")
        run("rss", "--scheme", "standard", "--n", "2", "--cycles", "4", "--out", str(a))
        run("rss", "--scheme", "standard", "--n", "2", "--cycles", "4", "--seed", "11", "--out", str(b))
        run("rss", "--scheme", "standard", "--n", "2", "--cycles", "4", "--seed", "12", "--out", str(c))
        assert a.read_bytes() == b.read_bytes() != c.read_bytes()
        assert RunManifest.load(manifest_path(a)).seed == 11


class TestGof:
    def write(self, path, values):
        path.write_text("".join(f"{float(v)!r}\n" for v in values), encoding="utf-8")
        return path

    def test_power_sample(self, tmp_path):
        f = self.write(tmp_path / "p.txt", sample(power(1.7), McConfig(10**5, 0)))
        assert run("gof", str(f), "--seed", "0", "--out", str(tmp_path / "r.json")) == 0

    def test_control_sample(self, tmp_path):
        f = self.write(tmp_path / "s.txt", sample(sinshape(), McConfig(10**5, 0)))
        assert run("gof", str(f), "--seed", "0", "--out", str(tmp_path / "r.json")) == 3

    def test_bad_line_named(self, tmp_path, capsys):
        f = tmp_path / "bad.txt"
        f.write_text("0.5\n0.25\n1.5\n")
        assert run("gof", str(f)) == 1
        assert "bad.txt:3" in capsys.readouterr().err

    def test_too_small(self, tmp_path):
        f = self.write(tmp_path / "small.txt", [0.5] * 10)
        assert run("gof", str(f)) == 1


class TestManifest:
    @pytest.mark.parametrize("argv", [
        ["verify", "--dist", "wiggle", "--k", "1", "--n", "3", "--mode", "mc", "--N", "5000", "--seed", "3"],
        ["verify", "--dist", "pow:0.5", "--k", "2", "--n", "4", "--mode", "numeric"],
        ["table", "--dist", "sinshape", "--what", "residual", "--k", "2", "--n", "4", "--grid", "7"],
        ["rss", "--scheme", "standard", "--n", "3", "--cycles", "40", "--seed", "5", "--literal"],
    ])
    def test_rerun_reproduces_bytes(self, tmp_path, argv):
        out = tmp_path / "first.out"
        run(*argv, "--out", str(out))
        manifest = manifest_path(out)
        data = json.loads(manifest.read_text())
        assert data["command"] == argv[0] and data["outputs"] == [str(out)]
        replay = tmp_path / "second.out"
        run("rerun", str(manifest), "--out", str(replay))
        assert replay.read_bytes() == out.read_bytes()

    def test_gof_rerun(self, tmp_path):
        f = tmp_path / "d.txt"
        f.write_text("".join(f"{float(v)!r}\n" for v in sample(power(2), McConfig(3000, 1))))
        out = tmp_path / "g.json"
        run("gof", str(f), "--k", "1", "--n", "2", "--seed", "4", "--out", str(out))
        replay = tmp_path / "g2.json"
        run("rerun", str(manifest_path(out)), "--out", str(replay))
        assert replay.read_bytes() == out.read_bytes()


def test_dumps_round_trips_floats():
    values = [0.1, 1 / 3, 2.0**-1074, 1e308, -0.0]
    assert json.loads(dumps(values)) == values
    assert dumps({"a": float("nan")}).strip() == '{"a": null}'


def test_read_sample_file_skips_blank(tmp_path):
    f = tmp_path / "s.txt"
    f.write_text("0.5\n\n0.25\n")
    np.testing.assert_array_equal(read_sample_file(f), [0.5, 0.25])
    f.write_text("0.5\nabc\n")
    with pytest.raises(DataFileError) as exc:
        read_sample_file(f)
    assert exc.value.line == 2


def test_parse_dist():
    assert parse_dist("pow:2").alpha == 2.0
    assert parse_dist("uniform").alpha == 1.0
    assert parse_dist("par:3").support[0] == 1.0
    for name in ("expshape", "sinshape", "wiggle"):
        assert parse_dist(name).name == name


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "powchar.cli", "table", "--dist", "pow:3",
                           "--what", "h", "--grid", "2"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert float(proc.stdout.splitlines()[1].split(",")[1]) == pytest.approx(3.0)
