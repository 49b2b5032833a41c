import io
from dataclasses import replace

import numpy as np
import pytest

from sgpower.cli import main, EXIT_OK, EXIT_CONFIG, EXIT_DOMAIN
from sgpower.groups import read_subgroup
from sgpower.simulation import figures, read_results, RESULT_COLUMNS


def run(*argv):
    out = io.StringIO()
    code = main([str(a) for a in argv], out=out)
    return code, out.getvalue()


def _values(text):
    return dict(line.split("=", 1) for line in text.splitlines()
                if line and not line.startswith("#"))


@pytest.fixture
def data_file(tmp_path):
    rng = np.random.default_rng(0)
    X = rng.standard_normal((8, 5))
    X[:, 0] += 3
    path = tmp_path / "data.csv"
    np.savetxt(path, X, delimiter=",")
    return path


def test_releff():
    code, text = run("releff", "--n", 32, "--p", 10000, "--alpha", 0.05)
    assert code == EXIT_OK
    assert "# n=32" in text
    assert "# seed=0" in text
    values = _values(text)
    assert abs(float(values["mu_os"]) - 0.7986) < 1e-3
    assert float(values["mu_h"]) > float(values["mu_os"])
    assert values["favours"] == "oracle_subgroup"


def test_construct_stdout():
    code, text = run("construct", "--n", 32, "--size", 32, "--strategy",
                     "sylvester")
    assert code == EXIT_OK
    assert "n=32 size=32 class=Oracle" in text
    assert "# seed=0" in text


def test_construct_failure_writes_nothing():
    code, text = run("construct", "--n", 12, "--size", 16, "--strategy",
                     "nested")
    assert code == EXIT_CONFIG
    assert text == ""


def test_construct_file(tmp_path):
    path = tmp_path / "s.txt"
    code, text = run("construct", "--n", 16, "--size", 32, "--strategy",
                     "nonpositive", "--out", path)
    assert code == EXIT_OK
    assert "# class=NonPositive" in text
    assert read_subgroup(path).size == 32
    assert path.read_text().startswith("n=16 size=32 class=NonPositive\n")


def test_maxt_single_reference_element_rejects_nothing(data_file):
    code, text = run("maxt", "--data", data_file, "--mc", 1)
    assert code == EXIT_OK
    assert "# rejections=0" in text
    rows = [line for line in text.splitlines() if not line.startswith("#")]
    assert rows[0] == "hypothesis,t,p_value,reject"
    assert all(row.endswith(",false") for row in rows[1:])
    assert len(rows) == 6


def test_maxt_with_subgroup_file(tmp_path, data_file):
    group = tmp_path / "g.txt"
    assert run("construct", "--n", 8, "--size", 16, "--strategy",
               "nonpositive", "--out", group)[0] == EXIT_OK
    code, text = run("maxt", "--data", data_file, "--subgroup", group,
                     "--alpha", 0.0625)
    assert code == EXIT_OK
    assert "# reference=" in text


def test_single_tests_full_group(data_file):
    code, text = run("test", "--data", data_file, "--full", "--alpha", 0.1)
    assert code == EXIT_OK
    rows = [line.split(",") for line in text.splitlines()
            if not line.startswith("#")][1:]
    assert rows[0][-1] == "true"
    assert all(float(row[2]) >= 1 / 256 for row in rows)


def test_power_output_is_reproducible():
    argv = ("power", "--n", 8, "--p", 3, "--mu", 0.5, "--reps", 20,
            "--n-draws", 20, "--seed", 4, "--omit-runtime")
    first, second = run(*argv), run(*argv)
    assert first == second
    values = _values(first[1])
    assert "runtime_s" not in values
    assert 0 <= float(values["power"]) <= 1
    assert "# seed=4" in first[1]


def test_power_from_config(tmp_path):
    config = tmp_path / "s.toml"
    config.write_text('n = 16\np = 4\nmu_value = 0.5\nreps = 10\n'
                      'strategy = "sylvester"\nsize = 16\nalpha = 0.0625\n')
    code, text = run("power", "--config", config, "--analytic")
    assert code == EXIT_OK
    values = _values(text)
    assert "analytic_oracle" in values and "oracle_limit" in values


def test_figure_is_byte_identical(tmp_path, monkeypatch):
    small = [replace(pt, scenario=replace(pt.scenario, reps=5))
             for pt in figures.figure_points(4) if pt.x == 1.0][:3]
    monkeypatch.setattr(figures, "figure_points",
                        lambda figure_id, scale, seed: small)
    paths = [tmp_path / "a.csv", tmp_path / "b.csv"]
    for path in paths:
        code, _ = run("figure", "--id", 4, "--out", path, "--omit-runtime",
                      "--threads", 2 if path.name == "b.csv" else 1)
        assert code == EXIT_OK
    assert paths[0].read_bytes() == paths[1].read_bytes()
    assert list(read_results(paths[0]).columns) == RESULT_COLUMNS


@pytest.mark.parametrize("argv", [
    ("releff", "--n", 32, "--p", 1000, "--bogus"),
    ("power", "--p", 10),
    ("power", "--config", "missing.toml"),
    ("construct", "--n", 32, "--size", 64, "--strategy", "sylvester"),
    ("figure", "--id", 7),
    (),
])
def test_config_errors(argv):
    assert run(*argv)[0] == EXIT_CONFIG


def test_domain_error():
    assert run("releff", "--n", 32, "--p", 2)[0] == EXIT_DOMAIN


def test_version():
    assert run("--version")[0] == EXIT_OK
