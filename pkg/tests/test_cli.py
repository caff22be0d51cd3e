import json
import subprocess
import sys

import pytest

from lanke import cli
from lanke.config import RunConfig, load_config, parse_config_text
from lanke.errors import LankeError
from lanke.linalg import SparseRationalMatrix
from lanke.report import decomposition_latex, latex_partition, render
from lanke.selftest import checks_for, run_selftest


def run_json(capsys, *argv):
    code = cli.run(list(argv))
    out = capsys.readouterr().out
    assert code == 0, out
    return json.loads(out)


def test_dim_33(capsys):
    rep = run_json(capsys, "dim", "--n", "3", "--k", "3")
    assert rep["dim"] == 5
    assert {"n", "k", "m", "basis_size", "relation_rank", "dim", "decomposition", "config"} <= set(rep)
    assert rep["config"]["primes"] == [2147483647, 2147483629]
    assert rep["config"]["max_basis"] == 250_000


def test_dim_with_decomposition(capsys):
    rep = run_json(capsys, "dim", "--n", "2", "--k", "4", "--method", "modular", "--decompose")
    assert rep["dim"] == 6
    assert rep["rank"]["confident"] is True
    assert rep["decomposition"] == {"3,1": 1, "2,1,1": 1}


def test_phi_spectrum_n2(capsys):
    rep = run_json(capsys, "phi-spectrum", "--n", "2")
    assert rep["spectrum"] == {"3": 1, "0": 2}
    assert list(rep["spectrum"]) == ["3", "0"]


def test_char_and_standard_basis(capsys):
    rep = run_json(capsys, "char", "--n", "3", "--k", "3")
    assert rep["decomposition"] == {"2,2,1": 1}
    assert rep["character"]["1,1,1,1,1"] == "5/1"
    rep = run_json(capsys, "standard-basis", "--n", "3")
    assert rep["count"] == rep["catalan"] == 5


def test_garnir_check(capsys):
    rep = run_json(capsys, "garnir", "check", "--shape", "3,2,1", "--mode", "reduced")
    assert rep["quotient_dim"] == rep["f_lambda"] == 16
    rep = run_json(capsys, "garnir", "check", "--shape", "2,2", "--mode", "full", "--standard-only")
    assert rep["quotient_dim"] == 3 and rep["agrees"] is False


def test_conjecture_check(capsys):
    rep = run_json(capsys, "conjecture", "check", "--n", "3", "--k", "3")
    assert rep["verdict"] == "match"
    assert rep["predicted_decomposition"] == {"2,2,1": 1}
    cli.run(["conjecture", "check", "--n", "3", "--k", "3", "--format", "text"])
    text = capsys.readouterr().out
    assert "verdict: match" in text and "S^(2,2,1)" in text


def test_usage_errors(capsys):
    assert cli.run(["dim", "--n", "3", "--k", "3", "--bogus"]) == 1
    err = capsys.readouterr().err
    assert "usage:" in err and "--bogus" in err
    assert cli.run(["nonsense"]) == 1
    assert cli.run(["dim", "--n", "1", "--k", "3"]) == 1
    assert cli.run(["dim", "--n", "3", "--k", "3", "--primes", "4,6"]) == 1
    assert cli.run(["garnir", "check", "--shape", "1,2"]) == 1


def test_size_limit_is_a_usage_error(capsys):
    assert cli.run(["dim", "--n", "3", "--k", "5", "--max-basis", "100"]) == 1
    assert "15400" in capsys.readouterr().err


def test_theorem_violation_exit_code(capsys, monkeypatch):
    from lanke import engine

    def broken(*a, **k):
        raise cli.TheoremViolation("forced")

    monkeypatch.setattr(engine, "phi_spectrum", broken)
    assert cli.run(["phi-spectrum", "--n", "3"]) == 2
    assert "forced" in capsys.readouterr().err


def test_output_is_deterministic(capsys, tmp_path):
    outs = []
    for threads in ("1", "2"):
        path = tmp_path / f"out{threads}.json"
        assert cli.run(["dim", "--n", "2", "--k", "5", "--method", "modular", "--threads", threads, "-o", str(path)]) == 0
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]
    assert cli.run(["dim", "--n", "2", "--k", "5", "--method", "modular", "--backend", "python", "-o", str(tmp_path / "py.json")]) == 0
    assert (tmp_path / "py.json").read_bytes() == outs[0]


def test_export_relations(capsys, tmp_path):
    path = tmp_path / "rel.txt"
    run_json(capsys, "dim", "--n", "2", "--k", "4", "--export-relations", str(path))
    M = SparseRationalMatrix.loads(path.read_text())
    assert (M.n_rows, M.n_cols) == (30, 15)


@pytest.mark.parametrize("fmt", ["csv", "latex", "text"])
def test_formats(capsys, fmt):
    assert cli.run(["char", "--n", "3", "--k", "3", "--format", fmt]) == 0
    out = capsys.readouterr().out
    if fmt == "latex":
        assert "S^{2^{2}1}" in out
    elif fmt == "csv":
        assert out.startswith("key,value\n") and "decomposition.2,2,1" in out.replace('"', "")
    else:
        assert "S^(2,2,1)" in out


def test_config_file(capsys, tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# bounds\nmax-basis = 5000\nprimes = 1048583, 2147483647\nformat = json\n")
    rep = run_json(capsys, "dim", "--n", "3", "--k", "3", "--config", str(cfg))
    assert rep["config"]["max_basis"] == 5000
    assert rep["config"]["primes"] == [1048583, 2147483647]


def test_config_validation(tmp_path):
    with pytest.raises(LankeError):
        RunConfig(max_basis=0)
    with pytest.raises(LankeError):
        RunConfig(format="xml")
    with pytest.raises(LankeError):
        RunConfig(primes=(15,))
    with pytest.raises(LankeError):
        parse_config_text("nope")
    with pytest.raises(LankeError):
        parse_config_text("colour = blue")
    assert parse_config_text("exact_verify = yes") == {"exact_verify": True}


def test_thread_env_override():
    assert load_config(env={"LANKE_THREADS": "3"}).threads == 3
    assert load_config(env={"LANKE_THREADS": "3"}, threads=2).threads == 2
    assert "threads" not in RunConfig(threads=4).to_json()


def test_latex_rendering():
    assert latex_partition("2,2,1") == "2^{2}1"
    assert latex_partition("12,1") == "12,1"
    assert decomposition_latex({"3,3,1": 1, "2,1": 2}) == r"S^{3^{2}1} + 2\,S^{21}"
    assert decomposition_latex(None) == r"\text{n/a}"
    assert "\\_" in render({"basis_size": 3}, "latex")


def test_selftest_quick(capsys):
    assert cli.run(["selftest", "--level", "quick"]) == 0
    out = capsys.readouterr().out
    names = [name for name, _ in checks_for("quick")]
    for name in names:
        assert f"{name}: pass" in out


def test_selftest_fault_injection(capsys):
    assert cli.run(["selftest", "--inject-fault", "phi-diagonal"]) == 2
    captured = capsys.readouterr()
    assert "lemma-2.3 closed form n<=4: FAIL" in captured.out
    assert "lemma-2.3" in captured.err


def test_selftest_json(capsys):
    results = run_selftest("quick")
    assert all(r.passed for r in results)
    rep = run_json(capsys, "selftest", "--format", "json")
    assert rep["passed"] is True and len(rep["checks"]) == len(results)


def test_full_level_contains_rho35():
    assert "rho(3,5)=1077" in [name for name, _ in checks_for("full")]
    with pytest.raises(LankeError):
        checks_for("medium")


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "lanke", "phi-spectrum", "--n", "2"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["spectrum"] == {"3": 1, "0": 2}
    proc = subprocess.run([sys.executable, "-m", "lanke", "dim", "--wat"], capture_output=True, text=True)
    assert proc.returncode == 1
