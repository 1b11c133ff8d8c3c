import json
import subprocess
import sys

import pytest

from ellhyp.cli import main, parse_complex


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.mark.parametrize("text,value", [("0.3", 0.3), ("-2", -2), ("0.2+0.15i", 0.2 + 0.15j),
                                        ("0.3-0.2j", 0.3 - 0.2j), ("0.2,0.15", 0.2 + 0.15j), ("0.5i", 0.5j),
                                        ("1e-3,-2e-1", 1e-3 - 0.2j)])
def test_parse_complex(text, value):
    assert parse_complex(text) == value


def test_parse_complex_rejects_garbage():
    with pytest.raises(ValueError):
        parse_complex("abc")
    with pytest.raises(ValueError):
        parse_complex("1,2,3")


def test_eval_theta_degenerate(capsys):
    code, out, _ = run(capsys, "eval", "theta", "0.3", "0")
    assert code == 0 and out.strip() == "0.7 0.0"


def test_eval_trivial_values(capsys):
    assert run(capsys, "eval", "efac", "a=0.4", "k=0")[1].strip() == "1.0 0.0"
    assert run(capsys, "eval", "vsum", "a=0.4", "n=0", "b=0.3", "b=0.5")[1].strip() == "1.0 0.0"
    assert run(capsys, "eval", "esum", "n=0")[1].strip() == "1.0 0.0"


def test_eval_other_functions(capsys):
    for argv in (["egamma", "0.5", "0.1,0.05", "0.3"],
                 ["sos_weight", "0.3+0.1i", "1", "-1", "1", "-1", "0.7"],
                 ["fused_weight", "2", "2", "0.3", "0.3", "0.3", "0.3", "0.8"],
                 ["beta_integral", "0.7", "0.8", "0.75", "0.7i", "0.6"],
                 ["rfn", "1", "0.7", "0.5", "1.3", "0.6", "0.8", "0.9", "0.4i"]):
        code, out, _ = run(capsys, "eval", *argv)
        assert code == 0
        re_, im_ = out.split()
        float(re_), float(im_)


def test_eval_fifteen_digits(capsys):
    _, out, _ = run(capsys, "eval", "theta", "0.3", "0.2")
    assert all(len(v.lstrip("-").replace(".", "").lstrip("0")) <= 15 for v in out.split())


def test_eval_flags_set_context(capsys):
    a = run(capsys, "eval", "efac", "0.4", "2", "--p", "0.2", "--q", "0.3")[1]
    b = run(capsys, "eval", "efac", "0.4", "2")[1]
    assert a != b


def test_eval_unknown_function(capsys):
    code, _, err = run(capsys, "eval", "nope", "1")
    assert code == 2 and "usage" in err


def test_eval_bad_argument(capsys):
    assert run(capsys, "eval", "theta", "abc")[0] == 2
    assert run(capsys, "eval", "theta", "q=0.3")[0] == 2
    assert run(capsys, "eval", "efac", "0.4")[0] == 2


def test_eval_error_exit(capsys):
    code, _, err = run(capsys, "eval", "egamma", "1")
    assert code == 3 and "pole" in err
    assert run(capsys, "eval", "beta_integral", "0.5", "0.4", "0.6", "0.3", "0.1")[0] == 3


def test_bad_flags(capsys):
    assert run(capsys, "check", "theta", "--trials", "x")[0] == 2
    assert run(capsys, "check", "bogus")[0] == 2
    assert run(capsys)[0] == 2


def test_check_writes_report(capsys, tmp_path):
    path = tmp_path / "r.json"
    code, out, _ = run(capsys, "check", "minton", "--trials", "5", "--seed", "3", "--json", str(path))
    assert code == 0 and "minton" in out
    rep = json.loads(path.read_text())
    assert set(rep) == {"suite", "context", "checks", "summary", "wall_ms"}
    assert set(rep["context"]) == {"p", "q", "tol", "seed"} and rep["context"]["seed"] == 3
    assert rep["summary"] == {"total": 5, "passed": 5, "failed": 0}
    assert set(rep["checks"][0]) == {"id", "params", "residual", "scale", "pass"}


def test_check_frenkel_turaev_example(capsys):
    assert run(capsys, "check", "frenkel-turaev", "--trials", "100", "--seed", "7")[0] == 0


def test_unattainable_tolerance_fails(capsys, tmp_path):
    path = tmp_path / "r.json"
    code, _, _ = run(capsys, "check", "series", "--trials", "3", "--tol", "1e-30", "--json", str(path))
    assert code == 1
    rep = json.loads(path.read_text())
    assert rep["summary"]["failed"] > 0
    assert rep["summary"]["total"] == rep["summary"]["passed"] + rep["summary"]["failed"]


def test_reports_are_reproducible(capsys, tmp_path):
    paths = [tmp_path / "a.json", tmp_path / "b.json"]
    for path, workers in zip(paths, ("1", "4")):
        run(capsys, "check", "sos", "--trials", "4", "--json", str(path), "--no-timestamp", "--workers", workers)
    assert paths[0].read_bytes() == paths[1].read_bytes()
    assert json.loads(paths[0].read_text())["wall_ms"] == 0


def test_config_file_and_override(capsys, tmp_path):
    cfg = tmp_path / "c.cfg"
    cfg.write_text("# settings\nseed = 5\ntrials=2\nq=0.25\nno-timestamp=true\n")
    path = tmp_path / "r.json"
    run(capsys, "check", "gamma", "--config", str(cfg), "--trials", "1", "--json", str(path))
    rep = json.loads(path.read_text())
    assert rep["context"]["seed"] == 5 and rep["context"]["q"] == [0.25, 0.0]
    assert rep["wall_ms"] == 0
    assert {c["params"]["trial"] for c in rep["checks"]} == {0}


def test_config_unknown_key(capsys, tmp_path):
    cfg = tmp_path / "c.cfg"
    cfg.write_text("colour=blue\n")
    assert run(capsys, "check", "theta", "--config", str(cfg))[0] == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "ellhyp", "eval", "theta", "0.3", "0"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.strip() == "0.7 0.0"
