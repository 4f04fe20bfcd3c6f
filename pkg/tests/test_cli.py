import json
import os

from mslab.cli import main


def _spec(tmp_path, obj):
    p = tmp_path / "spec.json"
    p.write_text(json.dumps(obj))
    return str(p)


def test_run_writes_bundle(tmp_path, capsys):
    assert main(["run", "--scenario", "remark3", "--out", str(tmp_path)]) == 0
    assert (tmp_path / "remark3.json").exists()
    assert (tmp_path / "remark3_acsums.csv").exists()


def test_run_config_rejected(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"params": {"alpha": 3.0, "beta": 2.0}}))
    code = main(["run", "--scenario", "section3_example", "--config", str(cfg), "--out", str(tmp_path)])
    assert code == 2
    assert "alpha" in capsys.readouterr().err


def test_eval_domain_error(tmp_path, capsys):
    spec = _spec(tmp_path, {"domain": "disc", "zeros": [[0.5, 0.0]]})
    assert main(["eval", "--spec", spec, "--points", "2,0"]) == 3


def test_eval_value(tmp_path, capsys):
    spec = _spec(tmp_path, {"domain": "disc", "zeros": [[0.5, 0.0], [-0.5, 0.0]]})
    assert main(["eval", "--spec", spec, "--points", "0,0"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert abs(out["values"][0][0] - 0.25) < 1e-15


def test_ac_trace(tmp_path, capsys):
    spec = _spec(tmp_path, {"domain": "half_plane",
                            "tail_model": {"name": "remark3", "truncation_N": 100}})
    csv = tmp_path / "t.csv"
    assert main(["ac", "--spec", spec, "--point", "inf", "--order", "1", "--csv", str(csv)]) == 0
    assert json.loads(capsys.readouterr().out)["verdict"] == "diverged"
    assert csv.read_text().startswith("index,value\n")


def test_clark_and_transfer(tmp_path, capsys):
    spec = _spec(tmp_path, {"domain": "disc", "zeros": [[0.0, 0.0], [0.0, 0.0]]})
    assert main(["clark", "--spec", spec]) == 0
    atoms = json.loads(capsys.readouterr().out)["atoms"]
    assert len(atoms) == 2 and abs(atoms[0][2] - 0.5) < 1e-12
    assert main(["transfer", "--spec", spec]) == 0


def test_moments_and_orthopoly(tmp_path, capsys):
    assert main(["moments", "--lattice", "1,1,0,3,400", "--eps", "2"]) == 0
    assert json.loads(capsys.readouterr().out)["verdict"] == "converged"
    atoms = tmp_path / "atoms.json"
    atoms.write_text(json.dumps([[0.0, 0.5], [1.0, 0.5]]))
    assert main(["orthopoly", "--atoms", str(atoms), "--K", "1"]) == 0
    assert abs(json.loads(capsys.readouterr().out)["trace"][-1] - 6.0) < 1e-12


def test_localize_and_geometry(tmp_path, capsys):
    spec = _spec(tmp_path, {"domain": "disc", "zeros": [[0.5, 0.0], [0.0, 0.4]]})
    assert main(["localize", "--spec", spec, "--kernels", "0.1,0", "--region",
                 "stolz_disc:2", "--clip", "0.99"]) == 0
    assert json.loads(capsys.readouterr().out)["count"] >= 0
    assert main(["geometry", "--spec", spec, "--points", "0.1,0;0,0.2;-0.3,0"]) == 0
    assert "riesz_lower" in capsys.readouterr().out


def test_threads_flag(tmp_path):
    assert main(["--threads", "2", "run", "--scenario", "remark3", "--out", str(tmp_path)]) == 0
    assert os.path.exists(tmp_path / "remark3.json")
