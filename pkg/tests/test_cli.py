import csv
import io
import json

import pytest

from ramsey_induced.cli import main
from ramsey_induced.graph import cycle_graph, graph6_decode, graph6_encode
from ramsey_induced.harness import ExperimentConfig, IsoCountCache, experiment_sweep, generate
from ramsey_induced.pipeline import parse_certificate, verify_certificate


@pytest.fixture
def c5_file(tmp_path):
    p = tmp_path / "g.g6"
    p.write_text(graph6_encode(cycle_graph(5)) + "\n")
    return str(p)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_rm(capsys, c5_file, tmp_path):
    out_csv = tmp_path / "rm.csv"
    code, out, _ = run(capsys, "rm", "--in", c5_file, "--csv", str(out_csv))
    assert code == 0
    assert out.splitlines()[0] == "Rm 2"
    assert out.splitlines()[1].startswith("witness ")
    rows = list(csv.DictReader(out_csv.open()))
    assert rows[0]["rm"] == "2"


def test_count_iso(capsys, c5_file):
    code, out, _ = run(capsys, "count-iso", "--in", c5_file)
    assert code == 0 and out.strip() == "8"


def test_count_iso_cache(capsys, c5_file, tmp_path, monkeypatch):
    monkeypatch.setenv("RAMSEY_INDUCED_CACHE", str(tmp_path / "cache"))
    run(capsys, "count-iso", "--in", c5_file)
    assert IsoCountCache(str(tmp_path / "cache")).get(graph6_encode(cycle_graph(5))) == 8
    code, out, _ = run(capsys, "count-iso", "--in", c5_file)
    assert out.strip() == "8"


def test_count_iso_over_cap(capsys):
    code, _, err = run(capsys, "count-iso", "--gen", "empty:20")
    assert code == 2 and "cap" in err
    code, out, _ = run(capsys, "count-iso", "--gen", "gnp:20:0.5", "--sample", "50")
    assert code == 0 and "lower bound" in out


def test_pipeline_verified(capsys, tmp_path):
    cert_path = tmp_path / "cert.txt"
    code, out, _ = run(capsys, "pipeline", "--gen", "gnp:64:0.5", "--c1", "1", "--seed", "42", "--verify",
                       "--out", str(cert_path))
    assert code == 0
    assert out.rstrip().endswith("VERIFIED")
    cert, g = parse_certificate(cert_path.read_text())
    assert g == generate("gnp:64:0.5", 42) and verify_certificate(g, cert)[0]
    code, out, _ = run(capsys, "verify", "--cert", str(cert_path))
    assert code == 0 and out.rstrip().endswith("VERIFIED")


def test_pipeline_desk_trace(capsys):
    code, out, _ = run(capsys, "pipeline", "--gen", "empty:32", "--m1", "2", "--m2", "2", "--trace", "--verify")
    assert code == 0
    assert "color independent" in out
    assert "trace branch blocks" in out
    assert "VERIFIED" in out


def test_verify_rejects_tampered(capsys, tmp_path):
    cert_path = tmp_path / "cert.txt"
    run(capsys, "pipeline", "--gen", "complete:32", "--m1", "2", "--m2", "2", "--out", str(cert_path))
    text = cert_path.read_text()
    lines = text.splitlines()
    g6 = [ln for ln in lines if ln.startswith("graph6 ")][0]
    bad = text.replace(g6, "graph6 " + graph6_encode(generate("empty:32")))
    cert_path.write_text(bad)
    code, out, _ = run(capsys, "verify", "--cert", str(cert_path))
    assert code == 1 and "REJECTED" in out


def test_es_bound_constants_extract(capsys):
    assert run(capsys, "es-bound", "3", "3")[1].strip() == "6"
    code, out, _ = run(capsys, "constants", "--c1", "0.5")
    assert "m1 4" in out.splitlines()
    code, out, _ = run(capsys, "ramsey-extract", "--gen", "cycle:5", "--r1", "3", "--r2", "3")
    assert code == 0 and out.strip() == "failure"
    code, out, _ = run(capsys, "ramsey-extract", "--gen", "complete:6", "--r1", "3", "--r2", "3")
    assert out.startswith("clique")


def test_bipartite(capsys):
    code, out, _ = run(capsys, "bipartite", "--gen", "kbip:2:2")
    assert code == 0 and out.splitlines()[0] == "Bipartite 2"


def test_gen_blowup_witness(capsys, tmp_path):
    code, out, _ = run(capsys, "gen", "cycle:5")
    assert graph6_decode(out.strip()) == cycle_graph(5)
    code, out, err = run(capsys, "blowup", "--gen", "cycle:5", "--m", "2")
    assert graph6_decode(out.strip()).n == 10 and "243" in err
    code, out, _ = run(capsys, "witness", "--n", "6", "--r", "3", "--trials", "20")
    assert code == 0 and out.strip() == "failure"
    code, out, _ = run(capsys, "witness", "--n", "5", "--r", "3", "--trials", "500")
    assert graph6_decode(out.strip()).n == 5


@pytest.mark.parametrize("argv", [
    ["rm", "--in", "/nonexistent/file.g6"],
    ["rm", "--gen", "bogus:4"],
    ["rm", "--gen", "g6:B!"],
    ["constants", "--c1", "-1"],
    ["constants", "--c4", "3", "--c3", "1"],
])
def test_bad_input_exit_2(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_malformed_graph6_file(capsys, tmp_path):
    p = tmp_path / "bad.g6"
    p.write_text("Bw?\n")
    code, _, err = run(capsys, "rm", "--in", str(p))
    assert code == 2 and "graph6" in err


def test_unknown_flag_exits_nonzero():
    with pytest.raises(SystemExit) as exc:
        main(["rm", "--bogus"])
    assert exc.value.code != 0


def test_invariant_violation_exit_3(capsys, monkeypatch):
    import ramsey_induced.pipeline.run as run_mod
    monkeypatch.setattr(run_mod, "uniformity_violations", lambda *a, **k: [(0, 0, 1, 0)])
    code, _, err = run(capsys, "pipeline", "--gen", "empty:16", "--m1", "2", "--m2", "2")
    assert code == 3 and "invariant" in err


def test_sweep_zero_trials_header_only(capsys):
    code, out, _ = run(capsys, "sweep", "--trials", "0")
    assert code == 0 and len(out.splitlines()) == 1 and out.startswith("row,family,n")


def test_sweep_config_round_trip_and_determinism(capsys, tmp_path):
    cfg_path = tmp_path / "cfg.json"
    out1 = tmp_path / "a.csv"
    out2 = tmp_path / "b.csv"
    run(capsys, "sweep", "--family", "gnp:{n}:0.5", "--family", "empty:{n}", "--n", "16", "--n", "32",
        "--trials", "3", "--m1", "2", "--m2", "2", "--write-config", str(cfg_path), "--out", str(out1))
    cfg = json.loads(cfg_path.read_text())
    assert cfg["families"] == ["gnp:{n}:0.5", "empty:{n}"] and cfg["overrides"] == {"m1": "2", "m2": "2"}
    run(capsys, "sweep", "--config", str(cfg_path), "--out", str(out2))
    assert out1.read_bytes() == out2.read_bytes()
    rows = list(csv.DictReader(io.StringIO(out1.read_text())))
    assert len(rows) == 12
    assert all(r["verify"] == "true" for r in rows)
    assert [int(r["row"]) for r in rows] == list(range(12))


def test_sweep_parallel_matches_serial():
    cfg = ExperimentConfig(families=["gnp:{n}:0.5", "c5blowup:{n}"], sizes=[20], trials=3, overrides={"m1": 2, "m2": 2})
    serial = experiment_sweep(cfg)
    cfg.workers = 2
    assert experiment_sweep(cfg) == serial


def test_sweep_row_errors_are_recorded():
    cfg = ExperimentConfig(families=["bogus:{n}", "empty:{n}"], sizes=[8], trials=1, overrides={"m1": 2, "m2": 2})
    rows = list(csv.DictReader(io.StringIO(experiment_sweep(cfg))))
    assert rows[0]["status"].startswith("error:") and rows[1]["status"] == "homogeneous"


def test_config_rejects_unknown_keys():
    with pytest.raises(ValueError):
        ExperimentConfig.from_json('{"colour": 1}')
    with pytest.raises(ValueError):
        ExperimentConfig.from_json('{"trials": -1}')
