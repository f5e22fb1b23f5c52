import json

import pytest

from koszul import cli
from koszul.errors import ConformanceMismatch

SO3_ROWS = [
    [0, 1, 0, -1, 0, 0, 0, 0, 0],
    [0, 0, 1, 0, 0, 0, -1, 0, 0],
    [0, 0, 0, 0, 0, 1, 0, -1, 0],
]


def run_main(capsys, argv):
    code = cli.main(argv)
    return code, capsys.readouterr().out


def test_report_envelope(monkeypatch):
    monkeypatch.delenv("KOSZUL_SEED", raising=False)
    rep = cli.run(["check-lie", "--catalog", "so3"])
    assert sorted(rep) == ["command", "inputs", "result", "schema", "seed"]
    assert rep["schema"] == "koszul-report/1"
    assert rep["command"] == ["check-lie", "--catalog", "so3"]
    assert rep["seed"] == 7
    assert len(rep["inputs"]["sha256"]) == 64
    assert rep["result"] == {"valid": True, "dim": 3}


def test_seed_resolution(monkeypatch):
    monkeypatch.setenv("KOSZUL_SEED", "123")
    rep = cli.run(["check-lie", "--catalog", "so3"])
    assert rep["seed"] == 123
    rep = cli.run(["check-lie", "--catalog", "so3", "--seed", "5"])
    assert rep["seed"] == 5


def test_json_output_deterministic_bytes(capsys):
    argv = ["invariants", "--catalog", "so3", "--which", "bimetric",
            "--seed", "11"]
    code1, out1 = run_main(capsys, argv)
    code2, out2 = run_main(capsys, argv)
    assert code1 == code2 == 0
    assert out1 == out2
    doc = json.loads(out1)
    assert list(doc) == sorted(doc)
    assert doc["result"]["exists"] == "yes"
    assert doc["result"]["witness"] == "killing"


def test_sampling_commands_deterministic(capsys):
    argv = ["flat-models", "completeness", "--catalog", "matrix:2",
            "--seed", "3"]
    code1, out1 = run_main(capsys, argv)
    code2, out2 = run_main(capsys, argv)
    assert code1 == code2 == 0 and out1 == out2
    res = json.loads(out1)["result"]
    assert res["verdict"] == "incomplete" and res["witness"] is not None


def test_timing_and_dump_are_optional():
    argv = ["check-lie", "--catalog", "heisenberg"]
    assert "timing_ms" not in cli.run(argv)
    assert "dump" not in cli.run(argv)
    rep = cli.run(argv + ["--timing"])
    assert isinstance(rep["timing_ms"], float)
    rep = cli.run(argv + ["--dump"])
    assert "algebra" in rep["dump"]


def test_dump_roundtrip_is_a_fixpoint(tmp_path):
    rep1 = cli.run(["check-lie", "--catalog", "heisenberg", "--dump"])
    doc = rep1["dump"]["algebra"]
    path = tmp_path / "heis.json"
    path.write_text(json.dumps(doc))
    rep2 = cli.run(["check-lie", "--algebra", str(path), "--dump"])
    assert rep2["dump"]["algebra"] == doc
    assert rep2["result"] == rep1["result"] == {"valid": True, "dim": 3}


def test_bimetric_failure_carries_certificate():
    res = cli.run(["invariants", "--catalog", "aff1",
                   "--which", "bimetric"])["result"]
    assert res["exists"] == "no" and res["witness"] is None
    assert "annihilates" in res["certificate"]


def test_tower_command():
    res = cli.run(["flat-models", "tower", "--m", "1",
                   "--steps", "3"])["result"]
    assert res["dims"] == [1, 2, 6, 42]
    assert res["levels_materialized"] == [True, True, True]


def test_festar_command_reports_rank():
    res = cli.run(["gauge", "--catalog", "abelian:2", "--cartan", "zero",
                   "--op", "festar"])["result"]
    assert res["dim_solution"] == 6 and res["r_b"] == 2
    assert res["shrink_steps"] >= 0
    assert len(res["basis"]) == 6 and len(res["basis"][0]) == 6


def test_kv_cohomology_command():
    res = cli.run(["kv-cohomology", "--catalog", "heisenberg-kv",
                   "--complex", "kv", "--coeffs", "scalar"])["result"]
    assert res["complex"] == "kv" and res["dim"] == 3
    assert res["betti"] == [1, 2, 5, 13]


def test_spencer_command(tmp_path):
    path = tmp_path / "so3-symbol.json"
    path.write_text(json.dumps(
        {"v": 3, "w": 3, "basis": [[str(x) for x in r] for r in SO3_ROWS]}))
    res = cli.run(["spencer", "--symbol", str(path),
                   "--op", "involutive", "--trials", "20"])["result"]
    assert res["verdict"] == "no" and res["basis"] is None
    assert tuple(res["cohomology_witness"]) == (2, 0)
    res = cli.run(["spencer", "--symbol", str(path), "--op", "cartan"])
    assert res["result"]["quasi_regular"] is False


def test_statmodel_command():
    res = cli.run(["statmodel", "--family", "bernoulli",
                   "--op", "fisher"])["result"]
    assert abs(res["fisher"][0][0] - 4.0) < 1e-9
    assert res["theta"] == [0.5]


def test_text_format(capsys):
    code, out = run_main(capsys, ["flat-models", "tower", "--m", "1",
                                  "--steps", "3", "--format", "text"])
    assert code == 0
    assert "dims: [1, 2, 6, 42]" in out
    assert "levels_materialized: [true, true, true]" in out


def test_validation_failures_exit_2(capsys, tmp_path):
    code, out = run_main(capsys, ["check-lie", "--catalog", "nope"])
    assert code == 2
    doc = json.loads(out)
    assert doc["schema"] == "koszul-report/1"
    assert doc["error"]["type"] == "ValidationError"
    assert "nope" in doc["error"]["message"]

    code, out = run_main(capsys, ["check-lie"])
    assert code == 2
    assert "provide --algebra" in json.loads(out)["error"]["message"]

    code, out = run_main(capsys, ["check-lie", "--algebra",
                                  str(tmp_path / "missing.json")])
    assert code == 2
    assert "cannot read" in json.loads(out)["error"]["message"]


def test_jacobi_violation_exit_2_with_witness(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({
        "dim": 3,
        "bracket": [[0, 1, 2, "1"], [1, 2, 0, "1"], [2, 0, 0, "1"]],
    }))
    code, out = run_main(capsys, ["check-lie", "--algebra", str(path)])
    assert code == 2
    err = json.loads(out)["error"]
    assert err["type"] == "JacobiViolation"
    assert "(0, 1, 2)" in err["message"]


def test_conformance_mismatch_exits_3(capsys, monkeypatch):
    def boom(lie, seed=None):
        raise ConformanceMismatch("routes disagree")

    monkeypatch.setattr("koszul.invariants.bi_invariant_metric", boom)
    code, out = run_main(capsys, ["invariants", "--catalog", "so3",
                                  "--which", "bimetric"])
    assert code == 3
    assert json.loads(out)["error"]["type"] == "ConformanceMismatch"


def test_unknown_command_is_an_argparse_error():
    with pytest.raises(SystemExit):
        cli.main(["frobnicate"])
