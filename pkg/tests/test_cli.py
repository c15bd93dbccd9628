import json

import pytest

from twyang.cli import FLAGS, VERBS, run

WORKED = "0,0,2,3;0,0,2,3;2,2,0,1;3,3,1,0"


def report(capsys, argv, code=0):
    assert run(argv) == code
    return json.loads(capsys.readouterr().out)


def test_verify_ai3_example(capsys):
    # [DERIVED] the relation suite holds
    rep = report(capsys, ["verify", "--type", "AI", "--n", "3", "--shape", "1,1,1", "--bound", "4"])
    assert rep["status"] == "pass" and rep["summary"]["fail"] == 0 and rep["summary"]["pass"] > 100


def test_verify_aii_odd_is_usage_error(capsys):
    # [TRIVIAL]
    assert run(["verify", "--type", "AII", "--n", "3"]) == 2
    assert "even" in capsys.readouterr().err


def test_corrupted_relation_exits_one(capsys, monkeypatch):
    # [TRIVIAL] failure path
    monkeypatch.setenv("TWYANG_CORRUPT", "pr6")
    rep = report(capsys, ["verify", "--type", "AI", "--n", "2", "--bound", "3", "--families", "pr6"], code=1)
    bad = [r for r in rep["results"] if r["status"] == "fail"]
    assert bad and bad[0]["relation"] == "pr6" and bad[0]["witness"]


def test_pyramid_example(capsys):
    # [PAPER] worked example
    rep = report(capsys, ["pyramid", "--sigma", WORKED, "--level", "8"])
    assert rep["data"]["rows"] == "2,2,6,8"
    assert rep["status"] == "pass"


def test_sdet_example(capsys):
    rep = report(capsys, ["sdet", "--type", "AI", "--n", "2", "--cutoff", "6", "--check", "central"])
    assert rep["status"] == "pass"


def test_pfaffian_example(capsys):
    # [DERIVED] base case: pf = -s12^(3)
    rep = report(capsys, ["pfaffian", "--n", "2", "--s12", "0", "--level", "3"])
    assert rep["status"] == "pass" and rep["data"]["equals"] == "-s12^(3)"


@pytest.mark.parametrize("argv", [
    ["gauss", "--type", "AI", "--n", "2", "--cutoff", "3"],
    ["qdet", "--n", "2", "--cutoff", "3"],
    ["shapes", "--sigma", WORKED],
    ["ideal", "--type", "AI", "--n", "2", "--level", "3"],
    ["miura", "--type", "AI", "--n", "2", "--level", "3", "--bound", "2"],
    ["center", "--type", "AII", "--n", "2", "--level", "2"],
    ["deltaR", "--s12", "1", "--bound", "2"],
    ["grcheck", "--type", "AI", "--n", "2", "--bound", "2"],
])
def test_other_verbs_pass(capsys, argv):
    rep = report(capsys, argv)
    assert rep["verb"] == argv[0] and rep["status"] == "pass"


@pytest.mark.parametrize("argv", [
    ["verify", "--type", "AIII", "--n", "2"],
    ["verify", "--type", "AI", "--n", "2", "--bound", "0"],
    ["pyramid", "--sigma", "0,1;2,0", "--level", "4"],
    ["pyramid", "--level", "4"],
    ["center", "--n", "2"],
    ["verify", "--format", "xml", "--n", "2"],
    ["frobnicate"],
    ["verify", "--bogus", "1"],
])
def test_usage_errors(capsys, argv):
    assert run(argv) == 2


def test_config_file_and_flag_precedence(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"sigma": WORKED, "level": 6}))
    rep = report(capsys, ["pyramid", "--config", str(cfg), "--level", "8"])
    assert rep["config"]["level"] == 8 and rep["data"]["rows"] == "2,2,6,8"


def test_bad_config(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"colour": "red"}))
    assert run(["pyramid", "--config", str(bad)]) == 2
    bad.write_text("{not json")
    assert run(["pyramid", "--config", str(bad)]) == 2
    assert run(["pyramid", "--config", str(tmp_path / "missing.json")]) == 2


def test_output_is_deterministic(tmp_path, capsys):
    out = tmp_path / "r.json"
    texts = []
    for _ in range(2):
        assert run(["ideal", "--type", "AI", "--n", "2", "--level", "3", "--out", str(out)]) == 0
        rep = json.loads(out.read_text())
        rep.pop("generated_at"), rep.pop("seconds")
        for r in rep["results"]:
            r.pop("seconds")
        texts.append(json.dumps(rep, sort_keys=True))
    assert texts[0] == texts[1]
    assert "pass" in capsys.readouterr().err


def test_jobs_gives_the_same_results(capsys):
    base = ["verify", "--type", "AI", "--n", "2", "--bound", "3"]
    one = report(capsys, base)
    two = report(capsys, base + ["--jobs", "2"])
    assert one["summary"] == two["summary"]


def test_flag_table():
    assert len(VERBS) == 12
    assert {"type", "n", "shape", "sigma", "level", "bound", "cutoff", "jobs", "out", "format"} <= set(FLAGS)
