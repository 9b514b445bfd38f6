import csv
import io
import json

import pytest

from charlevel.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_degree_trivial(capsys):
    code, out = run(capsys, "degree", "--group", "GL(4,3)", "--trivial")
    doc = json.loads(out)
    assert code == 0
    assert doc["schema"] == "charlevel/1"
    assert doc["degree"] == "1" and doc["level"] == "0"
    assert doc["bounds"]["degree_bounds_pass"] is True


def test_degree_weil(capsys):
    _, out = run(capsys, "degree", "--group", "GL(3,3)", "--partition", "2,1")
    doc = json.loads(out)
    assert doc["degree"] == "12" and doc["level"] == "1"


def test_degree_bad_label(capsys):
    assert main(["degree", "{not json"]) == 2


def test_enumerate_counts(capsys):
    _, out = run(capsys, "enumerate", "GL(2,3)", "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["label", "degree", "true_level", "level"]
    assert len(rows) == 1 + 8
    _, out = run(capsys, "enumerate", "GL(1,5)")
    assert len(json.loads(out)["rows"]) == 4
    _, out = run(capsys, "enumerate", "GU(2,2)", "--level", "1")
    rows = json.loads(out)["rows"]
    assert rows and all(r[3] == "1" for r in rows)


def test_enumerate_label_feeds_degree(capsys):
    _, out = run(capsys, "enumerate", "GU(2,3)")
    label = json.loads(out)["rows"][3][0]
    code, out = run(capsys, "degree", label)
    assert code == 0 and json.loads(out)["label"]["spec"]["q"] == 3


def test_table_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["table", "SL(2,3)", "--output", str(a)]) == 0
    assert main(["table", "SL(2,3)", "--output", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    doc = json.loads(a.read_text())
    assert len(doc["classes"]) == 7 and len(doc["characters"]) == 7


def test_table_guard(capsys):
    assert main(["table", "GL(5,3)"]) == 3


def test_walk_csv(capsys):
    code, out = run(capsys, "walk", "SL(2,3)", "--t", "1..5", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and len(rows) == 5
    assert all(r["total"] == "1" and r["l1_sq_le_ds"] == "True" for r in rows)


def test_thresholds(capsys):
    _, out = run(capsys, "thresholds", "--m", "-1", "--kmax", "4")
    assert all(r[1] == "1" for r in json.loads(out)["rows"])
    _, out = run(capsys, "thresholds", "--C", "1", "--m", "0")
    assert int(json.loads(out)["h"]) >= 10


def test_orbits_and_pencil(capsys):
    _, out = run(capsys, "orbits", "--n", "2", "--q", "2", "--oracle")
    rows = json.loads(out)["rows"]
    assert rows[2][1] == rows[2][3] == "5"
    code, out = run(capsys, "pencil", "--j", "1", "--q", "2", "--n", "2")
    assert code == 0 and json.loads(out)["burnside"] == "5"


def test_zeta(capsys):
    _, out = run(capsys, "zeta", "GL(2,3)", "--s", "-2")
    assert json.loads(out)["value"].startswith("48.0")


def test_dualpair(capsys):
    code, out = run(capsys, "dualpair", "--n", "2", "--j", "1", "--q", "3")
    assert code == 0 and json.loads(out)["pass"] is True


def test_verify_exit_codes(capsys):
    assert main(["verify", "z-identity"]) == 0
    assert main(["verify", "degree-multiset", "--group", "GL(2,3)"]) == 0
    assert main(["verify", "dual-pair", "--n", "2", "--j", "1", "--q", "3", "--eps", "+"]) == 0
    assert main(["verify", "gu-parity"]) == 1
    assert main(["verify", "no-such-suite"]) == 2
    assert main(["bogus-command"]) == 2


def test_config_file(tmp_path, capsys):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"format": "csv"}))
    _, out = run(capsys, "zeta", "GL(2,2)", "--config", str(cfg))
    assert out.startswith("key,value")
    cfg.write_text(json.dumps({"colour": "red"}))
    assert main(["zeta", "GL(2,2)", "--config", str(cfg)]) == 2
