import io
import json

import pytest

from chainring.cli import run
from chainring.finring import zmod_ring
from chainring.iso import prop44_presentation

from .rings import PC, Z4


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def js(P):
    return json.dumps(P.to_json())


def test_ring_new_certifies():
    code, out, _ = call("ring", "new", js(PC))
    assert code == 0
    assert json.loads(out)["passed"] is True


def test_ring_new_rejects_invalid():
    bad = {"p": 2, "r": 2, "s": 2, "g": [0, 1], "p_rel": [{"t": 1, "u": [1]}], "g_rel": []}
    code, out, _ = call("ring", "new", json.dumps(bad))
    assert code == 1 and json.loads(out)["error"] == "rejected"


def test_ring_ideals_chain():
    code, out, _ = call("ring", "ideals", js(Z4))
    assert code == 0
    rep = json.loads(out)
    assert rep["chain"] == "0 ⊂ (Y) ⊂ R" and rep["nontrivial"] == 1


def test_ring_ideals_on_table(tmp_path):
    path = tmp_path / "z8.json"
    path.write_text(zmod_ring(8).dumps())
    code, out, _ = call("ring", "ideals", str(path))
    assert code == 0 and json.loads(out)["nontrivial"] == 2


def test_ring_stats_and_pir():
    code, out, _ = call("ring", "stats", js(PC))
    assert code == 0 and json.loads(out) == {"p": 2, "r": 2, "s": 3, "t": 3, "holds": True}
    code, out, _ = call("ring", "check-pir", js(PC))
    assert code == 0 and json.loads(out)["pir"] is True


def test_ring_elements_limit():
    code, out, _ = call("ring", "elements", js(PC), "--limit", "3")
    rep = json.loads(out)
    assert code == 0 and rep["order"] == 8 and len(rep["elements"]) == 3


def test_coeff_field_and_canon():
    F4Y2 = json.dumps({"p": 2, "r": 1, "s": 1, "g": [1, 1, 1]})
    code, out, _ = call("ring", "coeff-field", F4Y2)
    assert code == 0 and json.loads(out)["order"] == 4
    code, out, _ = call("ring", "canon", F4Y2)
    rep = json.loads(out)
    assert code == 0 and rep["sigma"] == 2 and all(rep["checks"].values())
    code, out, _ = call("ring", "coeff-field", js(PC))
    assert code == 1


def test_ring_present_from_stdin(monkeypatch):
    monkeypatch.setattr("sys.stdin", io.StringIO(zmod_ring(9).dumps()))
    code, out, _ = call("ring", "present", "-")
    rep = json.loads(out)
    assert code == 0
    assert rep["presentation"] == {"p": 3, "r": 2, "s": 1, "g": [1, 1], "p_rel": [{"t": 1, "u": [1]}], "g_rel": [{"s": 1, "v": [1]}]}


@pytest.mark.parametrize("u2,expected", [(2, "non-isomorphic"), (4, "isomorphic")])
def test_ring_iso_z9_extensions(tmp_path, u2, expected):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    a.write_text(js(prop44_presentation(3, (0, 1), (1,))))
    b.write_text(js(prop44_presentation(3, (0, 1), (u2 % 3,))))
    code, out, _ = call("ring", "iso", str(a), str(b))
    rep = json.loads(out)
    assert code == 0
    assert rep["result"] == expected and rep["criterion_agrees"] is True


def test_catalog_rows():
    code, out, _ = call("catalog", "--p", "2", "--d", "1", "--ideals", "2")
    rep = json.loads(out)
    assert code == 0 and rep["passed"]
    labels = {(r["label"], r["char"]) for r in rep["rows"]}
    assert ("4.2(3)", 8) in labels and ("4.2(2a)", 4) in labels


def test_catalog_csv():
    code, out, _ = call("catalog", "--p", "2", "--ideals", "1", "--format", "csv")
    lines = out.strip().splitlines()
    assert code == 0 and lines[0].startswith("label") and len(lines) > 2


def test_output_is_deterministic():
    runs = {call("ring", "ideals", js(PC), "--format", "text")[1] for _ in range(3)}
    assert len(runs) == 1


def test_exit_codes():
    assert call("catalog", "--p", "4", "--ideals", "1")[0] == 2
    assert call("ring", "new", "/no/such/file.json")[0] == 2
    assert call("frobnicate")[0] == 2
    assert call("ring", "new", "{not json")[0] == 2


def test_bound_flags_and_env(monkeypatch):
    code, _, err = call("ring", "elements", js(PC), "--table-cap", "4")
    assert code == 2 and "above the cap" in err
    monkeypatch.setenv("CHAINRING_TABLE_CAP", "4")
    assert call("ring", "elements", js(PC))[0] == 2
    assert call("ring", "elements", js(PC), "--table-cap", "64")[0] == 0


@pytest.mark.slow
def test_selftest_passes():
    code, out, _ = call("selftest")
    rep = json.loads(out)
    assert code == 0 and rep["passed"]
    assert rep["sweep"]["rings"] > 300
