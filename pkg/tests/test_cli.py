import io
import json
import subprocess
import sys

import pytest

from setpairs.cli import run


def call(*argv, stdin=""):
    out = io.StringIO()
    code = run(list(argv), out=out, stdin=io.StringIO(stdin))
    return code, out.getvalue()


def test_bounds_json_contains_n1_upper():
    code, text = call("bounds", "--k", "2", "--l", "2")
    assert code == 0
    rows = json.loads(text)
    row = next(r for r in rows if r["name"] == "n1_upper")
    assert row["value"] == "12"
    assert "anchor" not in row


def test_bounds_refs_and_table():
    code, text = call("bounds", "--k", "2", "--refs")
    assert all("anchor" in r for r in json.loads(text))
    code, text = call("--table", "bounds", "--k", "1")
    assert code == 0
    assert text.splitlines()[0].split()[:3] == ["name", "params", "value"]
    assert "implicit-hypothesis anomaly" in text


def test_bounds_out_of_domain_is_usage_error():
    code, _ = call("bounds", "--k", "0")
    assert code == 2


def test_construct_verify_pipeline():
    code, text = call("construct", "--name", "colex-skew", "--k", "2", "--l", "2")
    assert code == 0
    code, report = call("verify", "--flavor", "skew", stdin=text)
    assert code == 0 and json.loads(report)["ok"] is True
    code, report = call("verify", "--flavor", "cross", stdin=text)
    assert code == 1 and json.loads(report)["violation"] == [1, 0]


@pytest.mark.parametrize("name,extra", [
    ("tuza", []), ("erdos-lovasz", []), ("colex-skew", ["--l", "3"]),
    ("weakly-triple", ["--l", "3"]), ("ekr-star", ["--n", "6"]),
])
def test_every_construction_verifies(name, extra):
    code, text = call("construct", "--name", name, "--k", "2", *extra)
    assert code == 0
    code, report = call("verify", stdin=text)
    assert code == 0, report


def test_construct_output_feeds_family_and_warm_start(tmp_path):
    _, fam = call("construct", "--name", "tuza", "--k", "3")
    code, text = call("family", "--op", "tau", stdin=fam)
    assert code == 0 and json.loads(text)["tau"] == "3"
    _, sys_text = call("construct", "--name", "erdos-lovasz", "--k", "2")
    path = tmp_path / "warm.json"
    path.write_text(sys_text)
    code, text = call("search", "--quantity", "n", "--k", "2", "--warm-start", str(path))
    assert code == 0 and json.loads(text)["value"] == "6"


def test_family_ops():
    _, star = call("construct", "--name", "ekr-star", "--n", "5", "--k", "2")
    code, text = call("family", "--op", "maximal", stdin=star)
    assert code == 0 and json.loads(text)["maximal"] is True
    code, text = call("family", "--op", "generator", stdin=star)
    data = json.loads(text)
    assert code == 0 and data["size"] <= 3 and data["cross_ok"] and data["doubled_skew_ok"]
    code, text = call("family", "--op", "closure", stdin=json.dumps({"n": 5, "k": 2, "sets": [[1, 2]]}))
    assert code == 0 and len(json.loads(text)["sets"]) == 7
    code, _ = call("family", "--op", "maximal", "--n", "6", stdin=star)
    assert code == 1
    code, _ = call("family", "--op", "generator", stdin=json.dumps({"n": 4, "sets": [[1, 2]]}))
    assert code == 1


def test_search_m():
    code, text = call("search", "--quantity", "M", "--n", "5", "--k", "2")
    data = json.loads(text)
    assert code == 0 and data["value"] == "15" and data["proven_optimal"] is True


def test_search_catalog(tmp_path):
    path = tmp_path / "cat.jsonl"
    code, _ = call("search", "--quantity", "M", "--n", "5", "--k", "2", "--catalog", str(path))
    lines = path.read_text().splitlines()
    assert code == 0 and len(lines) == 15
    assert all(len(json.loads(line)["sets"]) >= 3 for line in lines)


def test_search_budget_exit_code(tmp_path):
    wit = tmp_path / "w.json"
    code, text = call("search", "--quantity", "n1", "--k", "2", "--budget-nodes", "30",
                      "--emit-witness", str(wit))
    data = json.loads(text)
    assert code == 3 and data["proven_optimal"] is False
    assert json.loads(wit.read_text())["flavor"] == "skew"


def test_search_budget_env(monkeypatch):
    monkeypatch.setenv("SETPAIR_BUDGET_NODES", "30")
    code, _ = call("search", "--quantity", "n1", "--k", "2")
    assert code == 3


def test_search_m_vertex_budget():
    code, text = call("search", "--quantity", "M", "--n", "12", "--k", "6")
    assert code == 3 and json.loads(text)["required"] == "924"


def test_search_f_g_and_timings():
    code, text = call("search", "--quantity", "f", "--k", "2", "--timings", "--refs")
    data = json.loads(text)
    assert code == 0 and data["value"] == "3" and "wall_time" in data and "anchor" in data
    code, text = call("search", "--quantity", "g", "--k", "2")
    assert code == 0 and json.loads(text)["value"] == "4"


def test_search_refusals_and_missing_args():
    assert call("search", "--quantity", "n", "--k", "4", "--l", "4")[0] == 2
    assert call("search", "--quantity", "M", "--k", "2")[0] == 2


def test_search_output_is_byte_stable():
    a = call("search", "--quantity", "n", "--k", "2", "--workers", "2")[1]
    b = call("search", "--quantity", "n", "--k", "2", "--workers", "2")[1]
    assert a == b


def test_usage_errors():
    assert call("frobnicate")[0] == 2
    assert call("bounds", "--k", "2", "--bogus")[0] == 2
    assert call("verify", stdin="not json")[0] == 2
    assert call("verify", stdin="[1, 2]")[0] == 2


def test_reproduce_subset():
    code, text = call("reproduce", "--only", "bounds", "--json")
    data = json.loads(text)
    assert code == 0 and data["passed"] and [c["name"] for c in data["criteria"]] == ["bounds"]
    code, text = call("reproduce", "--only", "9")
    assert code == 0
    assert "n(1,1): search 2 vs summation formula 1 [implicit-hypothesis anomaly]" in text
    assert call("reproduce", "--only", "bogus")[0] == 2


def test_reproduce_figures(tmp_path):
    code, text = call("reproduce", "--only", "bounds", "--figures", str(tmp_path))
    assert code == 0
    for name in ("s_of_k.png", "bound_ladder.png", "m_n2.png"):
        assert (tmp_path / name).stat().st_size > 0
        assert name in text


def test_console_entry_point():
    gen = subprocess.run([sys.executable, "-m", "setpairs.cli", "construct", "--name", "colex-skew",
                          "--k", "2", "--l", "2"], capture_output=True, text=True, check=True)
    ver = subprocess.run([sys.executable, "-m", "setpairs.cli", "verify", "--flavor", "skew"],
                         input=gen.stdout, capture_output=True, text=True)
    assert ver.returncode == 0
