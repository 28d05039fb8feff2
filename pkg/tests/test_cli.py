import io
import json
import subprocess
import sys

import pytest

from flagvar.cli import run


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def test_describe_g2():
    code, out, _ = call("describe", "--type", "G", "--rank", "2", "--crossed", "1")
    assert code == 0
    assert "dim 5" in out and "omega 10,5" in out


def test_describe_json():
    code, out, _ = call("describe", "--type", "B", "--rank", "3", "--crossed", "3", "--format", "json")
    d = json.loads(out)
    assert d["dimension"] == 6 and d["omega"] == [3, 6, 9]
    assert d["flag"] == {"factors": [{"series": "B", "rank": 3}], "crossed": [[3]]}


def test_spec_descriptor():
    spec = json.dumps({"factors": [{"series": "B", "rank": 3}], "crossed": [[3]]})
    code, out, _ = call("describe", "--spec", spec)
    assert code == 0 and "dim 6" in out


def test_submodules_a1():
    code, out, _ = call("submodules", "--type", "A", "--rank", "1", "--crossed", "1")
    assert code == 0
    assert "2 submodules" in out
    code, out, _ = call("submodules", "--type", "A", "--rank", "1", "--crossed", "1", "--format", "json")
    assert json.loads(out)["submodule_count"] == 2


def test_submodules_product():
    code, out, _ = call("submodules", "--factor", "G:2:1", "--factor", "C:3:2", "--format", "json")
    assert code == 0
    assert json.loads(out)["submodule_count"] == 4 * 3


def test_verify():
    code, out, _ = call("verify")
    assert code == 0
    assert out.strip().splitlines()[-1].startswith("all ")
    assert out.strip().endswith("expectations passed")


def test_drops():
    code, out, _ = call("drops", "--type", "B", "--rank", "2", "--crossed", "all", "--rational", "2")
    assert code == 0
    assert "circle rule: Q has crossed {1}" in out
    code, out, _ = call("drops", "--type", "A", "--rank", "3", "--crossed", "1,3", "--format", "json")
    d = json.loads(out)
    assert [n["crossed"] for n in d["nodes"]] == [[1, 3], [1], [3], []]


def test_growth():
    code, out, _ = call("growth", "--type", "G", "--rank", "2", "--crossed", "1", "--root", "1,0", "--root", "1,1")
    assert code == 0 and out.strip() == "(2,3,5)"
    code, out, _ = call("growth", "--type", "B", "--rank", "4", "--crossed", "4", "--level", "1")
    assert out.strip() == "(4,10)"


@pytest.mark.parametrize(
    "argv,needle",
    [
        (["describe", "--type", "E", "--rank", "5", "--crossed", "1"], "--rank"),
        (["describe", "--type", "Q", "--rank", "2", "--crossed", "1"], "--type"),
        (["describe", "--type", "A", "--rank", "3", "--crossed", "7"], "--crossed"),
        (["describe", "--type", "A", "--rank", "3", "--crossed", "x"], "--crossed"),
        (["describe", "--factor", "A:3"], "--factor"),
        (["growth", "--type", "G", "--rank", "2", "--crossed", "1", "--root", "0,1"], "--root"),
        (["drops", "--type", "A", "--rank", "3", "--crossed", "1", "--rational", "2"], "--rational"),
    ],
)
def test_usage_errors(argv, needle):
    code, _, err = call(*argv)
    assert code == 2
    assert needle in err


def test_argparse_errors_exit_2():
    code, _, _ = call("nonsense")
    assert code == 2


def test_overflow_exit_3(monkeypatch):
    monkeypatch.setenv("FLAGVAR_GUARD", "3")
    code, _, err = call("submodules", "--type", "A", "--rank", "3", "--crossed", "all")
    assert code == 3 and "FLAGVAR_GUARD" in err
    code, _, _ = call("classify", "--max-rank", "2", "--format", "json")
    assert code == 3


def test_classify_formats():
    code, out, _ = call("classify", "--max-rank", "2", "--crossing", "borel", "--format", "json")
    assert code == 0
    assert [json.loads(l)["label"] for l in out.splitlines()] == ["A1/{1}", "A2/{1,2}", "B2/{1,2}", "G2/{1,2}"]
    code, out, _ = call("classify", "--max-rank", "2", "--format", "csv")
    assert out.startswith("flag,dimension,omega")


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "flagvar", "describe", "--type", "A", "--rank", "1", "--crossed", "all"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0 and "dim 1" in proc.stdout
