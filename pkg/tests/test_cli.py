import io
import json
import os
import subprocess
import sys

import pytest

from conftest import CLI_INVOCATIONS
from f1hall.cli import COMMANDS, run


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def call_json(*argv):
    code, out, err = call(*argv)
    assert code == 0, err
    return json.loads(out)


def test_every_command_has_an_invocation():
    assert sorted({inv[0] for inv in CLI_INVOCATIONS} | {"cache-info"}) == sorted(COMMANDS)


# -- documented examples --------------------------------------------------------------

def test_product_example():
    data = call_json("product", "--spec", "free:1", "--left", "1;t:[0]", "--right", "1;t:[0]", "--format", "json")
    coeffs = {t["key"]: t["coeff"] for t in data["result"]}
    assert coeffs == {"1|t:0⊕1|t:0": "2", "2|t:2,0": "1"}


def test_duality_example():
    data = call_json("duality", "--max-vertices", "5")
    assert data["passed"] is True


def test_enumerate_example():
    data = call_json("enumerate", "--spec", "free:1", "--dim", "1")
    assert len(data["classes"]) == 2


def test_burnside_markdown():
    code, out, _ = call("burnside", "--group", "s3", "--format", "md")
    assert code == 0
    lines = out.splitlines()
    assert lines[0].startswith("| class |") and len(lines) == 2 + 4


def test_paper_examples_command():
    data = call_json("paper-examples")
    rows = data["data"]["displays"]
    assert [r["matches_printed"] for r in rows] == [False, True, True, True]
    assert all(r["computed"] == r["oracle"] for r in rows)


def test_csv_output():
    code, out, _ = call("enumerate", "--dim", "1", "--format", "csv")
    assert code == 0 and out.splitlines()[0].startswith("key")
    assert len(out.splitlines()) == 3


def test_cuts_flags():
    assert call_json("cuts", "--forest", "((()))")["count"] == 3
    assert call_json("cuts", "--forest", "((()))", "--extended")["count"] == 4
    assert call_json("cuts", "--forest", "((()))", "--simple")["count"] == 2


def test_reptable_tensor():
    data = call_json("reptable", "--kind", "tensor", "--max-dim", "2")
    assert data["kind"] == "tensor" and data["entries"]


# -- exit codes --------------------------------------------------------------------------

@pytest.mark.parametrize("argv", [
    ["enumerate", "--spec", "free:x", "--dim", "1"],
    ["decompose", "--module", "2; t:[2,"],
    ["product", "--left", "1;t:[0]"],
    ["nonsense"],
    ["enumerate", "--format", "xml"],
    ["cache-info"],
])
def test_usage_errors_exit_2(argv, capsys):
    code, _, err = call(*argv)
    assert code == 2
    capsys.readouterr()


def test_parse_error_reports_position():
    code, _, err = call("decompose", "--module", "2; t:[2,x]")
    assert code == 2 and "position 8" in err


@pytest.mark.parametrize("argv", [
    ["decompose", "--module", "2; t:[3,0]"],
    ["enumerate", "--dim", "40"],
    ["tensor", "--spec", "free:2", "--left", "1; x1:[0]; x2:[0]", "--right", "1; x1:[0]; x2:[0]"],
    ["bracket", "--left", "2; t:[0,0]", "--right", "1;t:[0]"],
    ["classify", "--module", "2; t:[0,0]"],
])
def test_domain_errors_exit_1(argv):
    code, out, err = call(*argv)
    assert code == 1 and out == "" and err.startswith("f1hall: error:")


# -- determinism and cache ------------------------------------------------------------------

@pytest.mark.parametrize("argv", CLI_INVOCATIONS, ids=lambda a: " ".join(a[:3]))
def test_cold_and_warm_runs_identical(argv, tmp_path):
    cache = str(tmp_path / "cache.json")
    cold = call(*argv, "--cache", cache)
    warm = call(*argv, "--cache", cache)
    plain = call(*argv)
    assert cold[0] == 0, cold[2]
    assert cold[1] == warm[1] == plain[1]


def test_cache_info(tmp_path):
    cache = str(tmp_path / "cache.json")
    call("enumerate", "--dim", "2", "--cache", cache)
    call("enumerate", "--dim", "2", "--cache", cache)
    call("product", "--left", "1;t:[0]", "--right", "1;t:[0]", "--cache", cache)
    data = call_json("cache-info", "--cache", cache)
    assert data["specs"][0]["entries"] == 2 and data["specs"][0]["keys"] >= 6


def test_corrupted_cache_warns(tmp_path):
    cache = tmp_path / "cache.json"
    cache.write_text("garbage")
    code, out, err = call("enumerate", "--dim", "1", "--cache", str(cache))
    assert code == 0 and "warning:" in err
    assert out == call("enumerate", "--dim", "1")[1]


def test_console_script_across_hash_seeds():
    outs = []
    for seed in ("1", "2"):
        env = dict(os.environ, PYTHONHASHSEED=seed)
        res = subprocess.run([sys.executable, "-m", "f1hall", "table", "--max-dim", "3"],
                             capture_output=True, env=env, check=True)
        outs.append(res.stdout)
    assert outs[0] == outs[1] and outs[0]
