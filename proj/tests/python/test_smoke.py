import json
import os
import subprocess

import pytest

import divkummer as dk


def test_commands_listed():
    names = dk.commands()
    for expected in ["snf", "divide", "pushout", "kummer-bound", "verify"]:
        assert expected in names


def test_snf():
    result = dk.snf([[2, 0], [0, 3]])
    assert result["diagonal"] == ["1", "6"]


def test_invariant_factors():
    rank, factors = dk.invariant_factors(3, [[0, 6, 0], [0, 0, 2]])
    assert rank == 1
    assert factors == [2, 6]


def test_divide_example():
    result = dk.divide(1, [], [[12]], "2^inf")
    assert result["basis"] == [["3"]]


def test_torsion_example():
    result = dk.torsion(1, [[12]], "2^inf")
    assert result["module"]["factors"] == ["4"]


def test_hull_shape():
    hull = dk.hull(1, [[12]], "2^inf")
    assert hull["prufer_count"] == 1
    assert hull["residual"]["factors"] == ["3"]


def test_kummer_bound_closed_form():
    report = dk.kummer_bound(d=2, n=1, m=1, rank=2, s=2, level=8)
    assert report["c"] == str(2 ** 4)


def test_subring_index():
    i = [[1, 0], [0, 1]]
    neg = [[-1, 0], [0, -1]]
    assert dk.subring_index([i, neg], 4) == 4


def test_h1():
    assert dk.h1(1, [[4]], [[[-1]]]) == [2]


def test_refusal_and_input_errors():
    nopush = {
        "filter": "2^inf",
        "target": {"s": 1},
        "base": {"module": {"generators": 1, "relations": []}},
        "left": {"module": {"generators": 1, "relations": []}},
        "right": {"module": {"generators": 1, "relations": []}},
        "f": [["2"]],
        "g": [["2"]],
    }
    with pytest.raises(dk.RefusalError):
        dk.run("pushout", nopush)
    code, report = dk.run_raw("pushout", nopush)
    assert code == 1
    assert report["error"]["name"] == "NotPure"

    with pytest.raises(dk.InputError):
        dk.run("divide", {"filter": "2^inf"})


def test_report_determinism():
    doc = {"module": {"generators": 1, "relations": []}, "submodule": [["12"]], "filter": "2^inf"}
    a = dk.run("divide", doc)
    b = dk.run("divide", doc)
    assert a == b


CLI = os.environ.get("DIVKUMMER_CLI")
SAMPLES = os.environ.get("DIVKUMMER_SAMPLES")


@pytest.mark.skipif(not CLI or not SAMPLES, reason="CLI paths not provided")
def test_cli_exit_codes(tmp_path):
    with open(os.path.join(SAMPLES, "nopushout.json")) as f:
        sample = json.load(f)
    doc = tmp_path / "doc.json"
    doc.write_text(json.dumps(sample["input"]))
    proc = subprocess.run([CLI, sample["command"], str(doc)], capture_output=True, text=True)
    assert proc.returncode == 1
    report = json.loads(proc.stdout)
    assert report["error"]["name"] == "NotPure"

    with open(os.path.join(SAMPLES, "divide_12z.json")) as f:
        sample = json.load(f)
    doc.write_text(json.dumps(sample["input"]))
    proc = subprocess.run([CLI, sample["command"], str(doc)], capture_output=True, text=True)
    assert proc.returncode == 0
    report = json.loads(proc.stdout)
    assert report["result"]["result"]["basis"] == [["3"]]

    doc.write_text(json.dumps({"filter": "2^inf"}))
    proc = subprocess.run([CLI, "divide", str(doc)], capture_output=True, text=True)
    assert proc.returncode == 2
