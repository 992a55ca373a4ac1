import json
import subprocess
import sys

import pytest

from rhombic import cli
from rhombic.algebra import ALPHA, BETA, Q, LaurentPolynomial
from rhombic.bijections import fusion_exchange
from rhombic.rat import Fill, Tableau
from rhombic.shapes import canonical_tiling, flip_closure
from rhombic.verify import CheckResult

from conftest import RUNNING_BLOCKS


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def write(tmp_path, name, obj):
    path = tmp_path / name
    path.write_text(json.dumps(obj) if not isinstance(obj, str) else obj)
    return str(path)


@pytest.fixture
def worked_tableau(running_assemblee):
    for tiling in flip_closure(canonical_tiling("DDEADEEEADE")):
        t = fusion_exchange(running_assemblee, tiling).tableau
        if t.counts()[Fill.Q] == 15:
            return t
    raise AssertionError("no tiling with 15 q")


def test_weight(capsys):
    code, out, _ = run(capsys, "weight", "--word", "DE")
    assert code == 0
    assert LaurentPolynomial.from_json(json.loads(out)) == ALPHA * BETA * (ALPHA + BETA + Q)


def test_weight_of_a_tableau(capsys, tmp_path, worked_tableau):
    path = write(tmp_path, "t.json", worked_tableau.to_json())
    code, out, _ = run(capsys, "weight", "--in", path, "--format", "ascii")
    assert (code, out) == (0, "a^7*b^7*q^15\n")


def test_biject_both_ways(capsys, tmp_path, worked_tableau, running_assemblee):
    path = write(tmp_path, "t.json", worked_tableau.to_json())
    code, out, _ = run(capsys, "biject", "t2a", "--in", path)
    assert code == 0 and json.loads(out) == RUNNING_BLOCKS
    path = write(tmp_path, "a.json", RUNNING_BLOCKS)
    code, out, _ = run(capsys, "biject", "a2t", "--in", path)
    t = Tableau.from_json(json.loads(out))
    assert t == fusion_exchange(running_assemblee).tableau


def test_biject_trace_renders(capsys, tmp_path):
    path = write(tmp_path, "a.json", RUNNING_BLOCKS)
    _, out, _ = run(capsys, "biject", "a2t", "--in", path, "--trace")
    trace = json.loads(out)
    assert trace["assemblee"] == RUNNING_BLOCKS
    labelled = [e for e in trace["edges"] if e["label"] is not None]
    trace_path = write(tmp_path, "trace.json", trace)
    code, svg, _ = run(capsys, "render", "--in", trace_path)
    assert code == 0 and svg.count('class="label"') == len(labelled)
    code, text, _ = run(capsys, "render", "--in", trace_path, "--format", "ascii")
    assert code == 0 and "(8,9,10,11)" in text


def test_verify_partition(capsys):
    code, out, _ = run(capsys, "verify-partition", "--n", "4", "--r", "2")
    lines = out.splitlines()
    assert code == 0 and lines[-1] == "PASS"
    assert lines[0].startswith("enumerated:") and lines[1].startswith("closed form:")


def test_partition(capsys):
    code, out, _ = run(capsys, "partition", "--n", "1", "--r", "0", "--format", "ascii")
    assert (code, out) == (0, "a + b\n")


def test_enumerate_rat(capsys):
    code, out, _ = run(capsys, "enumerate-rat", "--word", "DE")
    assert code == 0 and [t["filling"] for t in json.loads(out)] == [["a"], ["b"], ["q"]]
    code, out, _ = run(capsys, "enumerate-rat", "--word", "DA", "--format", "ascii")
    assert out == "b\n\nq\n"


def test_enumerate_assemblees(capsys):
    code, out, _ = run(capsys, "enumerate-assemblees", "--n", "1", "--r", "0")
    assert json.loads(out) == [{"blocks": [[1, 2]], "lrs": [], "rls": [1]},
                               {"blocks": [[2, 1]], "lrs": [2], "rls": []}]


def test_insert(capsys):
    code, out, _ = run(capsys, "insert", "--r", "2", "--f", "3,5,2,6,1,9,2,1", "--g", "3,6,8")
    data = json.loads(out)
    assert data["inserted"] == [[7, 10, 5, 8], [9, 2, 11, 6], [3, 1, 4]]
    assert data["rho"] == [[7, 11, 5, 8], [9, 2, 10, 6], [1, 3, 4]]
    assert LaurentPolynomial.from_json(data["weight"]) == ALPHA ** -2 * BETA ** -2


def test_verify_asep(capsys):
    code, out, _ = run(capsys, "verify-asep", "--n", "2", "--r", "1",
                       "--alpha", "1/2", "--beta", "1/3", "--q", "2/5")
    data = json.loads(out)
    assert code == 0 and data["pass"] and len(data["states"]) == 4


def test_render_examples(capsys, tmp_path, worked_tableau):
    single = Tableau(canonical_tiling("DE"), (Fill.Q,))
    _, svg, _ = run(capsys, "render", "--in", write(tmp_path, "s.json", single.to_json()))
    assert svg.count("<polygon") == 1 and svg.count(">q</text>") == 1
    assert 'x="40" y="40"' in svg  # centroid of the unit square, 40 px per edge
    _, svg, _ = run(capsys, "render", "--in", write(tmp_path, "w.json", worked_tableau.to_json()))
    assert svg.count("<polygon") == len(worked_tableau.tiling.tiles)
    assert (svg.count(">α<"), svg.count(">β<"), svg.count(">q<")) == (3, 2, 15)
    assert 'stroke-dasharray="6 4"' in svg and 'stroke-dasharray="2 3"' in svg
    _, svg, _ = run(capsys, "render", "--in", write(tmp_path, "b.json", [[1, 2]]))
    assert svg.count("<rect") == 1 and ">1 2</text>" in svg
    _, text, _ = run(capsys, "render", "--in", write(tmp_path, "s.json", single.to_json()),
                     "--format", "ascii")
    assert text == "q\n"


def test_out_file(capsys, tmp_path):
    target = tmp_path / "w.json"
    code, out, _ = run(capsys, "weight", "--word", "ED", "--out", str(target))
    assert code == 0 and out == ""
    assert LaurentPolynomial.from_json(json.loads(target.read_text())) == ALPHA * BETA


@pytest.mark.parametrize("argv", [
    ["frobnicate"],
    ["weight", "--bogus"],
    ["weight"],
    ["weight", "--word", "DXE"],
    ["verify-asep", "--n", "2", "--r", "0", "--alpha", "x", "--beta", "1", "--q", "1"],
    ["verify-asep", "--n", "2", "--r", "0", "--alpha", "0", "--beta", "1", "--q", "1"],
    ["insert", "--r", "0", "--f", "5", "--g", "1"],
    ["render", "--in", "/nonexistent/file.json"],
])
def test_usage_errors_exit_2(capsys, argv):
    with pytest.raises(SystemExit) as info:
        cli.main(argv)
    assert info.value.code == 2
    assert capsys.readouterr().err


def test_malformed_json_exits_2(capsys, tmp_path):
    for text in ["{", '{"word": "DE"}', '[[1, 1]]', '"hello"']:
        with pytest.raises(SystemExit) as info:
            cli.main(["render", "--in", write(tmp_path, "bad.json", text)])
        assert info.value.code == 2


def test_verification_failure_exits_1(capsys, monkeypatch):
    monkeypatch.setattr(cli, "run_all", lambda max_n, jobs=1: [CheckResult("1", "x", False, 1, "boom")])
    code, out, _ = run(capsys, "verify-all", "--max-n", "1")
    assert code == 1 and "FAIL" in out


def test_module_entry_point_is_deterministic():
    argv = [sys.executable, "-m", "rhombic", "verify-all", "--max-n", "3"]
    first = subprocess.run(argv, capture_output=True, check=False)
    second = subprocess.run(argv, capture_output=True, check=False)
    assert first.returncode == 0, first.stderr
    assert first.stdout == second.stdout
    assert first.stdout.decode().splitlines()[-1] == "9/9 passed"
