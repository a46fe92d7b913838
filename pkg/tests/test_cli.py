import csv
import io
import json

import pytest
from click.testing import CliRunner

from bredon.cli import ChartRequest, compute_chart, main, parse_range
from bredon.mackey import from_dict, zoo_names
from bredon.recognition import fingerprint

runner = CliRunner()


def run(*args):
    return runner.invoke(main, list(args))


def test_I_row():
    r = run("compute", "--coeff", "I", "--x", "0:4", "--y", "-3")
    assert r.exit_code == 0
    row = r.output.splitlines()[1].split("  ")
    cells = [c.strip() for c in row if c.strip()]
    assert cells == ["-3", "<Z> + <F2>^2", "0", "<F2>^3", "phi*f", "0"]


def test_minus_convention_flips_y():
    plus = run("compute", "--coeff", "I", "--x", "0:4", "--y", "-3").output
    minus = run("compute", "--coeff", "I", "--x", "0:4", "--y", "3", "--convention", "minus").output
    assert plus.splitlines()[1].split()[1:] == minus.splitlines()[1].split()[1:]


def test_A_cell():
    r = run("compute", "--coeff", "A", "--x", "5", "--y", "-5")
    assert r.exit_code == 0 and "phi*f + <F2>^3" in r.output


def test_empty_range():
    r = run("compute", "--x", "1:0", "--y", "0")
    assert r.exit_code == 0 and r.output == "(empty chart)\n"
    assert compute_chart(ChartRequest(xs=(), ys=(1,))) == []


def test_cap_and_bad_names():
    assert run("compute", "--x", "17", "--y", "0").exit_code == 2
    assert run("compute", "--x", "17", "--y", "0", "--max-degree", "17").exit_code == 0
    assert run("compute", "--coeff", "B").exit_code == 2
    assert run("compute", "--x", "a:b").exit_code == 2
    assert run("compute", "--grading", "sigma:e").exit_code == 2


def test_parse_range():
    assert parse_range("-2:1") == (-2, -1, 0, 1)
    assert parse_range("1,3") == (1, 3)
    assert parse_range("4") == (4,)
    assert parse_range("") == ()


def test_json_round_trip_and_determinism():
    args = ("compute", "--coeff", "A", "--x", "0:3", "--y", "-2,1", "--format", "json")
    first, second = run(*args).output, run(*args).output
    assert first == second
    doc = json.loads(first)
    assert doc["schema"] == 1 and len(doc["cells"]) == 8
    for cell in doc["cells"]:
        assert fingerprint(from_dict(cell["mackey"])).to_list() == cell["fingerprint"]


def test_csv_rows():
    out = run("compute", "--coeff", "Z", "--x", "0:1", "--y", "-1", "--format", "csv").output
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 2 * 5
    assert {r["level"] for r in rows} == {"e", "L", "D", "R", "K"}


def test_level_view():
    out = run("compute", "--coeff", "A", "--grading", "sigma:L", "--x", "0", "--y", "-1", "--level", "K").output
    assert out.splitlines()[1].split()[1] == "Z^3"


def test_c2():
    out = run("compute", "--group", "C2", "--grading", "sigma", "--x", "0:1", "--y", "-1").output
    assert out.splitlines()[1].split()[1:] == ["<Z>", "f"]


def test_zoo():
    listed = run("zoo", "list").output.splitlines()
    assert listed == zoo_names("K4")
    shown = run("zoo", "show", "A").output
    assert "res K>L: [[2, 0, 1, 1, 0], [0, 2, 0, 0, 1]]" in shown
    assert "K4/e: 0" in run("zoo", "show", "I").output
    assert run("zoo", "show", "nope").exit_code == 2
    assert run("zoo", "show").exit_code == 2


@pytest.mark.parametrize("suite", ["ses", "catalog"])
def test_verify(suite):
    r = run("verify", "--suite", suite)
    assert r.exit_code == 0, r.output
    assert r.output.rstrip().endswith("checks passed")
    assert "[FAIL]" not in r.output


def test_ss_command():
    r = run("ss", "--group", "C2", "--k", "2")
    assert r.exit_code == 0
    assert "n=2: match" in r.output
    assert run("ss", "--k", "0").exit_code == 2
    doc = json.loads(run("ss", "--coeff", "I", "--k", "2", "--format", "json").output)
    assert {(e["i"], e["j"]): e["name"] for e in doc["entries"]}[(1, 1)] == "phi*Z"
