import json
from fractions import Fraction
import subprocess
import sys

import pytest

from fglforge.cli import main
from fglforge.errors import ConfigError, TruncationError
from fglforge.verify import bp_context, default_plan, parse_element, resolve_jobs, run_check, run_plan


def run(args, capsys):
    code = main(args)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_parse_element_text():
    ctx = bp_context(2, 8)
    assert parse_element("2*v1^2 - v2", ctx) == (ctx.v(1) ** 2).scale(2) - ctx.v(2)
    assert parse_element("v0*v1", ctx) == ctx.v(1).scale(2)
    assert parse_element("1/3*v1", ctx) == ctx.v(1).scale(Fraction(1, 3))
    with pytest.raises(TypeError):
        ctx.v(1).scale(0.5)


@pytest.mark.parametrize("text,err", [("v1 +* v2", ConfigError), ("", ConfigError), ("v9", TruncationError), ("w1", ConfigError)])
def test_parse_element_errors(text, err):
    with pytest.raises(err):
        parse_element(text, bp_context(2, 8))


def test_jobs_from_environment(monkeypatch):
    monkeypatch.setenv("FGLFORGE_JOBS", "3")
    assert resolve_jobs(None) == 3
    assert resolve_jobs(2) == 2
    monkeypatch.setenv("FGLFORGE_JOBS", "x")
    with pytest.raises(ConfigError):
        resolve_jobs(None)


def test_run_check_unknown():
    with pytest.raises(ConfigError):
        run_check({"name": "nope"})


def test_plan_with_failing_and_bad_checks():
    report, code = run_plan({"checks": [{"name": "eq1", "prime": 2, "dimBound": 4}]})
    assert code == 0 and report["summary"]["passed"] == 1
    report, code = run_plan({"checks": [{"name": "prop31", "prime": 2, "dimBound": 3, "monomial": [1, 1]}]})
    assert code == 2
    assert "truncation insufficient" in report["summary"]["configErrors"][0]
    report, code = run_plan({"checks": [{"name": "eq1", "prime": 4, "dimBound": 4}]})
    assert code == 2


def test_plan_report_is_deterministic():
    plan = default_plan(3, 8)
    a, _ = run_plan(plan)
    b, _ = run_plan(plan, jobs=2)
    assert json.dumps(a) == json.dumps(b)


def test_cli_bp_generators(capsys):
    code, out, _ = run(["bp", "generators", "--prime", "2", "--dimbound", "7", "--json"], capsys)
    data = json.loads(out)
    assert code == 0
    assert [g["dim"] for g in data["generators"]] == [1, 3, 7]
    assert all(g["nuElement"] for g in data["generators"])


def test_cli_pseries_text(capsys):
    code, out, _ = run(["bp", "p-series", "--prime", "2", "--dimbound", "3"], capsys)
    assert code == 0 and "(-8*v1^3 - 7*v2)*t^3" in out


def test_cli_fgl(capsys):
    code, out, _ = run(["fgl", "universal", "--xbound", "5", "--dimbound", "4", "--verify-assoc", "--json"], capsys)
    data = json.loads(out)
    assert code == 0 and data["unit"] and data["commutative"] and data["associative"]
    code, out, _ = run(["fgl", "log", "--dimbound", "2"], capsys)
    assert "m2 = 2*b1^2 - b2" in out


def test_cli_charnums(capsys):
    element = json.dumps({"alphabet": "b", "terms": [{"coeff": "6", "exps": {"1": 2}}, {"coeff": "-3", "exps": {"2": 1}}]})
    code, out, _ = run(["fgl", "charnums", "--element", element], capsys)
    data = json.loads(out)
    assert code == 0 and data["dim"] == 2 and data["integral"]


def test_cli_member(capsys):
    element = json.dumps({"alphabet": "v", "prime": 2, "terms": [{"coeff": "4", "exps": {"1": 1}}]})
    code, out, _ = run(["bp", "member", "--element", element, "--power", "3"], capsys)
    assert code == 0 and json.loads(out)["member"] is True


def test_cli_ops(capsys):
    code, out, _ = run(["ops", "steenrod", "--element", "v1", "--dimbound", "5"], capsys)
    data = json.loads(out)
    assert code == 0 and data["coeffs"]["-2"]["terms"][0]["coeff"] == "-2/1"
    code, out, _ = run(["ops", "phi", "--element", "v1", "--dimbound", "5"], capsys)
    assert code == 0 and "-2" in json.loads(out)["coeffs"]
    code, _, err = run(["ops", "steenrod", "--element", "v2", "--dimbound", "4"], capsys)
    assert code == 2 and "truncation insufficient" in err


def test_cli_verify_single(capsys):
    assert run(["verify", "prop31", "--monomial", "1,1"], capsys)[0] == 0
    assert run(["verify", "cor32", "--element", "v1^2"], capsys)[0] == 0
    assert run(["verify", "coset-independence", "--reps1", "1", "--reps2", "3"], capsys)[0] == 0
    assert run(["verify", "coset-independence", "--reps1", "1", "--reps2", "2"], capsys)[0] == 2
    assert run(["verify", "prop31", "--monomial", "1,1", "--dimbound", "3"], capsys)[0] == 2


def test_cli_verify_plan_file(tmp_path, capsys):
    plan = tmp_path / "plan.json"
    plan.write_text(json.dumps({"checks": [{"name": "nu-elements", "prime": 3, "dimBound": 8}]}))
    out = tmp_path / "report.json"
    code, _, err = run(["verify", "plan", str(plan), "--out", str(out)], capsys)
    assert code == 0 and "1/1 checks passed" in err
    assert json.loads(out.read_text())["summary"]["pass"]
    assert run(["verify", "plan", str(tmp_path / "missing.json")], capsys)[0] == 2


def test_cli_verify_all_bad_prime(capsys):
    code, _, err = run(["verify", "all", "--prime", "6"], capsys)
    assert code == 2 and "not a prime" in err


def test_cli_koszul(capsys):
    code, out, _ = run(["koszul", "rost", "--n", "5", "--tor", "--syzygy-report", "--exactness", "--json"], capsys)
    data = json.loads(out)
    assert code == 0
    assert data["syzygy"]["topGenerator"]["discrepancy"] is True
    assert data["tor"]["ranks"] == {"0": 4, "1": 6, "2": 4, "3": 1}
    code, out, _ = run(["koszul", "descent", "--n", "3", "--relation", "v1^3 + 2*v2"], capsys)
    assert code == 0 and json.loads(out)["pass"]
    assert run(["koszul", "descent", "--n", "3", "--relation", "2*v1"], capsys)[0] == 2
    assert run(["koszul", "descent", "--prime", "3", "--relation", "v1"], capsys)[0] == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "fglforge", "bp", "p-series", "--prime", "3", "--dimbound", "4"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert "(-8*v1)*t^2" in proc.stdout


def test_empty_plan():
    report, code = run_plan({"checks": []})
    assert code == 0 and report["checks"] == [] and report["summary"]["pass"]


def test_cli_json_round_trips(capsys):
    from fglforge.serialize import dumps, tlaurent_from_json, tlaurent_to_json

    for args in (["ops", "steenrod", "--element", "2*v1", "--dimbound", "6"], ["bp", "p-series", "--dimbound", "5", "--json"]):
        code, out, _ = run(args, capsys)
        assert code == 0
        value = tlaurent_from_json(out)
        assert dumps(tlaurent_to_json(value)) == out


def test_report_embeds_defaults():
    report, _ = run_plan({"checks": [{"name": "eq1", "prime": 3, "dimBound": 4}]})
    assert report["defaults"] == {"prime": 2, "dimBound": 10, "xBound": 12}


@pytest.mark.parametrize(
    "relation",
    [
        "4*v2",
        '{"element": "v1^3", "m": 3}',
        '{"coeffs": {"e0": "v1*v2"}}',
        '{"alphabet": "v", "prime": 2, "terms": [{"coeff": "2", "exps": {"2": 1}}]}',
    ],
)
def test_cli_descent_inputs(capsys, relation):
    code, out, _ = run(["koszul", "descent", "--prime", "2", "--n", "3", "--relation", relation], capsys)
    assert code == 0 and json.loads(out)["pass"]


def test_cli_descent_bad_support(capsys):
    assert run(["koszul", "descent", "--relation", '{"coeffs": {"z": "v2"}}'], capsys)[0] == 2
