import json
from fractions import Fraction as F

import pytest

from probident import reporting as rep
from probident.cli import full_report, run
from probident.exact import PiGraded
from probident.identities import IdentityId, verify


def test_verify_gould(capsys):
    assert run(["verify", "--identity", "gould-6.60", "--n", "1"]) == 0
    out = capsys.readouterr().out
    assert "lhs=4 rhs=4 equal=true" in out


def test_verify_alternating_odd(capsys):
    assert run(["verify", "--identity", "alternating-convolution", "--n", "3"]) == 0
    assert "lhs=0 rhs=0" in capsys.readouterr().out


def test_verify_central_note_json(capsys):
    assert run(["verify", "--identity", "central-convolution", "--n", "4", "--format", "json"]) == 0
    d = json.loads(capsys.readouterr().out)
    assert "k = 0" in d["note"]
    assert d["lhs"] == [[0, "256/1"]] and d["equal"] is True


def test_sweep_brychkov_csv(capsys):
    assert run(["sweep", "--identity", "brychkov", "--n-max", "20", "--format", "csv"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert len(lines) == 21
    assert all(",true," in line for line in lines[1:])


def test_sweep_parametric_with_p_list(capsys):
    assert run(["sweep", "--identity", "beta-moment", "--n-max", "3", "--p-list", "1/3,1/2,1", "--format", "json"]) == 0
    rows = json.loads(capsys.readouterr().out)
    assert len(rows) == 9 and {r["p"] for r in rows} == {"1/3", "1/2", "1/1"}


def test_sweep_parametric_defaults_to_p_points(capsys):
    assert run(["sweep", "--identity", "gamma-even-moment", "--n-max", "2", "--format", "json"]) == 0
    assert len(json.loads(capsys.readouterr().out)) == 12 + 20


def test_usage_errors(capsys):
    assert run(["verify", "--identity", "nope", "--n", "1"]) == 2
    assert run(["verify", "--identity", "beta-moment", "--n", "1"]) == 2
    assert run(["verify", "--identity", "beta-moment", "--n", "1", "--p", "1/x"]) == 2
    assert run(["sample", "--statistic", "bogus", "--n", "1"]) == 2
    assert run(["sweep", "--identity", "multi-convolution", "--n-max", "2"]) == 2
    assert run([]) == 2


def test_unwritable_output(tmp_path):
    target = tmp_path / "missing" / "out.json"
    assert run(["verify", "--identity", "brychkov", "--n", "1", "--output", str(target)]) == 2


def test_output_file(tmp_path):
    target = tmp_path / "out.json"
    assert run(["verify", "--identity", "brychkov", "--n", "2", "--format", "json", "--output", str(target)]) == 0
    assert json.loads(target.read_text())["identity"] == "brychkov"


def test_sample_command(capsys):
    assert run(["sample", "--statistic", "t-ratio", "--n", "1", "--p", "1/2", "--samples", "20000", "--format", "json"]) == 0
    d = json.loads(capsys.readouterr().out)
    assert d["p"] == "1/2" and d["exact_target"] == 0.5 and d["passed"] is True


def test_series_command(capsys):
    assert run(["series", "--n", "2", "--terms", "200", "--format", "json"]) == 0
    d = json.loads(capsys.readouterr().out)
    assert d["partial_le_target"] and d["target_le_partial_plus_tail"]
    assert "1/k!" in d["note"]
    assert F(d["partial_sum"]) > 0


def test_density_command(capsys):
    assert run(["density", "--points", "10", "--format", "json"]) == 0
    rows = json.loads(capsys.readouterr().out)
    assert all(r["passed"] for r in rows)
    assert {r["check"] for r in rows} == {"beta-diff-moment", "t-moment", "symmetry", "appell-reduction"}


def test_failed_check_exit_code(monkeypatch, capsys):
    import probident.identities as ids

    def broken(n, p, lhs):
        return PiGraded.rational(1 if lhs else 2)

    monkeypatch.setitem(ids._EVALUATORS, IdentityId.BRYCHKOV, broken)
    assert run(["verify", "--identity", "brychkov", "--n", "1"]) == 1


# -- serialization --------------------------------------------------------------

def test_json_round_trip_every_identity():
    for iid in IdentityId:
        p = 3 if iid.value in ("gamma-even-moment", "beta-moment", "multi-convolution") else None
        r = verify(iid, 3, p)
        d = json.loads(json.dumps(rep.report_to_dict(r)))
        assert rep.report_from_dict(d) == r
        assert set(rep.REPORT_COLUMNS) - {"note"} <= set(d)


def test_csv_round_trip():
    reports = [verify("remark2-series", n) for n in range(1, 4)] + [verify("beta-moment", 2, F(2, 7))]
    assert rep.reports_from_csv(rep.reports_to_csv(reports)) == reports


def test_huge_values_have_null_approx():
    r = verify("p-equals-n", 100)
    d = rep.report_to_dict(r)
    assert d["approx_lhs"] is None
    assert rep.report_from_dict(d).lhs == r.lhs


def test_full_report_covers_each_identity_once():
    report = full_report(n_max=3, terms=200)
    names = [s["identity"] for s in report["identities"]]
    assert sorted(names) == sorted(i.value for i in IdentityId)
    assert len(names) == len(set(names))
    assert report["all_passed"]
    entry = next(s for s in report["identities"] if s["identity"] == "remark2-series")
    assert "series" in entry and "1/k!" in entry["note"]


def test_report_command_json(capsys):
    assert run(["report", "--all", "--n-max", "2", "--terms", "100", "--format", "json"]) == 0
    d = json.loads(capsys.readouterr().out)
    assert d["all_passed"] is True


def test_parallel_sweep_order(monkeypatch, capsys):
    run(["sweep", "--identity", "gould-6.60", "--n-max", "12", "--format", "csv"])
    serial = capsys.readouterr().out
    monkeypatch.setenv("MIL_THREADS", "4")
    run(["sweep", "--identity", "gould-6.60", "--n-max", "12", "--format", "csv"])
    assert capsys.readouterr().out == serial


@pytest.mark.parametrize("fmt", ["text", "csv", "json"])
def test_report_formats(fmt, capsys):
    assert run(["report", "--all", "--n-max", "1", "--terms", "50", "--format", fmt]) == 0
    assert capsys.readouterr().out.strip()


def test_series_long_partial_sum_round_trips(capsys):
    # the exact partial sum has tens of thousands of digits at this K
    assert run(["series", "--n", "1", "--terms", "5000", "--format", "json"]) == 0
    d = json.loads(capsys.readouterr().out)
    assert len(d["partial_sum"]) > 4300
    assert float(rep.rational_from_str(d["partial_sum"])) == pytest.approx(d["approx_partial_sum"])
