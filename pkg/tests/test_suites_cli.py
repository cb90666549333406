import csv
import io
import json

import pytest
from click.testing import CliRunner

from vertexlab.cli import main
from vertexlab.suites import ANCHORS, SUITES, anchor_for, run_suite


def run(*args):
    return CliRunner().invoke(main, list(args), catch_exceptions=False)


def test_every_result_anchor_is_registered():
    report = run_suite("all", seed=2, max_n=2)
    assert report.results
    for r in report.results:
        assert r.anchor in ANCHORS.values()
        assert anchor_for(r.id) == r.anchor
    with pytest.raises(KeyError):
        anchor_for("unknown.check")


def test_report_is_sorted_and_reproducible():
    a = run_suite("partition", seed=7, max_n=2)
    b = run_suite("partition", seed=7, max_n=2)
    assert [r.id for r in a.results] == sorted(r.id for r in a.results)
    assert json.dumps(a.to_dict()) == json.dumps(b.to_dict())
    c = run_suite("partition", seed=8, max_n=2)
    assert json.dumps(a.to_dict()) != json.dumps(c.to_dict())


def test_parallel_run_matches_serial():
    serial = run_suite("sov", seed=3, max_n=2)
    parallel = run_suite("sov", seed=3, max_n=2, jobs=2)
    assert serial.to_dict() == parallel.to_dict()


def test_unknown_suite():
    with pytest.raises(ValueError):
        run_suite("nonsense")
    assert set(SUITES) == {"local", "transfer", "sov", "partition", "asm"}


def test_verify_local_json_is_byte_identical():
    first = run("verify", "local", "--seed", "1", "--json")
    second = run("verify", "local", "--seed", "1", "--json")
    assert first.exit_code == 0
    assert first.output == second.output
    data = json.loads(first.output)
    assert data["passed"] is True
    assert all(r["status"] == "pass" for r in data["results"])
    assert "elapsed" not in data["results"][0]


def test_verify_timings_and_csv():
    res = run("verify", "sov", "--max-n", "2", "--timings", "--csv")
    assert res.exit_code == 0
    rows = list(csv.DictReader(io.StringIO(res.output)))
    assert rows and all(r["status"] == "pass" and r["elapsed"] for r in rows)


def test_verify_human_summary():
    res = run("verify", "local", "--seed", "1")
    assert res.exit_code == 0
    assert "39 passed, 0 failed" in res.output


def test_compute_genfun():
    assert run("compute", "genfun", "--class", "plain", "--size", "3").output.strip() == "6 + t"
    assert run("genfun", "--class", "vs", "--size", "5", "--closed-form").output.strip() == "2 + t"
    res = run("genfun", "--class", "qt", "--size", "8", "--compare", "--json")
    data = json.loads(res.output)
    assert data["match"] is True and data["enumeration"] == "12 + 22t + 6t^2"


def test_compute_sumrule():
    data = json.loads(run("compute", "sumrule", "--twist", "ad", "--N", "2", "--q", "2", "--y", "q",
                          "--json").output)
    assert data["spin_chain"] == data["determinant"] == "25/2"
    assert data["match"] is True
    assert data["anchor"]


def test_compute_component():
    data = json.loads(run("compute", "component", "--twist", "d", "--N", "4", "--q", "2",
                          "--pattern", "⇑⇓⇑⇓", "--json").output)
    assert data["value"] == "33/4" and data["evaluation"] == "exact"


def test_component_at_root_of_unity_is_extrapolated():
    data = json.loads(run("component", "--twist", "ad", "--N", "2", "--q", "1", "--pattern", "++",
                          "--json").output)
    assert data["value"] == "1"
    assert data["evaluation"].startswith("extrapolated")


def test_partition_with_oracle():
    res = run("partition", "--kind", "dwbc", "--sizes", "1,2", "--params-json",
              '{"q": "2", "z": ["3", "5"], "w": ["7", "11"]}', "--json")
    assert res.exit_code != 0  # size 1 needs one value per list
    res = run("partition", "--kind", "dwbc", "--sizes", "1", "--params-json",
              '{"q": "2", "z": ["3"], "w": ["7"]}', "--json")
    data = json.loads(res.output)
    assert data["value"] == data["oracle"] == "15/4" and data["match"] is True


@pytest.mark.parametrize("kind", ["htplus", "qt", "uturn", "uuturn", "zcap", "za", "ad", "mixed"])
def test_partition_kinds_match_oracles(kind):
    size = "2" if kind in ("qt", "mixed") else "1"
    data = json.loads(run("partition", "--kind", kind, "--sizes", size, "--seed", "4", "--json").output)
    assert data["match"] is True


def test_spectrum_outputs_and_figure(tmp_path):
    fig = tmp_path / "spec.png"
    res = run("spectrum", "--N", "2", "--x", "1", "--twist", "ad", "--json", "--figure", str(fig))
    data = json.loads(res.output)
    assert data["approximate"] is True
    assert {"sector", "eigenvalues", "zero_degeneracy", "min_eigenvalue"} <= set(data["sectors"][0])
    assert fig.exists() and fig.stat().st_size > 0
    sweep = tmp_path / "sweep.png"
    res = run("compute", "spectrum", "--N", "2", "--x", "-1,0,1/2", "--twist", "d", "--csv", "--figure", str(sweep))
    rows = list(csv.DictReader(io.StringIO(res.output)))
    assert len(rows) == 6 and sweep.exists()


def test_enumerate_json():
    data = json.loads(run("enumerate", "--class", "vs", "--size", "5", "--json").output)
    assert data["count"] == "3" and len(data["matrices"]) == 3


def test_vector_dump():
    res = run("vector", "--twist", "ad", "--N", "2", "--q", "2", "--dump", "--csv")
    rows = list(csv.DictReader(io.StringIO(res.output)))
    assert {r["pattern"]: r["value"] for r in rows}["00"] == "-5/2"


@pytest.mark.parametrize("args", [
    ["genfun", "--class", "plain", "--size", "9"],
    ["genfun", "--class", "nonsense", "--size", "3"],
    ["verify", "local", "--json", "--csv"],
    ["verify", "nonsense"],
    ["component", "--twist", "d", "--N", "2", "--q", "abc", "--pattern", "+-"],
    ["sumrule", "--twist", "d", "--N", "2", "--q", "2"],
    ["partition", "--kind", "dwbc", "--params-json", "{bad"],
    ["spectrum", "--N", "9", "--x", "1", "--twist", "d"],
])
def test_usage_errors_exit_2(args):
    res = CliRunner().invoke(main, args)
    assert res.exit_code == 2, res.output


def test_max_denominator_env_changes_draws():
    default = run("verify", "local", "--seed", "1", "--json").output
    small = CliRunner(env={"VERTEXLAB_MAX_DENOM": "20"}).invoke(main, ["verify", "local", "--seed", "1", "--json"])
    assert small.exit_code == 0 and small.output != default
