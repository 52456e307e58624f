import io
import json

import pytest

from gcx.cli import parse_range, read_config, run


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), out)
    return code, out.getvalue()


def test_basis_double_arrow():
    code, text = call("basis", "--family", "dgc", "--k", "3", "--loops", "1", "--vertices", "2")
    assert code == 0
    assert text.splitlines() == ["v=2;E=(0,1)(0,1)"]


def test_verify_d2():
    code, _ = call("verify-d2", "--family", "dgc", "--k", "2", "--loops", "1..3", "--vertices", "1..4")
    assert code == 0


def test_verify_d2_weighted_default_window():
    code, text = call("verify-d2", "--flavor", "quasi", "--variant", "plus", "--loops", "1", "--max-weight", "3", "--format", "json")
    assert code == 0
    assert json.loads(text)["passed"]


def test_rescaling_class():
    code, text = call("rescaling-class", "--flavor", "normal", "--max-weight", "3")
    assert code == 0
    assert text.strip() == "1*[v=1;E=;w=(1,2)] + 1*[v=1;E=;w=(2,1)]"
    code, text = call("rescaling-class", "--flavor", "normal", "--max-weight", "3", "--format", "json")
    assert json.loads(text)["terms"] == [["v=1;E=;w=(1,2)", 1], ["v=1;E=;w=(2,1)", 1]]


def test_cohomology_json_and_csv():
    code, text = call("cohomology", "--family", "dgc", "--k", "2", "--loops", "2", "--vertices", "1..3", "--format", "json")
    assert code == 0
    doc = json.loads(text)
    assert doc["tables"][0]["label"] == "dgc"
    code, text = call("cohomology", "--family", "dgc", "--k", "2", "--loops", "2", "--vertices", "1..3", "--format", "csv")
    assert text.splitlines()[0] == "b,W,degree,dim,rank_out,rank_in,h"


def test_euler():
    code, text = call("euler", "--flavor", "normal", "--variant", "b0", "--k", "2", "--loops", "0", "--max-weight", "4", "--format", "json")
    assert code == 0
    assert json.loads(text)["series"][0]["euler"] is not None


def test_chain_map_and_compare():
    code, _ = call("verify-chain-map", "--map", "G_ogc_to_owqgc", "--k", "3", "--loops", "1", "--vertices", "2..4", "--max-weight", "3")
    assert code == 0
    code, text = call("compare", "--map", "reverse_edges", "--k", "3", "--loops", "2", "--vertices", "1..4", "--format", "json")
    assert code == 0 and json.loads(text)["passed"]


@pytest.mark.parametrize(
    "argv",
    [
        ["nonsense"],
        ["basis", "--family", "gc", "--k", "2", "--loops", "1", "--vertices", "2"],
        ["basis", "--family", "dgc", "--loops", "1", "--vertices", "2"],
        ["basis", "--family", "dgc", "--k", "2"],
        ["basis", "--family", "dgc", "--flavor", "quasi", "--k", "2", "--loops", "1"],
        ["cohomology", "--family", "dgc", "--k", "2", "--loops", "3..1", "--vertices", "2"],
        ["compare", "--map", "G_ogc_to_owqgc", "--k", "3", "--loops", "1", "--degrees", "0", "--max-weight", "3"],
        ["rescaling-class", "--flavor", "pseudo", "--variant", "plus", "--max-weight", "3", "--jobs", "0"],
        ["cohomology", "--family", "dgc", "--k", "2", "--loops", "1", "--vertices", "2", "--field", "zp:x"],
    ],
)
def test_usage_errors(argv):
    assert run(argv, io.StringIO()) == 2


def test_verification_failure_exit_code(monkeypatch, capsys):
    import gcx.cli as cli
    from gcx.families import ClosureReport, FamilyId, SliceCheck

    def broken(fam, k, b, vs):
        return ClosureReport(FamilyId.DGC, k, b, [SliceCheck(2, 1, True, False, ["v=2;E=(0,1)(0,1)"])])

    monkeypatch.setattr(cli, "closure_report", broken)
    assert run(["verify-d2", "--family", "dgc", "--k", "3", "--loops", "1", "--vertices", "2"], io.StringIO()) == 1
    assert "v=2;E=(0,1)(0,1)" in capsys.readouterr().err


def test_parse_range():
    assert parse_range("3") == [3]
    assert parse_range("1..3") == [1, 2, 3]
    assert parse_range("-2..0,4") == [-2, -1, 0, 4]


def test_config(tmp_path):
    path = tmp_path / "gcx.conf"
    path.write_text("[gcx]\ncache-dir = /tmp/x  # comment\nfield = zp\nprime = 101\n")
    assert read_config(str(path)) == {"cache_dir": "/tmp/x", "field": "zp", "prime": "101"}
    code, text = call(
        "cohomology", "--family", "dgc", "--k", "2", "--loops", "2", "--vertices", "1..2",
        "--config", str(path), "--cache-dir", str(tmp_path / "c"), "--format", "json",
    )
    assert code == 0 and json.loads(text)["field"] == "101"


JOB = ["compare", "--map", "G_ogc_to_owqgc", "--k", "3", "--loops", "1", "--degrees", "-2..0", "--max-weight", "3..4", "--format", "json"]


def test_output_is_deterministic(tmp_path):
    base = call(*JOB)
    assert base[0] == 0
    for jobs in ("1", "2"):
        cache = tmp_path / f"c{jobs}"
        cold = call(*JOB, "--jobs", jobs, "--cache-dir", str(cache))
        warm = call(*JOB, "--jobs", jobs, "--cache-dir", str(cache))
        assert cold == base and warm == base
