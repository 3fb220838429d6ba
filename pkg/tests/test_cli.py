import json

import pytest

from commuting_tuples.cli import main
from commuting_tuples.tables import golden_text


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_g_csv_and_both_methods(capsys):
    code, out, _ = run(capsys, "g", "--ell", "2", "--nmax", "6", "--method", "both")
    assert code == 0
    assert out.splitlines() == ["n,g_2", "1,1", "2,3", "3,4", "4,7", "5,6", "6,12"]


def test_count_json(capsys):
    code, out, _ = run(capsys, "count", "--ell", "3", "--nmax", "5", "--format", "json")
    assert code == 0
    assert json.loads(out)["values"][-1] == "39"


def test_count_ell_zero_is_fractional(capsys):
    code, out, _ = run(capsys, "count", "--ell", "0", "--nmax", "3")
    assert code == 0
    assert out.splitlines()[-1] == "3,1/6"


def test_poly(capsys):
    code, out, _ = run(capsys, "poly", "--ell", "2", "--n", "4", "--format", "json")
    d = json.loads(out)
    assert code == 0 and d["value_at_1"] == "5" and len(d["coeffs"]) == 5


def test_delta(capsys):
    code, out, _ = run(capsys, "delta", "--ell", "2", "--n", "25")
    assert code == 0
    assert out.splitlines()[1].endswith(",negative")


def test_table_t6_check(capsys):
    code, out, err = run(capsys, "table", "T6", "--check")
    assert code == 0
    assert out == golden_text("table6.tex")
    assert "matches" in err


def test_table_t6_json_to_file(capsys, tmp_path):
    dest = tmp_path / "t6.json"
    assert main(["table", "t6", "--format", "json", "--out", str(dest)]) == 0
    assert dest.read_text() == golden_text("table6.json")


def test_bounds_variants(capsys):
    _, out, _ = run(capsys, "bounds", "--n-lo", "20", "--n-hi", "20", "--variant", "proof")
    row = json.loads(out)[0]
    assert row["L_ceil"] == 487 and row["certified_sign"] == "negative"
    _, out, _ = run(capsys, "bounds", "--n-lo", "1", "--n-hi", "3", "--format", "csv")
    assert out.splitlines()[1:] == ["1,,,,7,,negative", "2,2,,1,2,2,positive",
                                    "3,3,2,1/2,40,713,positive"]


def test_classify(capsys):
    code, out, _ = run(capsys, "classify", "--n-lo", "3", "--n-hi", "3", "--format", "json")
    assert code == 0
    assert json.loads(out)[0]["intervals"] == [[2, 13]]


def test_scan(capsys):
    code, out, _ = run(capsys, "scan", "--n-hi", "5", "--ell-hi", "3", "--workers", "2")
    assert code == 0
    assert len(out.splitlines()) == 1 + 5 * 4


def test_oracle_both_methods(capsys):
    code, out, _ = run(capsys, "oracle", "--n", "3", "--ell", "2")
    assert code == 0 and json.loads(out)["raw"] == 18
    code, out, _ = run(capsys, "oracle", "--n", "7", "--ell", "2", "--method", "centralizer")
    assert code == 0 and json.loads(out)["normalized"] == "15"


def test_verify_bounds_suite(capsys):
    code, out, _ = run(capsys, "verify", "bounds")
    report = json.loads(out)
    assert code == 0 and report["ok"] and len(report["checks"]) == 4


@pytest.mark.parametrize("argv", [
    ["oracle", "--n", "9", "--ell", "2"],
    ["delta", "--ell", "2", "--n", "0"],
    ["table", "T9"],
    ["count", "--ell", "2"],
    ["scan", "--n-hi", "3", "--ell-hi", "2", "--workers", "0"],
])
def test_usage_errors_exit_2(capsys, argv):
    code, _, _ = run(capsys, *argv)
    assert code == 2


def test_corrupt_checkpoint_exits_2(capsys, tmp_path):
    ck = tmp_path / "ck.json"
    ck.write_text("garbage")
    code, _, err = run(capsys, "scan", "--n-hi", "3", "--ell-hi", "2", "--checkpoint", str(ck))
    assert code == 2 and "checkpoint" in err


def test_help_exits_0(capsys):
    assert run(capsys, "--help")[0] == 0


def test_config_precedence(capsys, tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"format": "json", "count": {"nmax": 4}}))
    # config supplies nmax and format
    code, out, _ = run(capsys, "--config", str(cfg), "count", "--ell", "2")
    assert code == 0
    assert json.loads(out)["values"] == ["1", "1", "2", "3", "5"]
    # flags beat config
    code, out, _ = run(capsys, "--config", str(cfg), "count", "--ell", "2", "--nmax", "2",
                       "--format", "csv")
    assert out.splitlines() == ["n,N_2", "0,1", "1,1", "2,2"]


def test_bad_config_exits_2(capsys, tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text("[1, 2]")
    assert run(capsys, "--config", str(cfg), "count", "--ell", "2", "--nmax", "3")[0] == 2
