import json
import subprocess
import sys

import pytest

from nonret import harness
from nonret.cli import main
from nonret.report import DISCREPANCY, FAIL, PASS, ClaimReport, Row, status_from_rows
from nonret.transform import BudgetExceeded

# one claim family per item of the main theorem, plus the supporting propositions
EXPECTED_IDS = {
    "thm1-witness-valid",
    "thm1.1-semigroup", "thm1.1-semigroup-printed", "thm1.1-sufficiency", "thm1.1-generators",
    "thm1.2-quotients",
    "thm1.3-reverse", "thm1.3-atoms", "prop4-binary-exhaustive",
    "thm1.4-atoms", "thm1.4-alphabet",
    "thm1.5-star",
    "thm1.6a-product-restricted", "thm1.6b-product-unrestricted",
    "thm1.7a-boolean-restricted", "thm1.7b-boolean-restricted-same",
    "thm1.7c-union-symdiff-unrestricted", "thm1.7c-intersection-unrestricted",
    "thm1.7c-difference-unrestricted",
}


@pytest.fixture(scope="module")
def reports():
    return harness.verify_all(harness.RunConfig())


def test_registry_is_complete():
    assert set(harness.CLAIMS) == EXPECTED_IDS
    for item in range(1, 8):
        assert any(c.startswith(f"thm1.{item}") for c in harness.CLAIMS)


def test_default_run(reports):
    assert len(reports) >= 14
    assert [r.claim_id for r in reports] == sorted(EXPECTED_IDS)
    assert all(r.status in (PASS, DISCREPANCY) for r in reports), \
        [r.line() for r in reports if r.status == FAIL]
    assert harness.exit_code(reports) == 0
    documented = {r.claim_id for r in reports if r.status == DISCREPANCY}
    assert documented == {"thm1.1-semigroup-printed", "thm1.4-atoms",
                          "thm1.6b-product-unrestricted", "thm1.7c-difference-unrestricted"}


def test_pass_means_rows_match(reports):
    for r in reports:
        if r.status == PASS:
            assert all(row.predicted == row.measured for row in r.rows), r.claim_id


def test_json_is_deterministic(reports):
    again = harness.verify_all(harness.RunConfig())
    a = harness.render(reports, "json", with_runtime=False)
    b = harness.render(again, "json", with_runtime=False)
    assert a == b
    assert json.loads(a)["schema"] == harness.SCHEMA


def test_csv_and_text_render(reports):
    csv_out = harness.render(reports, "csv")
    assert csv_out.splitlines()[0].startswith("claim_id,status")
    assert len(csv_out.splitlines()) == len(reports) + 1
    assert "[PASS] thm1.5-star" in harness.render(reports)


def test_status_rules():
    assert status_from_rows([Row({}, 3, 3)]) == PASS
    assert status_from_rows([Row({}, 3, 3, alternative=4)]) == DISCREPANCY
    assert status_from_rows([Row({}, 3, 4, alternative=4)]) == DISCREPANCY
    assert status_from_rows([Row({}, 3, 5, alternative=4)]) == FAIL
    assert harness.exit_code([ClaimReport("x", {}, 1, 2, FAIL)]) == 1


def test_errors():
    with pytest.raises(KeyError, match="thm1.5-star"):
        harness.verify("no-such-claim")
    with pytest.raises(ValueError, match="thm1.5-star"):
        harness.verify_all(claims=[])
    with pytest.raises(BudgetExceeded):
        harness.verify("thm1.1-semigroup", harness.RunConfig(n_range=(9, 9)))
    with pytest.raises(BudgetExceeded):
        harness.verify("prop4-binary-exhaustive", harness.RunConfig(n_range=(5, 5)))


def test_ranges_are_honoured():
    rep = harness.verify("thm1.5-star", harness.RunConfig(n_range=(5, 6)))
    assert [row.params["n"] for row in rep.rows] == [5, 6]


def test_table_formats():
    text = harness.table("thm1.7c-difference-unrestricted")
    assert "mn-n+2" in text and "mn-n+1" in text
    data = json.loads(harness.table("thm1.5-star", fmt="json"))
    assert data["columns"][-1] == "measured"
    assert harness.table("thm1.5-star", fmt="csv").startswith("n,")


def test_cli_verify_and_exit_code(capsys):
    assert main(["verify", "--claim", "thm1.5-star", "--n", "4..6", "--format", "json"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["reports"][0]["status"] == PASS
    assert main(["verify", "--claim", "nope"]) == 2


def test_cli_witness_round_trip(tmp_path, capsys):
    assert main(["witness", "--n", "5", "--dialect", "a,b"]) == 0
    path = tmp_path / "w.txt"
    path.write_text(capsys.readouterr().out)
    assert main(["op", "star", "--dfa", str(path), "--emit", "count"]) == 0
    assert capsys.readouterr().out.strip() == "16"
    assert main(["atoms", "--dfa", str(path)]) == 0
    assert "atoms=6" in capsys.readouterr().out
    assert main(["op", "union", "--left", str(path), "--right", str(path), "--emit", "json"]) == 0
    assert json.loads(capsys.readouterr().out)["complexity"] == 5


def test_cli_atoms_bounds(tmp_path, capsys):
    main(["witness", "--n", "4"])
    path = tmp_path / "w.txt"
    path.write_text(capsys.readouterr().out)
    assert main(["atoms", "--dfa", str(path), "--bounds", "--format", "json"]) == 0
    records = json.loads(capsys.readouterr().out)["atoms"]
    assert len(records) == 16 and all(r["tight"] for r in records)
    assert main(["atoms", "--exhaustive-binary", "--n", "4"]) == 0
    assert "measured=13" in capsys.readouterr().out


def test_cli_semigroup_from_file(tmp_path, capsys):
    gens = tmp_path / "gens.txt"
    gens.write_text("# the two letters of L_4(a,b)\n[1,2,3,1]\n[2,2,1,3]\n")
    assert main(["semigroup", "--generators", str(gens)]) == 0
    assert "size" in capsys.readouterr().out
    assert main(["semigroup", "--n", "4", "--check"]) == 0
    assert "[PASS] prop1-generator-necessity" in capsys.readouterr().out


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "nonret", "claims"], capture_output=True,
                         text=True, check=True).stdout
    assert "thm1.3-atoms" in out
