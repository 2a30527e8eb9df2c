import json

from idcalc.polynomials import Orientation
from idcalc.relations import (CATALOGUE, check_all, check_relation,
                              reports_to_json)

ALL_RULES = ["R5", "R4bis", "S0", "R1", "R1bis", "R2", "R3", "S3", "R7",
             "S7bis", "R7ter", "R7quater", "R7penta", "R9", "R9.1", "R9.2",
             "R9.3", "R9bis", "R9ter", "R10", "R10.1", "R10bis", "R11", "R12",
             "R12.1", "R13", "R14", "R15", "R16", "R16.1", "R16.2", "R16.3",
             "R16.4", "R16.5", "R17", "R17bis"]


def test_catalogue_is_complete_and_ordered():
    assert list(CATALOGUE) == ALL_RULES
    assert len(CATALOGUE) == 36


def test_single_rule_verifies():
    report = check_relation("R7", trials=5, seed=1)
    assert report.verdict == "Verified"
    assert report.trials == 5


def test_reports_are_deterministic():
    a = check_relation("R16", trials=4, seed=9)
    b = check_relation("R16", trials=4, seed=9)
    assert a.verdict == b.verdict == "Verified"


def test_unknown_rule_is_skipped():
    report = check_relation("R99", trials=1, seed=0)
    assert report.verdict == "Skipped"


def test_swapped_orientation_fails_endpoint_rules_with_identity_witness():
    for rule in ("R14", "R15", "R16"):
        report = check_relation(rule, trials=3, seed=0,
                                orientation=Orientation.LOWER)
        assert report.verdict == "Failed", rule
        # the canonical first trial is the identity map on the line
        assert report.witness["trial"] == 0
        assert "1 x1" in report.witness["lhs_term"]


def test_adopted_orientation_verifies_endpoint_rules():
    for rule in ("R14", "R15", "R16", "R16.1", "R16.2", "R16.3", "R16.4", "R16.5"):
        report = check_relation(rule, trials=5, seed=0)
        assert report.verdict == "Verified", (rule, report.witness)


def test_report_line_format():
    report = check_relation("R9", trials=2, seed=3)
    line = report.line()
    assert line.startswith("R9 Verified trials=2 time=")
    assert line.endswith("ms")


def test_json_report_carries_witnesses():
    reports = [check_relation("R16", trials=2, seed=0,
                              orientation=Orientation.LOWER)]
    payload = json.loads(reports_to_json(reports))
    assert payload[0]["verdict"] == "Failed"
    assert "lhs_value" in payload[0]["witness"]
    assert "instantiation" in payload[0]["witness"]


def test_check_all_subset():
    reports = check_all(trials=2, seed=4, rules=["R7", "R9"])
    assert [r.rule_id for r in reports] == ["R7", "R9"]
    assert all(r.verdict == "Verified" for r in reports)
