import json
import time

import pytest

from cleanring import Classifier, Property, get_ring
from cleanring.errors import BudgetExceededError
from cleanring.harness import CASE_IDS, CASES, DEFAULT_SWEEP, FAMILIES, sweep, verify

EXPECTED_IDS = (
    "T2.1 C2.2 T2.3 C2.4 L2.5 T2.6 C2.7 L3.1 T3.2 C3.3 T3.4 C3.6 T4.1 C4.2 E4.3 "
    "P4.4 C4.5 T4.6 C4.7 P4.8 E4.9 L4.10 T4.11 C4.12 L4.13 T4.14 C4.15"
).split()


class SwappedJClassifier(Classifier):
    """Deliberately wrong: answers J-quasipolar when asked for perfectly J-clean."""

    def candidates(self, prop, a):
        if prop is Property.PERFECTLY_J_CLEAN:
            prop = Property.J_QUASIPOLAR
        return super().candidates(prop, a)


class OptimisticClassifier(Classifier):
    def holds(self, prop, a):
        return True


def test_case_coverage():
    assert list(CASE_IDS) == EXPECTED_IDS
    checks = [CASES[c].check for c in CASE_IDS]
    assert len(set(checks)) == len(checks)


def test_examples_pass():
    assert verify("E4.9", get_ring("Z3")).verdict == "pass"
    assert verify("E4.3", "T2(T2(Z2))").verdict == "pass"


def test_biconditional_with_both_sides_false():
    rep = verify("T4.1", "Z3")
    assert rep.verdict == "pass"
    assert rep.details == {"lhs": False, "rhs": False}


def test_inapplicable_cases_are_skipped_with_predicate():
    for case, ring in [("E4.9", "Z4"), ("T3.2", "Z4"), ("T4.11", "T2(Z3)"), ("C2.7", "Z4"), ("C4.12", "M2(Z2)")]:
        rep = verify(case, ring)
        assert rep.verdict == "skipped"
        assert rep.reason == CASES[case].applicability
        assert "counterexample" not in rep.to_json()


def test_corollary_two_units_on_odd_rings():
    for ring in ["Z9", "Z27"]:
        assert verify("C2.7", ring).verdict == "pass"


@pytest.mark.parametrize("case, ring", [("T2.6", "M2(Z3)"), ("T4.14", "M2(Z2)"), ("T3.4", "T2(Z4)"), ("C3.6", "T2(Z9)"), ("T4.11", "T3(Z2)")])
def test_single_cases(case, ring):
    assert sweep([case], [ring]).exit_status == 0


def test_corrupted_classifier_is_caught():
    report = sweep("all", ["Z2", "Z3", "Z4", "M2(Z2)", "T2(Z2)"], classifier_factory=SwappedJClassifier)
    assert report.failures
    assert report.exit_status == 1
    report = sweep(["L4.10", "P4.8", "T4.1"], ["Z3", "Z6"], classifier_factory=OptimisticClassifier)
    assert report.failures


def test_fail_reports_replay():
    run = lambda: sweep(["E4.9", "P4.8", "L4.10"], ["Z3", "Z6"], classifier_factory=SwappedJClassifier)
    first, second = run(), run()
    assert first.to_json(timings=False) == second.to_json(timings=False)
    assert all(r.counterexamples for r in first.failures)


def test_order_and_threads_are_deterministic():
    rings = ["Z4", "Z2xZ3", "T2(Z2)", "M2(Z2)"]
    one = sweep("all", rings, threads=1).to_json(timings=False)
    many = sweep("all", rings, threads=4).to_json(timings=False)
    assert json.dumps(one) == json.dumps(many)
    keys = [(CASE_IDS.index(r["case"]), rings.index(r["ring"])) for r in one["reports"]]
    assert keys == sorted(keys)


def test_budget_skips_large_rings():
    report = sweep(["T4.1"], ["Z4", "M2(Z4)"], max_order=64)
    verdicts = {r.ring: r for r in report.reports}
    assert verdicts["Z4"].verdict == "pass"
    assert verdicts["M2(Z4)"].verdict == "skipped"
    assert "budget" in verdicts["M2(Z4)"].reason


def test_deadline():
    with pytest.raises(BudgetExceededError):
        sweep("all", ["Z4"], deadline=time.monotonic() - 1)


def test_sweep_json_validates(validate):
    report = sweep(["T4.1", "E4.9", "T3.2"], ["Z3", "M2(Z2)"], classifier_factory=SwappedJClassifier)
    validate(report.to_json(), "verification_report")
    assert "pass" in report.table()


def test_families():
    assert FAMILIES["sweep-default"] == DEFAULT_SWEEP
    assert len(DEFAULT_SWEEP) == 22
