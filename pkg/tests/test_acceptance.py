"""The ten acceptance criteria, each under its wall-clock limit.

Every test prints exactly one ``ACCEPTANCE`` line, pass or fail.
"""

import time
from contextlib import contextmanager

import numpy as np
import pytest

from cleanring import Classifier, Property, get_ring
from cleanring import constructive as cx
from cleanring.harness import DEFAULT_SWEEP, sweep, verify

P = Property


@pytest.fixture
def criterion(capsys):
    @contextmanager
    def run(number: int, title: str, limit_s: float):
        start = time.perf_counter()
        ok = False
        try:
            yield
            ok = True
        finally:
            elapsed = time.perf_counter() - start
            ok = ok and elapsed < limit_s
            with capsys.disabled():
                print(f"\nACCEPTANCE {number:>2} {'PASS' if ok else 'FAIL'} {title} ({elapsed:.2f}s, limit {limit_s:g}s)")
        assert elapsed < limit_s, f"criterion {number} took {elapsed:.2f}s"

    return run


def test_01_z3_example(criterion):
    with criterion(1, "Z3: 1 perfectly J-clean not J-quasipolar, 2 the reverse", 1):
        Z3 = get_ring("Z3")
        c = Classifier(Z3)
        assert Z3.structure.jacobson.to_json() == [0]
        assert c.holds(P.PERFECTLY_J_CLEAN, 1) and not c.holds(P.J_QUASIPOLAR, 1)
        assert c.holds(P.J_QUASIPOLAR, 2) and not c.holds(P.PERFECTLY_J_CLEAN, 2)
        assert int(c.witness(P.J_QUASIPOLAR, 2).idempotent) == 1
        assert verify("E4.9", Z3).verdict == "pass"


def test_02_triangular_tower(criterion):
    with criterion(2, "T2(T2(Z2)) perfectly J-clean with unique idempotents", 10):
        R = get_ring("T2(T2(Z2))")
        c = Classifier(R)
        assert c.ring_holds(P.PERFECTLY_J_CLEAN)
        assert all(c.count(P.PERFECTLY_J_CLEAN, a) == 1 for a in range(R.order))
        assert verify("E4.3", R).verdict == "pass"


def test_03_quasipolar_boolean_biconditional(criterion):
    with criterion(3, "perfectly J-clean iff quasipolar and Boolean mod J on the default sweep", 60):
        report = sweep(["T4.1"], DEFAULT_SWEEP)
        assert report.counts()["fail"] == 0
        sides = {(r.details["lhs"], r.details["rhs"]) for r in report.reports}
        assert sides == {(True, True), (False, False)}


def test_04_root_criterion(criterion):
    with criterion(4, "strongly J-clean matches the characteristic-root criterion on M2(Z2), M2(Z4)", 30):
        for spec, order in (("M2(Z2)", 16), ("M2(Z4)", 256)):
            R = get_ring(spec)
            assert R.order == order
            c = Classifier(R)
            for A in R:
                assert c.holds(P.STRONGLY_J_CLEAN, A.index) == cx.thm414_root_criterion(A).holds
            assert verify("T4.14", R).verdict == "pass"


def test_05_sum_of_units(criterion):
    with criterion(5, "2A = U + V verified on M2(Z3), M2(Z9) and 50 random M3(Z9)", 60):
        checked = 0
        for spec in ("M2(Z3)", "M2(Z9)"):
            for A in get_ring(spec):
                d = cx.thm26_decompose(A)
                assert d.U * d.U_inv == 1 and d.V_inv * d.V == 1 and d.U + d.V == 2 * A
                checked += 1
        assert checked == 81 + 6561
        M3 = get_ring("M3(Z9)", None)
        for k in np.random.default_rng(0).integers(0, M3.order, 50):
            d = cx.thm26_decompose(M3[int(k)])
            assert d.verify()


def test_06_idempotent_polynomial(criterion):
    with criterion(6, "f(a) idempotent in comm^2(a) with a - f(a) nilpotent", 10):
        for spec in ("Z4", "Z8", "T2(Z2)", "T2(Z4)"):
            R = get_ring(spec)
            s = R.structure
            c = Classifier(R)
            for a in R:
                if c.holds(P.STRONGLY_NIL_CLEAN, a.index):
                    e = cx.thm23_eval(a)
                    assert e * e == e and e in s.double_commutant(a) and (a - e) in s.nilpotents


def test_07_uniquely_weakly_bleached(criterion):
    with criterion(7, "uniquely weakly bleached R iff T2(R) perfectly clean", 30):
        for spec in ("Z2", "Z4", "Z8", "Z9"):
            T = get_ring(f"T2({spec})")
            assert get_ring(spec).structure.is_uniquely_weakly_bleached == Classifier(T).ring_holds(P.PERFECTLY_CLEAN)
            assert verify("C3.6", T).verdict == "pass"


def test_08_trichotomy(criterion):
    with criterion(8, "every A in M2(Z2), M2(Z4): GL, I - A in GL, or diagonalisable; verified witnesses", 60):
        for spec in ("M2(Z2)", "M2(Z4)"):
            R = get_ring(spec)
            s = R.structure
            c = Classifier(R)
            for A in R:
                if not (A in s.units or (1 - A) in s.units):
                    U = cx.similarity_to_diagonal(A)
                    assert U is not None and cx.is_diagonal(U * A * U.inverse())
                assert c.witness(P.PERFECTLY_CLEAN, A.index).verify()
            assert verify("T3.2", R).verdict == "pass"


def test_09_implication_suite(criterion):
    with criterion(9, "implication chain, per-element lemma and conjugation invariance", 120):
        for spec in DEFAULT_SWEEP:
            R = get_ring(spec)
            c = Classifier(R)
            s = R.structure
            for a in range(R.order):
                pjc, pc, sc = (c.holds(p, a) for p in (P.PERFECTLY_J_CLEAN, P.PERFECTLY_CLEAN, P.STRONGLY_CLEAN))
                assert not pjc or pc
                assert not pc or sc
                assert not c.holds(P.QUASIPOLAR, a) or pc
                lemma = c.holds(P.QUASIPOLAR, a) and R.sub(a, s.squares[a]) in s.jacobson
                assert pjc == lemma
        report = sweep(["L3.1", "L4.10", "L4.13"], DEFAULT_SWEEP)
        assert report.counts()["fail"] == 0


class _Corrupted(Classifier):
    def candidates(self, prop, a):
        if prop is Property.PERFECTLY_J_CLEAN:
            prop = Property.J_QUASIPOLAR
        return super().candidates(prop, a)


def test_10_harness_soundness(criterion):
    with criterion(10, "corrupted classifier produces a fail verdict", 5):
        report = sweep(["E4.9", "P4.8", "L4.10"], ["Z3", "Z6"], classifier_factory=_Corrupted)
        assert report.counts()["fail"] >= 1


def test_default_sweep_all_cases(capsys):
    start = time.perf_counter()
    report = sweep("all", DEFAULT_SWEEP)
    with capsys.disabled():
        c = report.counts()
        print(f"\nfull sweep: {c['pass']} pass, {c['fail']} fail, {c['skipped']} skipped in {time.perf_counter() - start:.1f}s")
    assert report.exit_status == 0
