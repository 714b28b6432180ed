import pytest

from cleanring import (
    ALL_PROPERTIES,
    Classifier,
    J_quasipolar,
    Property,
    check_element,
    classify_ring,
    get_ring,
    perfectly_clean,
    perfectly_J_clean,
    quasipolar,
    strongly_clean,
    strongly_nil_clean,
    uniquely_clean,
)
from cleanring.errors import BudgetExceededError

from conftest import SMALL_RINGS, SWEEP_LIKE

P = Property


@pytest.mark.parametrize("spec", SMALL_RINGS)
def test_candidates_match_brute_force(spec, brute):
    R, B = get_ring(spec), brute(spec)
    c = Classifier(R)
    for prop in ALL_PROPERTIES:
        for a in range(R.order):
            assert c.candidates(prop, a).tolist() == B.admissible(prop.value, a), (prop, a)
            assert c.holds(prop, a) == B.holds(prop.value, a)


@pytest.mark.parametrize("spec", SWEEP_LIKE)
def test_witnesses_replay(spec):
    R = get_ring(spec)
    c = Classifier(R)
    for prop in ALL_PROPERTIES:
        for a in range(0, R.order, max(1, R.order // 40)):
            w = c.witness(prop, a)
            if w is not None:
                assert w.verify(), (prop, a)


@pytest.mark.parametrize("spec", SWEEP_LIKE)
def test_implication_chain(spec):
    R = get_ring(spec)
    c = Classifier(R)
    for a in range(R.order):
        h = {p: c.holds(p, a) for p in (P.PERFECTLY_J_CLEAN, P.STRONGLY_J_CLEAN, P.STRONGLY_CLEAN, P.PERFECTLY_CLEAN, P.QUASIPOLAR)}
        assert not h[P.PERFECTLY_J_CLEAN] or h[P.STRONGLY_J_CLEAN]
        assert not h[P.STRONGLY_J_CLEAN] or h[P.STRONGLY_CLEAN]
        assert not h[P.PERFECTLY_J_CLEAN] or h[P.PERFECTLY_CLEAN]
        assert not h[P.QUASIPOLAR] or h[P.PERFECTLY_CLEAN]
        assert not h[P.PERFECTLY_CLEAN] or h[P.STRONGLY_CLEAN]


@pytest.mark.parametrize("spec", SWEEP_LIKE)
def test_finite_rings_are_quasipolar(spec):
    c = Classifier(get_ring(spec))
    assert c.ring_holds(P.QUASIPOLAR)
    assert c.ring_holds(P.PERFECTLY_CLEAN)


@pytest.mark.parametrize("spec", SWEEP_LIKE)
def test_perfectly_J_clean_elements_have_one_idempotent(spec):
    R = get_ring(spec)
    c = Classifier(R)
    for a in range(R.order):
        if c.holds(P.PERFECTLY_J_CLEAN, a):
            assert c.count(P.PERFECTLY_J_CLEAN, a) == 1


def test_strongly_clean_trivial_cases():
    R = get_ring("Z9")
    s = R.structure
    for u in s.units:
        assert int(strongly_clean(u).idempotent) == 0
    for a in R:
        if (1 - a) in s.units:
            assert 1 in Classifier(R).candidates(P.STRONGLY_CLEAN, a.index).tolist()


def test_strongly_clean_z6():
    # least admissible idempotent for 2 in Z6 is 1; e = 3 (with 2 - 3 = 5) is admissible too
    Z6 = get_ring("Z6")
    w = strongly_clean(Z6[2])
    assert int(w.idempotent) == 1 and int(w.complement) == 1
    assert Classifier(Z6).candidates(P.STRONGLY_CLEAN, 2).tolist() == [1, 3]


def test_perfectly_clean_examples():
    for spec in ["Z5", "M2(Z2)", "T2(Z4)"]:
        R = get_ring(spec)
        assert Classifier(R).candidates(P.PERFECTLY_CLEAN, R.zero).tolist() == [R.one]
        w = perfectly_clean(R[R.zero])
        assert w.idempotent.index == R.one and w.verify()
    M = get_ring("M2(Z2)")
    a = M.parse_element("[[0,1],[0,0]]")
    w = perfectly_clean(a)
    assert w is not None and (a - w.idempotent) in M.structure.units


def test_quasipolar_examples():
    Z4 = get_ring("Z4")
    assert int(quasipolar(Z4[3]).idempotent) == 0
    w = quasipolar(Z4[2])
    assert int(w.idempotent) == 1 and int(w.complement) == 3
    for spec in ["Z8", "T2(Z2)", "M2(Z2)"]:
        s = get_ring(spec).structure
        assert s.jacobson <= s.qnil


def test_example_in_Z3():
    Z3 = get_ring("Z3")
    w = perfectly_J_clean(Z3[1])
    assert int(w.idempotent) == 1 and int(w.complement) == 0
    assert J_quasipolar(Z3[1]) is None
    w = J_quasipolar(Z3[2])
    assert int(w.idempotent) == 1 and int(w.complement) == 0
    assert perfectly_J_clean(Z3[2]) is None


def test_strongly_nil_clean_examples():
    w = strongly_nil_clean(get_ring("Z4")[3])
    assert int(w.idempotent) == 1 and int(w.complement) == 2
    assert strongly_nil_clean(get_ring("Z3")[2]) is None
    R = get_ring("M2(Z2)")
    for e in R.structure.idempotents:
        w = strongly_nil_clean(e)
        assert w.idempotent == e and int(w.complement) == R.zero


def test_uniqueness_counts():
    c2, c3, c6 = (Classifier(get_ring(f"Z{n}")) for n in (2, 3, 6))
    assert c2.count(P.UNIQUELY_CLEAN, 0) == 1
    assert c3.count(P.UNIQUELY_CLEAN, 0) == 1
    assert c6.count(P.UNIQUELY_CLEAN, 2) >= 2
    assert uniquely_clean(get_ring("Z6")[2]).witness_count == 2
    ok, w = check_element(get_ring("Z6")[2], "uniquely-clean")
    assert not ok and w.verify()


def test_classify_ring_examples():
    rep = classify_ring(get_ring("Z2"))
    assert all(rep.holds(p) for p in ALL_PROPERTIES)
    rep = classify_ring(get_ring("Z3"), [P.PERFECTLY_CLEAN, P.PERFECTLY_J_CLEAN])
    assert rep.holds(P.PERFECTLY_CLEAN)
    assert not rep.holds(P.PERFECTLY_J_CLEAN)
    assert int(rep.outcomes[P.PERFECTLY_J_CLEAN].counterexample) == 2
    rep = classify_ring(get_ring("T2(T2(Z2))"), [P.PERFECTLY_J_CLEAN])
    assert rep.holds(P.PERFECTLY_J_CLEAN)


def test_classify_deadline():
    with pytest.raises(BudgetExceededError):
        classify_ring(get_ring("M2(Z4)"), deadline=0.0)


def test_report_json_validates(validate):
    for spec in ["Z3", "Z6", "T2(Z2)"]:
        doc = classify_ring(get_ring(spec)).to_json()
        validate(doc, "property_report")
        for outcome in doc["properties"].values():
            if outcome["witness_sample"]:
                validate(outcome["witness_sample"], "witness")


def test_witness_hash_is_deterministic():
    a = get_ring("M2(Z4)").parse_element("[[1,2],[0,3]]")
    h1 = perfectly_clean(a).to_json()["verification_hash"]
    h2 = perfectly_clean(a).to_json()["verification_hash"]
    assert h1 == h2
