import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracle
from cleanring import ElementLiteralError, Ring, RingMismatchError, get_ring

AXIOM_RINGS = ["Z1", "Z2", "Z6", "Z2xZ3", "T2(Z2)", "T2(Z3)", "T3(Z2)", "M2(Z2)", "Z4xT2(Z2)", "M2(Z4)", "T2(T2(Z2))", "M2(Z3)xZ2", "M2(Z8)"]


def _triples(R, rng):
    if R.order <= 64:
        grid = np.array(list(itertools.product(range(R.order), repeat=3)), dtype=np.int64)
        return grid.T
    return rng.integers(0, R.order, (3, 10_000))


@pytest.mark.parametrize("spec", AXIOM_RINGS)
def test_ring_axioms(spec):
    R = get_ring(spec)
    a, b, c = _triples(R, np.random.default_rng(7))
    assert np.array_equal(R.mul(R.mul(a, b), c), R.mul(a, R.mul(b, c)))
    assert np.array_equal(R.mul(a, R.add(b, c)), R.add(R.mul(a, b), R.mul(a, c)))
    assert np.array_equal(R.mul(R.add(a, b), c), R.add(R.mul(a, c), R.mul(b, c)))
    assert np.array_equal(R.add(R.add(a, b), c), R.add(a, R.add(b, c)))
    assert np.array_equal(R.add(a, b), R.add(b, a))
    assert np.array_equal(R.mul(R.one, a), a)
    assert np.array_equal(R.mul(a, R.one), a)
    assert np.array_equal(R.add(a, R.zero), a)
    assert np.all(R.add(a, R.neg(a)) == R.zero)


@pytest.mark.parametrize("spec", ["Z4", "Z2xZ3", "T2(Z2)", "M2(Z2)", "T3(Z2)", "Z2x(Z3xZ2)", "T2(Z2xZ2)"])
def test_arithmetic_matches_reference(spec):
    R = get_ring(spec)
    vals = [R.value(i) for i in range(R.order)]
    x, y = np.divmod(np.arange(R.order**2), R.order)
    prods, sums = R.mul(x, y), R.add(x, y)
    for i, (a, b) in enumerate(zip(x.tolist(), y.tolist())):
        assert vals[prods[i]] == oracle.mul(R.spec, vals[a], vals[b])
        assert vals[sums[i]] == oracle.add(R.spec, vals[a], vals[b])
    assert vals[R.one] == oracle.one(R.spec)


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 255), st.integers(0, 255))
def test_matrix_mul_reference_m2z4(x, y):
    R = get_ring("M2(Z4)")
    assert R.value(R.mul(x, y)) == oracle.mul(R.spec, R.value(x), R.value(y))


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 4095), st.integers(0, 4095))
def test_non_table_path_matches_reference(x, y):
    R = get_ring("M2(Z8)")
    assert R._mul_table is None
    assert R.value(R.mul(x, y)) == oracle.mul(R.spec, R.value(x), R.value(y))


def test_small_examples():
    Z4 = get_ring("Z4")
    assert Z4.mul(2, 2) == 0
    M = get_ring("M2(Z2)")
    assert all(M.mul(M.one, a) == a for a in range(M.order))
    T = get_ring("T2(Z2)")
    A = T.from_grid([[1, 1], [0, 1]])
    assert T.grid(T.mul(A, A)) == [[1, 0], [0, 1]]


def test_enumerate_order_and_counts():
    assert [int(a) for a in get_ring("Z3")] == [0, 1, 2]
    assert len(list(get_ring("T2(Z2)"))) == 8
    assert len(list(get_ring("M2(Z4)"))) == 256


@pytest.mark.parametrize("spec", ["Z5", "T2(Z3)", "M2(Z2)xZ3", "T2(T2(Z2))"])
def test_canonical_index_bijection(spec):
    R = get_ring(spec)
    idx = R.all_indices()
    comps = R.decode(idx)
    assert np.array_equal(R.encode(comps), idx)
    assert len({tuple(row) for row in comps}) == R.order
    assert all(R.from_value(R.value(i)) == i for i in range(R.order))


def test_triangular_product_stays_upper():
    R = get_ring("T3(Z3)")
    rng = np.random.default_rng(3)
    for x, y in rng.integers(0, R.order, (200, 2)):
        g = R.grid(R.mul(int(x), int(y)))
        assert all(g[i][j] == 0 for i in range(3) for j in range(i))


def test_product_is_componentwise():
    P = get_ring("M2(Z2)xZ3")
    L, Rt = P.left, P.right
    for x, y in itertools.product(range(0, P.order, 7), range(0, P.order, 5)):
        (xl, xr), (yl, yr) = P.pair(x), P.pair(y)
        assert P.pair(P.mul(x, y)) == (L.mul(xl, yl), Rt.mul(xr, yr))
        assert P.pair(P.add(x, y)) == (L.add(xl, yl), Rt.add(xr, yr))


def test_element_operators():
    R = get_ring("Z6")
    a, b = R[2], R[5]
    assert a + b == 1
    assert a * b == 4
    assert -a == 4
    assert 1 - a == 5
    assert a**3 == 2
    assert b.inverse() == 5
    assert a.inverse() is None
    assert str(R[3]) == "3"


def test_literals():
    M = get_ring("M2(Z3)")
    A = M.parse_element("[[1,2],[0,1]]")
    assert str(A) == "[[1,2],[0,1]]"
    assert M.parse_element(f"#{A.index}") == A
    assert M.parse_element("2") == M.from_grid([[2, 0], [0, 2]])
    P = get_ring("Z2xZ3")
    assert P.parse_element("(1,2)").value == (1, 2)
    for bad in ["#99", "[[1,2]]", "(1,2)", "hello", "[[1,2],[3"]:
        with pytest.raises(ElementLiteralError):
            M.parse_element(bad)
    with pytest.raises(ElementLiteralError):
        get_ring("T2(Z2)").from_grid([[1, 0], [1, 1]])


def test_mixing_rings_is_rejected():
    with pytest.raises(RingMismatchError):
        get_ring("Z4")[1] + get_ring("Z6")[1]


def test_ring_identity_and_cache():
    assert get_ring("Z4") is get_ring("Z4")
    assert Ring("Z4") == get_ring("Z4")
    assert get_ring("Z1").one == get_ring("Z1").zero == 0
