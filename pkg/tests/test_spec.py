import pytest

from cleanring import (
    MatrixRing,
    OrderCapError,
    Product,
    RingSpecSyntaxError,
    TriangularRing,
    Zmod,
    format_ring_spec,
    parse_ring_spec,
)


@pytest.mark.parametrize(
    "text, expected",
    [
        ("Z4", Zmod(4)),
        ("T2(T2(Z2))", TriangularRing(TriangularRing(Zmod(2), 2), 2)),
        ("M2(Z4)xZ3", Product(MatrixRing(Zmod(4), 2), Zmod(3))),
        (" M2 ( Z4 ) x Z3 ", Product(MatrixRing(Zmod(4), 2), Zmod(3))),
        ("Z2xZ3xZ5", Product(Product(Zmod(2), Zmod(3)), Zmod(5))),
        ("Z2x(Z3xZ5)", Product(Zmod(2), Product(Zmod(3), Zmod(5)))),
        ("M2(Z2xZ3)", MatrixRing(Product(Zmod(2), Zmod(3)), 2)),
    ],
)
def test_parse(text, expected):
    assert parse_ring_spec(text) == expected


@pytest.mark.parametrize("text", ["Z4", "T2(T2(Z2))", "M2(Z4)xZ3", "Z2x(Z3xZ5)", "T3(M2(Z2)xZ2)", "Z1"])
def test_pretty_printer_round_trip(text):
    spec = parse_ring_spec(text, max_order=None)
    assert format_ring_spec(spec) == text
    assert parse_ring_spec(format_ring_spec(spec), max_order=None) == spec


def test_orders():
    assert parse_ring_spec("M2(Z4)").order == 256
    assert parse_ring_spec("T2(Z2)").order == 8
    assert parse_ring_spec("T2(T2(Z2))").order == 512
    assert parse_ring_spec("Z2xZ3").order == 6


@pytest.mark.parametrize(
    "text, pos",
    [("", 0), ("Z", 1), ("Z0", 1), ("Q4", 0), ("M2Z4", 2), ("M2(Z4", 5), ("Z4x", 3), ("Z4 Z3", 3), ("M0(Z2)", 1)],
)
def test_syntax_errors_are_position_annotated(text, pos):
    with pytest.raises(RingSpecSyntaxError) as info:
        parse_ring_spec(text)
    assert info.value.pos == pos
    assert info.value.expected
    assert f"position {pos}" in str(info.value)


def test_order_cap():
    with pytest.raises(OrderCapError) as info:
        parse_ring_spec("M2(Z256)")
    assert info.value.order == 256**4
    assert parse_ring_spec("M2(Z256)", max_order=None).order == 256**4
    with pytest.raises(OrderCapError):
        parse_ring_spec("Z9", max_order=8)
