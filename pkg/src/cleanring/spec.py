"""Ring specifications: the AST, its parser and its pretty-printer.

Grammar (ASCII, whitespace-insensitive)::

    spec := term ( "x" term )*            left-associative product
    term := "Z" nat | ("M" | "T") nat "(" spec ")" | "(" spec ")"

``Z4`` is the integers mod 4, ``M2(S)`` the full 2x2 matrix ring over ``S``,
``T2(S)`` the upper-triangular 2x2 matrices over ``S`` and ``AxB`` the direct
product.  Parenthesised grouping exists only so that right-nested products
print back to something parseable.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .errors import OrderCapError, RingSpecSyntaxError

DEFAULT_MAX_ORDER = 2**16


@dataclass(frozen=True)
class Zmod:
    n: int

    @property
    def order(self) -> int:
        return self.n

    def __str__(self) -> str:
        return f"Z{self.n}"


@dataclass(frozen=True)
class MatrixRing:
    base: "RingSpec"
    k: int

    @property
    def order(self) -> int:
        return self.base.order ** (self.k * self.k)

    def __str__(self) -> str:
        return f"M{self.k}({self.base})"


@dataclass(frozen=True)
class TriangularRing:
    base: "RingSpec"
    k: int

    @property
    def order(self) -> int:
        return self.base.order ** (self.k * (self.k + 1) // 2)

    def __str__(self) -> str:
        return f"T{self.k}({self.base})"


@dataclass(frozen=True)
class Product:
    left: "RingSpec"
    right: "RingSpec"

    @property
    def order(self) -> int:
        return self.left.order * self.right.order

    def __str__(self) -> str:
        right = str(self.right)
        if isinstance(self.right, Product):
            right = f"({right})"
        return f"{self.left}x{right}"


RingSpec = Union[Zmod, MatrixRing, TriangularRing, Product]


def check_order(spec: RingSpec, max_order: int | None = DEFAULT_MAX_ORDER) -> RingSpec:
    """Raise :class:`OrderCapError` if ``spec`` (or any sub-ring) is too large."""
    if max_order is None:
        return spec
    if isinstance(spec, (MatrixRing, TriangularRing)):
        check_order(spec.base, max_order)
    elif isinstance(spec, Product):
        check_order(spec.left, max_order)
        check_order(spec.right, max_order)
    if spec.order > max_order:
        raise OrderCapError(spec, spec.order, max_order)
    return spec


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def _skip(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def _peek(self) -> str:
        self._skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def _expect(self, char: str) -> None:
        if self._peek() != char:
            raise RingSpecSyntaxError(self.text, self.pos, [repr(char)])
        self.pos += 1

    def _nat(self) -> int:
        self._skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            raise RingSpecSyntaxError(self.text, start, ["positive integer"])
        value = int(self.text[start:self.pos])
        if value < 1:
            raise RingSpecSyntaxError(self.text, start, ["positive integer"])
        return value

    def spec(self) -> RingSpec:
        node = self.term()
        while self._peek() == "x":
            self.pos += 1
            node = Product(node, self.term())
        return node

    def term(self) -> RingSpec:
        c = self._peek()
        if c == "Z":
            self.pos += 1
            return Zmod(self._nat())
        if c in ("M", "T"):
            self.pos += 1
            k = self._nat()
            self._expect("(")
            base = self.spec()
            self._expect(")")
            return MatrixRing(base, k) if c == "M" else TriangularRing(base, k)
        if c == "(":
            self.pos += 1
            inner = self.spec()
            self._expect(")")
            return inner
        raise RingSpecSyntaxError(self.text, self.pos, ["'Z'", "'M'", "'T'", "'('"])

    def parse(self) -> RingSpec:
        node = self.spec()
        if self._peek() != "":
            raise RingSpecSyntaxError(self.text, self.pos, ["'x'", "end of input"])
        return node


def parse_ring_spec(text: str, max_order: int | None = DEFAULT_MAX_ORDER) -> RingSpec:
    """Parse a ring-spec string such as ``"M2(Z4)xZ3"``.

    Raises :class:`RingSpecSyntaxError` (with the offending position) on bad
    input and :class:`OrderCapError` if the ring is larger than ``max_order``.
    """
    return check_order(_Parser(text).parse(), max_order)


def format_ring_spec(spec: RingSpec) -> str:
    return str(spec)
