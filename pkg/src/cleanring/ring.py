"""Finite rings with exact, structurally computed arithmetic.

Every element of a ring built from :mod:`cleanring.spec` flattens to a vector
of residues ("components"), one per ``Zmod`` leaf:

* ``Zmod(n)``          one component, the residue itself;
* ``MatrixRing(S, k)``  the ``k*k`` entries in row-major order, each flattened;
* ``TriangularRing``    only the ``k(k+1)/2`` entries on or above the diagonal,
  row-major;
* ``Product(A, B)``     the components of ``A`` followed by those of ``B``.

The canonical index of an element is the mixed-radix number whose digits are
these components, least-significant digit first.  Enumeration, witness
search and set representations all follow this order, so "first witness"
is reproducible.

Addition is componentwise for every node, so only multiplication needs the
tree.  All operations are vectorised over numpy index arrays; rings at or
below ``table_threshold`` elements additionally cache full Cayley tables the
first time a bulk operation asks for them.
"""

from __future__ import annotations

import ast
import functools
import threading
from typing import Any, Callable, Iterator

import numpy as np

from .errors import ElementLiteralError, RingMismatchError
from .spec import (
    DEFAULT_MAX_ORDER,
    MatrixRing,
    Product,
    RingSpec,
    TriangularRing,
    Zmod,
    check_order,
    parse_ring_spec,
)

TABLE_THRESHOLD = 1024

MulFn = Callable[[np.ndarray, np.ndarray], np.ndarray]


def _moduli(spec: RingSpec) -> list[int]:
    if isinstance(spec, Zmod):
        return [spec.n]
    if isinstance(spec, MatrixRing):
        return _moduli(spec.base) * (spec.k * spec.k)
    if isinstance(spec, TriangularRing):
        return _moduli(spec.base) * (spec.k * (spec.k + 1) // 2)
    return _moduli(spec.left) + _moduli(spec.right)


def _triangular_slots(k: int) -> dict[tuple[int, int], int]:
    return {(i, j): s for s, (i, j) in enumerate((i, j) for i in range(k) for j in range(i, k))}


def _build_mul(spec: RingSpec) -> MulFn:
    """Return a function multiplying two ``(N, dim)`` component arrays row by row."""
    if isinstance(spec, Zmod):
        n = spec.n
        return lambda a, b: (a * b) % n

    if isinstance(spec, Product):
        left, right = _build_mul(spec.left), _build_mul(spec.right)
        split = len(_moduli(spec.left))
        return lambda a, b: np.concatenate(
            [left(a[:, :split], b[:, :split]), right(a[:, split:], b[:, split:])], axis=1
        )

    base_mul = _build_mul(spec.base)
    base_mod = np.array(_moduli(spec.base), dtype=np.int64)
    bd = len(base_mod)
    k = spec.k

    if isinstance(spec, MatrixRing):
        def mul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
            n = a.shape[0]
            a4 = a.reshape(n, k, k, bd)
            b4 = b.reshape(n, k, k, bd)
            out = np.empty_like(a4)
            for i in range(k):
                for j in range(k):
                    acc = np.zeros((n, bd), dtype=np.int64)
                    for l in range(k):
                        acc += base_mul(a4[:, i, l], b4[:, l, j])
                    out[:, i, j] = acc % base_mod
            return out.reshape(n, k * k * bd)
        return mul

    slots = _triangular_slots(k)

    def tmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
        n = a.shape[0]
        a3 = a.reshape(n, len(slots), bd)
        b3 = b.reshape(n, len(slots), bd)
        out = np.empty_like(a3)
        for (i, j), s in slots.items():
            acc = np.zeros((n, bd), dtype=np.int64)
            for l in range(i, j + 1):
                acc += base_mul(a3[:, slots[i, l]], b3[:, slots[l, j]])
            out[:, s] = acc % base_mod
        return out.reshape(n, len(slots) * bd)
    return tmul


def _one_components(spec: RingSpec) -> list[int]:
    if isinstance(spec, Zmod):
        return [1 % spec.n]
    if isinstance(spec, Product):
        return _one_components(spec.left) + _one_components(spec.right)
    one, zero = _one_components(spec.base), [0] * len(_moduli(spec.base))
    k = spec.k
    if isinstance(spec, MatrixRing):
        cells = [(i, j) for i in range(k) for j in range(k)]
    else:
        cells = [(i, j) for i in range(k) for j in range(i, k)]
    out: list[int] = []
    for i, j in cells:
        out += one if i == j else zero
    return out


class Ring:
    """A finite ring described by a :data:`RingSpec`, with index-level arithmetic.

    Elements are addressed by canonical index.  The scalar methods
    (``add``, ``mul`` ...) accept ints or numpy arrays and broadcast; use
    :meth:`element` / indexing for operator-overloaded :class:`Element` values.
    """

    def __init__(
        self,
        spec: RingSpec | str,
        max_order: int | None = DEFAULT_MAX_ORDER,
        table_threshold: int = TABLE_THRESHOLD,
    ):
        if isinstance(spec, str):
            spec = parse_ring_spec(spec, max_order)
        else:
            check_order(spec, max_order)
        self.spec: RingSpec = spec
        self.max_order = max_order
        self.order: int = spec.order
        self.moduli = np.array(_moduli(spec), dtype=np.int64)
        self.dim = len(self.moduli)
        self.weights = np.concatenate([[1], np.cumprod(self.moduli[:-1])]).astype(np.int64)
        self._mul_comps = _build_mul(spec)
        self.zero = 0
        self.one = int(self.encode(np.array(_one_components(spec), dtype=np.int64)))
        self.table_threshold = table_threshold
        self._lock = threading.RLock()
        self._mul_table: np.ndarray | None = None
        self._add_table: np.ndarray | None = None
        self._structure = None

    # -- identity -------------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Ring) and other.spec == self.spec

    def __hash__(self) -> int:
        return hash(self.spec)

    def __repr__(self) -> str:
        return f"Ring({str(self.spec)!r})"

    def __str__(self) -> str:
        return str(self.spec)

    def __len__(self) -> int:
        return self.order

    # -- encoding -------------------------------------------------------------

    def decode(self, idx) -> np.ndarray:
        """Canonical index (or array of them) to component vector(s)."""
        idx = np.asarray(idx, dtype=np.int64)
        return (idx[..., None] // self.weights) % self.moduli

    def encode(self, comps) -> np.ndarray:
        comps = np.asarray(comps, dtype=np.int64)
        return (comps % self.moduli) @ self.weights

    # -- arithmetic on indices ------------------------------------------------

    def _tables(self) -> bool:
        if self.order > self.table_threshold:
            return False
        if self._mul_table is None:
            with self._lock:
                if self._mul_table is None:
                    everything = np.arange(self.order, dtype=np.int64)
                    a = np.repeat(everything, self.order)
                    b = np.tile(everything, self.order)
                    ca, cb = self.decode(a), self.decode(b)
                    dtype = np.int16 if self.order <= 2**15 else np.int32
                    add = self.encode((ca + cb) % self.moduli).reshape(self.order, self.order)
                    mul = self.encode(self._mul_comps(ca, cb)).reshape(self.order, self.order)
                    self._add_table = add.astype(dtype)
                    self._mul_table = mul.astype(dtype)
        return True

    @staticmethod
    def _out(result: np.ndarray, *args):
        if all(np.ndim(x) == 0 for x in args):
            return int(result)
        return result.astype(np.int64, copy=False)

    def mul(self, a, b):
        a, b = np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)
        if self._tables():
            return self._out(self._mul_table[a, b], a, b)
        a, b = np.broadcast_arrays(a, b)
        shape = a.shape
        out = self.encode(self._mul_comps(self.decode(a.ravel()), self.decode(b.ravel())))
        return self._out(out.reshape(shape), a, b)

    def add(self, a, b):
        a, b = np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)
        if self._tables():
            return self._out(self._add_table[a, b], a, b)
        return self._out(self.encode(self.decode(a) + self.decode(b)), a, b)

    def neg(self, a):
        a = np.asarray(a, dtype=np.int64)
        return self._out(self.encode(-self.decode(a)), a)

    def sub(self, a, b):
        a, b = np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)
        return self._out(self.encode(self.decode(a) - self.decode(b)), a, b)

    def scale(self, c: int, a):
        """The integer multiple ``c * a`` (``c`` may be any Python int)."""
        a = np.asarray(a, dtype=np.int64)
        factor = np.array([c % int(m) for m in self.moduli], dtype=np.int64)
        return self._out(self.encode(self.decode(a) * factor), a)

    def from_int(self, c: int) -> int:
        return self.scale(c, self.one)

    def power(self, a: int, n: int) -> int:
        result, base = self.one, a
        while n:
            if n & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            n >>= 1
        return result

    def all_indices(self) -> np.ndarray:
        return np.arange(self.order, dtype=np.int64)

    def mul_row(self, a: int) -> np.ndarray:
        """``a * x`` for every ``x`` in canonical order."""
        if self._tables():
            return self._mul_table[a].astype(np.int64)
        return self.mul(a, self.all_indices())

    def mul_col(self, b: int) -> np.ndarray:
        """``x * b`` for every ``x`` in canonical order."""
        if self._tables():
            return self._mul_table[:, b].astype(np.int64)
        return self.mul(self.all_indices(), b)

    # -- elements -------------------------------------------------------------

    def element(self, index) -> "Element":
        index = int(index)
        if not 0 <= index < self.order:
            raise ElementLiteralError(f"index {index} out of range for {self} (order {self.order})")
        return Element(self, index)

    __getitem__ = element

    def enumerate(self) -> Iterator["Element"]:
        """All elements, in canonical-index order."""
        for i in range(self.order):
            yield Element(self, i)

    __iter__ = enumerate

    # -- sub-rings of composite nodes -----------------------------------------

    @property
    def base(self) -> "Ring":
        if not isinstance(self.spec, (MatrixRing, TriangularRing)):
            raise AttributeError(f"{self} is not a matrix or triangular ring")
        return get_ring(self.spec.base, self.max_order)

    @property
    def k(self) -> int:
        return self.spec.k

    @property
    def left(self) -> "Ring":
        return get_ring(self.spec.left, self.max_order)

    @property
    def right(self) -> "Ring":
        return get_ring(self.spec.right, self.max_order)

    def grid(self, i: int) -> list[list[int]]:
        """Entries of a matrix/triangular element as base-ring indices (zeros below
        the diagonal for triangular rings)."""
        base = self.base
        k = self.k
        comps = self.decode(i).reshape(-1, base.dim)
        entries = [int(x) for x in base.encode(comps)]
        if isinstance(self.spec, MatrixRing):
            return [entries[r * k:(r + 1) * k] for r in range(k)]
        slots = _triangular_slots(k)
        return [[entries[slots[r, c]] if c >= r else 0 for c in range(k)] for r in range(k)]

    def from_grid(self, grid) -> int:
        base = self.base
        k = self.k
        if len(grid) != k or any(len(row) != k for row in grid):
            raise ElementLiteralError(f"{self} needs a {k}x{k} grid")
        if isinstance(self.spec, MatrixRing):
            cells = [grid[r][c] for r in range(k) for c in range(k)]
        else:
            if any(grid[r][c] != 0 for r in range(k) for c in range(r)):
                raise ElementLiteralError(f"{self}: entries below the diagonal must be zero")
            cells = [grid[r][c] for r in range(k) for c in range(r, k)]
        comps = np.concatenate([base.decode(int(x)) for x in cells])
        return int(self.encode(comps))

    def pair(self, i: int) -> tuple[int, int]:
        split = self.left.dim
        comps = self.decode(i)
        return int(self.left.encode(comps[:split])), int(self.right.encode(comps[split:]))

    def from_pair(self, left: int, right: int) -> int:
        comps = np.concatenate([self.left.decode(left), self.right.decode(right)])
        return int(self.encode(comps))

    # -- literals -------------------------------------------------------------

    def value(self, i: int) -> Any:
        """Nested Python value of element ``i``: int, list of rows, or pair tuple."""
        spec = self.spec
        if isinstance(spec, Zmod):
            return int(i)
        if isinstance(spec, Product):
            a, b = self.pair(i)
            return (self.left.value(a), self.right.value(b))
        base = self.base
        return [[base.value(x) for x in row] for row in self.grid(i)]

    def from_value(self, v: Any) -> int:
        if isinstance(v, bool):
            raise ElementLiteralError(f"not a ring element literal: {v!r}")
        if isinstance(v, int):
            return self.from_int(v)
        spec = self.spec
        if isinstance(spec, Product):
            if not isinstance(v, tuple) or len(v) != 2:
                raise ElementLiteralError(f"{self} elements are pairs '(a,b)', got {v!r}")
            return self.from_pair(self.left.from_value(v[0]), self.right.from_value(v[1]))
        if isinstance(spec, (MatrixRing, TriangularRing)):
            if not isinstance(v, list) or not all(isinstance(row, list) for row in v):
                raise ElementLiteralError(f"{self} elements are grids '[[...],...]', got {v!r}")
            return self.from_grid([[self.base.from_value(x) for x in row] for row in v])
        raise ElementLiteralError(f"{self} elements are integers, got {v!r}")

    def format(self, i: int) -> str:
        return _format_value(self.value(i))

    def parse_element(self, text: str) -> "Element":
        """Parse an element literal: an integer, ``[[..],[..]]`` grid, ``(a,b)`` pair,
        or ``#k`` for canonical index ``k``."""
        text = text.strip()
        if text.startswith("#"):
            try:
                return self.element(int(text[1:]))
            except ValueError as exc:
                raise ElementLiteralError(f"bad index literal {text!r}") from exc
        try:
            value = ast.literal_eval(text)
        except (ValueError, SyntaxError) as exc:
            raise ElementLiteralError(f"cannot parse element literal {text!r}") from exc
        return Element(self, self.from_value(value))

    # -- structure ------------------------------------------------------------

    @property
    def structure(self):
        """Lazily created :class:`cleanring.structure.Structure` for this ring."""
        if self._structure is None:
            with self._lock:
                if self._structure is None:
                    from .structure import Structure

                    self._structure = Structure(self)
        return self._structure


def _format_value(v: Any) -> str:
    if isinstance(v, list):
        return "[" + ",".join(_format_value(x) for x in v) + "]"
    if isinstance(v, tuple):
        return "(" + ",".join(_format_value(x) for x in v) + ")"
    return str(v)


@functools.lru_cache(maxsize=None)
def _cached_ring(spec: RingSpec, max_order: int | None) -> Ring:
    return Ring(spec, max_order=max_order)


def get_ring(spec: RingSpec | str, max_order: int | None = DEFAULT_MAX_ORDER) -> Ring:
    """Shared :class:`Ring` instance for ``spec``, so structure caches are reused."""
    if isinstance(spec, str):
        spec = parse_ring_spec(spec, max_order)
    return _cached_ring(spec, max_order)


class Element:
    """An element of a :class:`Ring`, identified by its canonical index."""

    __slots__ = ("ring", "index")

    def __init__(self, ring: Ring, index: int):
        self.ring = ring
        self.index = int(index)

    def _other(self, other) -> int:
        if isinstance(other, Element):
            if other.ring != self.ring:
                raise RingMismatchError(f"cannot combine elements of {self.ring} and {other.ring}")
            return other.index
        if isinstance(other, int) and not isinstance(other, bool):
            return self.ring.from_int(other)
        raise RingMismatchError(f"not an element of {self.ring}: {other!r}")

    def __add__(self, other) -> "Element":
        return Element(self.ring, self.ring.add(self.index, self._other(other)))

    def __radd__(self, other) -> "Element":
        return Element(self.ring, self.ring.add(self._other(other), self.index))

    def __sub__(self, other) -> "Element":
        return Element(self.ring, self.ring.sub(self.index, self._other(other)))

    def __rsub__(self, other) -> "Element":
        return Element(self.ring, self.ring.sub(self._other(other), self.index))

    def __mul__(self, other) -> "Element":
        return Element(self.ring, self.ring.mul(self.index, self._other(other)))

    def __rmul__(self, other) -> "Element":
        return Element(self.ring, self.ring.mul(self._other(other), self.index))

    def __neg__(self) -> "Element":
        return Element(self.ring, self.ring.neg(self.index))

    def __pow__(self, n: int) -> "Element":
        return Element(self.ring, self.ring.power(self.index, n))

    def __eq__(self, other) -> bool:
        if isinstance(other, Element):
            return self.ring == other.ring and self.index == other.index
        if isinstance(other, int) and not isinstance(other, bool):
            return self.index == self.ring.from_int(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.ring, self.index))

    def __int__(self) -> int:
        return self.index

    __index__ = __int__

    @property
    def value(self) -> Any:
        return self.ring.value(self.index)

    def inverse(self) -> "Element | None":
        return self.ring.structure.inverse(self)

    def __str__(self) -> str:
        return self.ring.format(self.index)

    def __repr__(self) -> str:
        return f"<{self.ring} {self.ring.format(self.index)} #{self.index}>"
