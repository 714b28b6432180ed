"""Structural sets of a finite ring: units, idempotents, nilpotents, J(R),
the quasinilpotent set, (double) commutants, centre and Peirce corners.

Every set is an :class:`ElementSet` (sorted canonical indices plus a boolean
mask), computed at most once per ring.  Bulk computations use the ring's
Cayley tables when it has them and fall back to one vectorised row at a time
otherwise.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator

import numpy as np

from .errors import PreconditionError, RingMismatchError
from .ring import Element, Ring


class ElementSet:
    """An immutable subset of a ring, keyed by canonical index."""

    __slots__ = ("ring", "mask", "indices")

    def __init__(self, ring: Ring, mask: np.ndarray):
        self.ring = ring
        self.mask = np.asarray(mask, dtype=bool)
        self.mask.setflags(write=False)
        self.indices = np.flatnonzero(self.mask).astype(np.int64)
        self.indices.setflags(write=False)

    @classmethod
    def from_indices(cls, ring: Ring, indices: Iterable[int]) -> "ElementSet":
        mask = np.zeros(ring.order, dtype=bool)
        mask[np.fromiter((int(i) for i in indices), dtype=np.int64)] = True
        return cls(ring, mask)

    def __contains__(self, x) -> bool:
        if isinstance(x, Element):
            if x.ring != self.ring:
                raise RingMismatchError(f"{x!r} is not in {self.ring}")
            x = x.index
        return bool(self.mask[int(x)])

    def __len__(self) -> int:
        return len(self.indices)

    def __iter__(self) -> Iterator[Element]:
        return (Element(self.ring, int(i)) for i in self.indices)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ElementSet):
            return NotImplemented
        return self.ring == other.ring and np.array_equal(self.mask, other.mask)

    def __le__(self, other: "ElementSet") -> bool:
        return not np.any(self.mask & ~other.mask)

    def __and__(self, other: "ElementSet") -> "ElementSet":
        return ElementSet(self.ring, self.mask & other.mask)

    def __or__(self, other: "ElementSet") -> "ElementSet":
        return ElementSet(self.ring, self.mask | other.mask)

    def to_json(self) -> list[int]:
        return [int(i) for i in self.indices]

    def __repr__(self) -> str:
        shown = ", ".join(self.ring.format(i) for i in self.indices[:8])
        more = ", ..." if len(self) > 8 else ""
        return f"ElementSet({self.ring}, {{{shown}{more}}})"


@dataclass(frozen=True)
class CornerRing:
    """The Peirce corner ``eRe`` of an idempotent ``e``; ``e`` is its identity."""

    parent: Ring
    e: int
    carrier: ElementSet


def _as_index(ring: Ring, x) -> int:
    if isinstance(x, Element):
        if x.ring != ring:
            raise RingMismatchError(f"{x!r} is not an element of {ring}")
        return x.index
    return int(x)


class Structure:
    """Compute-once structural data for one ring.  Obtain via ``ring.structure``."""

    def __init__(self, ring: Ring):
        self.ring = ring
        self._lock = threading.RLock()
        self._cache: dict = {}
        self._comm2: dict[int, ElementSet] = {}

    def _once(self, key, fn: Callable):
        try:
            return self._cache[key]
        except KeyError:
            pass
        with self._lock:
            if key not in self._cache:
                self._cache[key] = fn()
            return self._cache[key]

    def _set(self, mask) -> ElementSet:
        return ElementSet(self.ring, mask)

    def _table(self) -> np.ndarray | None:
        return self.ring._mul_table if self.ring._tables() else None

    # -- elementwise maps -------------------------------------------------------

    @property
    def one_minus(self) -> np.ndarray:
        """``one_minus[x]`` is the index of ``1 - x``."""
        r = self.ring
        return self._once("one_minus", lambda: r.sub(r.one, r.all_indices()))

    @property
    def one_plus(self) -> np.ndarray:
        r = self.ring
        return self._once("one_plus", lambda: r.add(r.one, r.all_indices()))

    @property
    def squares(self) -> np.ndarray:
        r = self.ring
        return self._once("squares", lambda: r.mul(r.all_indices(), r.all_indices()))

    # -- units ----------------------------------------------------------------

    def _inverse_map(self) -> np.ndarray:
        r = self.ring
        n = r.order
        inv = np.full(n, -1, dtype=np.int64)
        table = self._table()
        if table is not None:
            rows, cols = np.nonzero(table == r.one)
            two_sided = table[cols, rows] == r.one
            inv[rows[two_sided]] = cols[two_sided]
        else:
            for a in range(n):
                hits = np.flatnonzero(r.mul_row(a) == r.one)
                if len(hits) and r.mul(int(hits[0]), a) == r.one:
                    inv[a] = hits[0]
        return inv

    @property
    def inverse_map(self) -> np.ndarray:
        """``inverse_map[a]`` is the index of ``a^-1``, or -1 for non-units."""
        return self._once("inverse", self._inverse_map)

    @property
    def units(self) -> ElementSet:
        return self._once("units", lambda: self._set(self.inverse_map >= 0))

    def inverse(self, a) -> Element | None:
        b = int(self.inverse_map[_as_index(self.ring, a)])
        return None if b < 0 else Element(self.ring, b)

    def inv(self, a: int) -> int:
        """Index of ``a^-1``; raises :class:`PreconditionError` for a non-unit."""
        b = int(self.inverse_map[a])
        if b < 0:
            raise PreconditionError(f"{self.ring.format(a)} is not a unit in {self.ring}")
        return b

    # -- idempotents, nilpotents ----------------------------------------------

    @property
    def idempotents(self) -> ElementSet:
        r = self.ring
        return self._once("idempotents", lambda: self._set(self.squares == r.all_indices()))

    def _nilpotent_mask(self) -> np.ndarray:
        r = self.ring
        p = r.all_indices()
        reach = 1
        while reach < r.order:
            p = r.mul(p, p)
            reach *= 2
        return p == r.zero

    @property
    def nilpotents(self) -> ElementSet:
        return self._once("nilpotents", lambda: self._set(self._nilpotent_mask()))

    def nilpotency_index(self, a) -> int | None:
        """Least ``n >= 1`` with ``a^n = 0``, or ``None`` if ``a`` is not nilpotent."""
        r = self.ring
        a = _as_index(r, a)
        p = a
        for n in range(1, r.order + 1):
            if p == r.zero:
                return n
            p = r.mul(p, a)
        return None

    # -- radicals -------------------------------------------------------------

    def _jacobson_mask(self) -> np.ndarray:
        r = self.ring
        is_unit, om = self.units.mask, self.one_minus
        table = self._table()
        if table is not None:
            return is_unit[om[table]].all(axis=0)
        return np.array([is_unit[om[r.mul_col(x)]].all() for x in range(r.order)])

    @property
    def jacobson(self) -> ElementSet:
        """J(R) as the left quasi-regular elements ``{x : 1 - r x in U for all r}``."""
        return self._once("jacobson", lambda: self._set(self._jacobson_mask()))

    def jacobson_two_sided(self) -> ElementSet:
        """``{x : 1 - r x s in U for all r, s}``; cubic cost, kept as an oracle."""
        r = self.ring
        is_unit, om = self.units.mask, self.one_minus
        mask = np.zeros(r.order, dtype=bool)
        everything = r.all_indices()
        for x in range(r.order):
            rx = r.mul_col(x)
            rxs = r.mul(rx[:, None], everything[None, :])
            mask[x] = is_unit[om[rxs]].all()
        return self._set(mask)

    @property
    def one_plus_jacobson(self) -> ElementSet:
        r = self.ring
        return self._once(
            "one_plus_jacobson",
            lambda: ElementSet.from_indices(r, r.add(r.one, self.jacobson.indices)),
        )

    def _qnil_mask(self) -> np.ndarray:
        r = self.ring
        is_unit, op = self.units.mask, self.one_plus
        table = self._table()
        if table is not None:
            commuting = table == table.T
            return (is_unit[op[table]] | ~commuting).all(axis=1)
        mask = np.zeros(r.order, dtype=bool)
        for x in range(r.order):
            row, col = r.mul_row(x), r.mul_col(x)
            mask[x] = is_unit[op[row[row == col]]].all()
        return mask

    @property
    def qnil(self) -> ElementSet:
        """``{x : 1 + x r in U for every r commuting with x}``."""
        return self._once("qnil", lambda: self._set(self._qnil_mask()))

    def is_qnil(self, a) -> bool:
        return _as_index(self.ring, a) in self.qnil

    @property
    def one_minus_units(self) -> ElementSet:
        """``{x : 1 - x in U}``."""
        return self._once(
            "one_minus_units", lambda: self._set(self.units.mask[self.one_minus])
        )

    # -- commutants -----------------------------------------------------------

    def commutant(self, a) -> ElementSet:
        r = self.ring
        a = _as_index(r, a)
        return self._set(r.mul_row(a) == r.mul_col(a))

    def _commuting_with_all(self, candidates: np.ndarray, others: np.ndarray) -> np.ndarray:
        """Mask over ``candidates`` of those commuting with every element of ``others``."""
        r = self.ring
        ok = np.ones(len(candidates), dtype=bool)
        if len(candidates) == 0 or len(others) == 0:
            return ok
        table = self._table()
        if table is not None:
            left = table[np.ix_(candidates, others)]
            right = table[np.ix_(others, candidates)].T
            return (left == right).all(axis=1)
        for y in others:
            idx = np.flatnonzero(ok)
            ok[idx] = r.mul(candidates[idx], y) == r.mul(y, candidates[idx])
        return ok

    def subring_closure(self, generators: Iterable[int]) -> np.ndarray:
        """Mask of the subring (with 1) generated by ``generators``."""
        r = self.ring
        gens = [int(g) for g in generators]
        monomials = np.zeros(r.order, dtype=bool)
        monomials[r.one] = True
        frontier = np.array([r.one], dtype=np.int64)
        while len(frontier) and gens:
            products = r.mul(np.asarray(gens)[:, None], frontier[None, :]).ravel()
            fresh = np.unique(products[~monomials[products]])
            monomials[fresh] = True
            frontier = fresh
        span = np.zeros(r.order, dtype=bool)
        span[r.zero] = True
        frontier = np.array([r.zero], dtype=np.int64)
        steps = np.flatnonzero(monomials)
        while len(frontier):
            sums = r.add(frontier[:, None], steps[None, :]).ravel()
            fresh = np.unique(sums[~span[sums]])
            span[fresh] = True
            frontier = fresh
        return span

    def generators(self, subset: ElementSet) -> list[int]:
        """Greedy ring generators of a subring, scanned in canonical order."""
        gens: list[int] = []
        closure = self.subring_closure(gens)
        for c in subset.indices:
            if not closure[c]:
                gens.append(int(c))
                closure = self.subring_closure(gens)
        return gens

    def double_commutant(self, a, prune: bool | None = None) -> ElementSet:
        """``comm^2(a)``: everything commuting with every element of ``comm(a)``.

        With ``prune`` the candidates are first filtered against a generating
        set of ``comm(a)``; survivors are always re-checked against all of it.
        Defaults to pruning only for rings without Cayley tables.
        """
        r = self.ring
        a = _as_index(r, a)
        if prune is None and a in self._comm2:
            return self._comm2[a]
        use_pruning = (not r._tables()) if prune is None else prune
        comm = self.commutant(a).indices
        candidates = r.all_indices()
        if use_pruning:
            gens = np.array(self.generators(self.commutant(a)), dtype=np.int64)
            candidates = candidates[self._commuting_with_all(candidates, gens)]
        survivors = candidates[self._commuting_with_all(candidates, comm)]
        result = ElementSet.from_indices(r, survivors)
        if prune is None:
            with self._lock:
                self._comm2.setdefault(a, result)
        return result

    @property
    def center(self) -> ElementSet:
        def compute():
            r = self.ring
            table = self._table()
            if table is not None:
                return self._set((table == table.T).all(axis=1))
            everything = r.all_indices()
            return self._set(self._commuting_with_all(everything, everything))

        return self._once("center", compute)

    # -- corners ----------------------------------------------------------------

    def corner(self, e) -> CornerRing:
        r = self.ring
        e = _as_index(r, e)
        if e not in self.idempotents:
            raise PreconditionError(f"{r.format(e)} is not idempotent in {r}")
        carrier = r.mul(r.mul(e, r.all_indices()), e)
        return CornerRing(r, e, ElementSet.from_indices(r, np.unique(carrier)))

    def is_unit_in_corner(self, corner: CornerRing, x) -> bool:
        """Whether ``x`` is invertible in ``eRe`` (some ``y`` there has ``xy = yx = e``)."""
        r = self.ring
        x = _as_index(r, x)
        if x not in corner.carrier:
            raise PreconditionError(f"{r.format(x)} is not in the corner of {r.format(corner.e)}")
        ys = corner.carrier.indices
        hits = (r.mul(x, ys) == corner.e) & (r.mul(ys, x) == corner.e)
        return bool(hits.any())

    # -- ring predicates ---------------------------------------------------------

    @property
    def is_commutative(self) -> bool:
        return self._once("commutative", lambda: len(self.center) == self.ring.order)

    @property
    def is_local(self) -> bool:
        """Nonzero ring in which every ``a`` has ``a`` or ``1 - a`` invertible."""
        u = self.units.mask
        return self._once("local", lambda: self.ring.order > 1 and bool((u | u[self.one_minus]).all()))

    @property
    def is_abelian(self) -> bool:
        """Every idempotent is central."""
        return self._once("abelian", lambda: self.idempotents <= self.center)

    @property
    def is_boolean_mod_J(self) -> bool:
        """``a - a^2 in J(R)`` for all ``a``, i.e. ``R/J(R)`` is Boolean."""
        def compute():
            r = self.ring
            diffs = r.sub(r.all_indices(), self.squares)
            return bool(self.jacobson.mask[diffs].all())

        return self._once("boolean_mod_J", compute)

    def _bijective(self, a: int, b: int) -> bool:
        r = self.ring
        image = r.sub(r.mul_row(a), r.mul_col(b))
        return len(np.unique(image)) == r.order

    @property
    def is_uniquely_weakly_bleached(self) -> bool:
        """For all ``a in J``, ``b in 1 + J``, both ``x -> ax - xb`` and ``x -> bx - xa``
        are bijections of R.

        On a finite ring injective and bijective coincide, so this is also the
        "weakly cobleached" condition.
        """
        def compute():
            for a in self.jacobson.indices:
                for b in self.one_plus_jacobson.indices:
                    if not (self._bijective(int(a), int(b)) and self._bijective(int(b), int(a))):
                        return False
            return True

        return self._once("uwb", compute)

    def summary(self) -> dict:
        return {
            "ring": str(self.ring),
            "order": self.ring.order,
            "units": len(self.units),
            "idempotents": len(self.idempotents),
            "nilpotents": len(self.nilpotents),
            "jacobson": self.jacobson.to_json(),
            "jacobson_size": len(self.jacobson),
            "is_local": self.is_local,
            "is_abelian": self.is_abelian,
            "is_commutative": self.is_commutative,
            "is_boolean_mod_J": self.is_boolean_mod_J,
        }


# Module-level conveniences mirroring the Structure methods.

def units(ring: Ring) -> ElementSet:
    return ring.structure.units


def inverse(a: Element) -> Element | None:
    return a.ring.structure.inverse(a)


def jacobson_radical(ring: Ring) -> ElementSet:
    return ring.structure.jacobson


def qnil_set(ring: Ring) -> ElementSet:
    return ring.structure.qnil


def is_qnil(a: Element) -> bool:
    return a.ring.structure.is_qnil(a)


def commutant(a: Element) -> ElementSet:
    return a.ring.structure.commutant(a)


def double_commutant(a: Element) -> ElementSet:
    return a.ring.structure.double_commutant(a)


def corner(ring: Ring, e) -> CornerRing:
    return ring.structure.corner(e)


def is_unit_in_corner(cr: CornerRing, x) -> bool:
    return cr.parent.structure.is_unit_in_corner(cr, x)
