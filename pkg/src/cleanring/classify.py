"""Element- and ring-level decision procedures for the cleanness properties.

Every positive answer comes with a :class:`CleanWitness` that can be replayed
from its own fields; every negative answer is exhaustive over the ring's
idempotents.  Witness search scans idempotents in canonical order, so the
witness returned is the least admissible one.
"""

from __future__ import annotations

import enum
import hashlib
import json
import time
from dataclasses import dataclass, field

import numpy as np

from .errors import BudgetExceededError
from .ring import Element, Ring
from .structure import ElementSet


class Property(str, enum.Enum):
    STRONGLY_CLEAN = "strongly-clean"
    PERFECTLY_CLEAN = "perfectly-clean"
    QUASIPOLAR = "quasipolar"
    STRONGLY_J_CLEAN = "strongly-j-clean"
    PERFECTLY_J_CLEAN = "perfectly-j-clean"
    J_QUASIPOLAR = "j-quasipolar"
    STRONGLY_NIL_CLEAN = "strongly-nil-clean"
    UNIQUELY_STRONGLY_CLEAN = "uniquely-strongly-clean"
    UNIQUELY_CLEAN = "uniquely-clean"

    def __str__(self) -> str:
        return self.value


ALL_PROPERTIES = tuple(Property)

# (commutation level, complement uses a + e, set the complement must lie in)
_RULES: dict[Property, tuple[str, bool, str]] = {
    Property.STRONGLY_CLEAN: ("comm", False, "units"),
    Property.PERFECTLY_CLEAN: ("comm2", False, "units"),
    Property.QUASIPOLAR: ("comm2", True, "units"),
    Property.STRONGLY_J_CLEAN: ("comm", False, "jacobson"),
    Property.PERFECTLY_J_CLEAN: ("comm2", False, "jacobson"),
    Property.J_QUASIPOLAR: ("comm2", True, "jacobson"),
    Property.STRONGLY_NIL_CLEAN: ("comm", False, "nilpotents"),
    Property.UNIQUELY_STRONGLY_CLEAN: ("comm", False, "units"),
    Property.UNIQUELY_CLEAN: ("any", False, "units"),
}

UNIQUENESS = (Property.UNIQUELY_STRONGLY_CLEAN, Property.UNIQUELY_CLEAN)


@dataclass(frozen=True)
class CleanWitness:
    """An idempotent certifying one cleanness property of one element.

    ``complement`` is ``element - idempotent``, or ``element + idempotent`` when
    ``plus`` is set (quasipolar and J-quasipolar).  ``witness_count`` is the
    number of admissible idempotents; it is only computed for the uniqueness
    properties.
    """

    property: Property
    element: Element
    idempotent: Element
    complement: Element
    level: str
    plus: bool = False
    witness_count: int | None = None

    def verify(self) -> bool:
        """Re-check the witness from its fields alone."""
        ring = self.element.ring
        s = ring.structure
        a, e, c = self.element.index, self.idempotent.index, self.complement.index
        level, plus, target = _RULES[self.property]
        if (self.level, self.plus) != (level, plus):
            return False
        if ring.mul(e, e) != e:
            return False
        expected = ring.add(a, e) if plus else ring.sub(a, e)
        if c != expected:
            return False
        if level == "comm" and ring.mul(a, e) != ring.mul(e, a):
            return False
        if level == "comm2" and e not in s.double_commutant(a):
            return False
        if c not in getattr(s, target):
            return False
        if self.property is Property.QUASIPOLAR and ring.mul(a, e) not in s.qnil:
            return False
        if self.property in UNIQUENESS:
            return self.witness_count == Classifier(ring).count(self.property, a)
        return True

    def to_json(self) -> dict:
        ring = self.element.ring
        body = {
            "property": self.property.value,
            "ring": str(ring),
            "element": str(self.element),
            "element_index": self.element.index,
            "idempotent": str(self.idempotent),
            "idempotent_index": self.idempotent.index,
            "complement": str(self.complement),
            "complement_index": self.complement.index,
            "commutation_level": self.level,
            "sign": "+" if self.plus else "-",
        }
        if self.witness_count is not None:
            body["witness_count"] = self.witness_count
        digest = hashlib.sha256(json.dumps(body, sort_keys=True).encode()).hexdigest()
        body["verification_hash"] = digest
        return body


class Classifier:
    """Decision procedures over one ring, memoising per-element work.

    Subclassing and overriding :meth:`candidates` (or :meth:`holds`) is how the
    theorem harness injects deliberately broken classifiers in its own tests.
    """

    def __init__(self, ring: Ring):
        self.ring = ring
        self.s = ring.structure

    def admissible_mask(self, prop: Property, a: int) -> np.ndarray:
        """Mask over ``idempotents.indices`` of those admissible for ``prop`` at ``a``."""
        ring, s = self.ring, self.s
        level, plus, target = _RULES[prop]
        es = s.idempotents.indices
        if level == "comm":
            ok = ring.mul(a, es) == ring.mul(es, a)
        elif level == "comm2":
            ok = s.double_commutant(a).mask[es]
        else:
            ok = np.ones(len(es), dtype=bool)
        comp = ring.add(a, es) if plus else ring.sub(a, es)
        ok &= getattr(s, target).mask[comp]
        if prop is Property.QUASIPOLAR:
            ok &= s.qnil.mask[ring.mul(a, es)]
        return ok

    def candidates(self, prop: Property, a: int) -> np.ndarray:
        """Admissible idempotents for ``prop`` at ``a``, in canonical order."""
        return self.s.idempotents.indices[self.admissible_mask(prop, a)]

    def count(self, prop: Property, a: int) -> int:
        return len(self.candidates(prop, int(a)))

    def holds(self, prop: Property, a: int) -> bool:
        n = self.count(prop, a)
        return n == 1 if prop in UNIQUENESS else n > 0

    def witness(self, prop: Property, a: int) -> CleanWitness | None:
        a = int(a)
        found = self.candidates(prop, a)
        if len(found) == 0:
            return None
        ring = self.ring
        e = int(found[0])
        level, plus, _ = _RULES[prop]
        comp = ring.add(a, e) if plus else ring.sub(a, e)
        return CleanWitness(
            prop,
            Element(ring, a),
            Element(ring, e),
            Element(ring, comp),
            level,
            plus,
            len(found) if prop in UNIQUENESS else None,
        )

    def ring_holds(self, prop: Property) -> bool:
        return self.first_failure(prop) is None

    def first_failure(self, prop: Property) -> int | None:
        for a in range(self.ring.order):
            if not self.holds(prop, a):
                return a
        return None


def _classifier(a: Element) -> Classifier:
    return Classifier(a.ring)


def strongly_clean(a: Element) -> CleanWitness | None:
    """``e in comm(a)`` idempotent with ``a - e`` a unit."""
    return _classifier(a).witness(Property.STRONGLY_CLEAN, a.index)


def perfectly_clean(a: Element) -> CleanWitness | None:
    """``e in comm^2(a)`` idempotent with ``a - e`` a unit."""
    return _classifier(a).witness(Property.PERFECTLY_CLEAN, a.index)


def quasipolar(a: Element) -> CleanWitness | None:
    """``e in comm^2(a)`` idempotent with ``a + e`` a unit and ``ae`` quasinilpotent."""
    return _classifier(a).witness(Property.QUASIPOLAR, a.index)


def strongly_J_clean(a: Element) -> CleanWitness | None:
    return _classifier(a).witness(Property.STRONGLY_J_CLEAN, a.index)


def perfectly_J_clean(a: Element) -> CleanWitness | None:
    return _classifier(a).witness(Property.PERFECTLY_J_CLEAN, a.index)


def J_quasipolar(a: Element) -> CleanWitness | None:
    """``e in comm^2(a)`` idempotent with ``a + e in J(R)``."""
    return _classifier(a).witness(Property.J_QUASIPOLAR, a.index)


def strongly_nil_clean(a: Element) -> CleanWitness | None:
    return _classifier(a).witness(Property.STRONGLY_NIL_CLEAN, a.index)


def uniquely_strongly_clean(a: Element) -> CleanWitness | None:
    """Least admissible witness, carrying the number of admissible idempotents.

    The property holds iff the result is not ``None`` and its ``witness_count`` is 1.
    """
    return _classifier(a).witness(Property.UNIQUELY_STRONGLY_CLEAN, a.index)


def uniquely_clean(a: Element) -> CleanWitness | None:
    return _classifier(a).witness(Property.UNIQUELY_CLEAN, a.index)


def check_element(a: Element, prop: Property | str) -> tuple[bool, CleanWitness | None]:
    prop = Property(prop)
    c = _classifier(a)
    return c.holds(prop, a.index), c.witness(prop, a.index)


@dataclass
class PropertyOutcome:
    holds: bool
    counterexample: Element | None
    witness_sample: CleanWitness | None
    elapsed_ms: float

    def to_json(self) -> dict:
        return {
            "holds": self.holds,
            "counterexample": None if self.counterexample is None else str(self.counterexample),
            "counterexample_index": None if self.counterexample is None else self.counterexample.index,
            "witness_sample": None if self.witness_sample is None else self.witness_sample.to_json(),
        }


@dataclass
class PropertyReport:
    ring: Ring
    outcomes: dict[Property, PropertyOutcome] = field(default_factory=dict)

    def holds(self, prop: Property | str) -> bool:
        return self.outcomes[Property(prop)].holds

    def to_json(self, timings: bool = False) -> dict:
        props = {}
        for p, o in self.outcomes.items():
            props[p.value] = o.to_json()
            if timings:
                props[p.value]["elapsed_ms"] = round(o.elapsed_ms, 3)
        return {"ring": str(self.ring), "order": self.ring.order, "properties": props}


def classify_ring(
    ring: Ring,
    properties=ALL_PROPERTIES,
    classifier: Classifier | None = None,
    deadline: float | None = None,
) -> PropertyReport:
    """Decide each property for the whole ring.

    A property fails at the least element (canonical order) without a witness.
    ``deadline`` is a :func:`time.monotonic` value; passing it raises
    :class:`BudgetExceededError` instead of returning a partial report.
    """
    c = classifier or Classifier(ring)
    report = PropertyReport(ring)
    for prop in properties:
        prop = Property(prop)
        start = time.perf_counter()
        bad = None
        for a in range(ring.order):
            if deadline is not None and time.monotonic() > deadline:
                raise BudgetExceededError(f"time budget exhausted while classifying {ring}")
            if not c.holds(prop, a):
                bad = a
                break
        sample = None
        for a in range(ring.order):
            sample = c.witness(prop, a)
            if sample is not None:
                break
        report.outcomes[prop] = PropertyOutcome(
            holds=bad is None,
            counterexample=None if bad is None else Element(ring, bad),
            witness_sample=sample,
            elapsed_ms=(time.perf_counter() - start) * 1000,
        )
    return report
