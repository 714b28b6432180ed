"""Finite ring arithmetic and exhaustive cleanness checks on small rings."""

from .classify import (
    ALL_PROPERTIES,
    Classifier,
    CleanWitness,
    Property,
    PropertyReport,
    check_element,
    classify_ring,
    J_quasipolar,
    perfectly_clean,
    perfectly_J_clean,
    quasipolar,
    strongly_clean,
    strongly_J_clean,
    strongly_nil_clean,
    uniquely_clean,
    uniquely_strongly_clean,
)
from .errors import (
    BudgetExceededError,
    ElementLiteralError,
    OrderCapError,
    PostconditionError,
    PreconditionError,
    RingError,
    RingMismatchError,
    RingSpecSyntaxError,
)
from .ring import Element, Ring, get_ring
from .spec import (
    DEFAULT_MAX_ORDER,
    MatrixRing,
    Product,
    TriangularRing,
    Zmod,
    format_ring_spec,
    parse_ring_spec,
)
from .structure import ElementSet, Structure

__all__ = [name for name in dir() if not name.startswith("_")]
