from __future__ import annotations

import jsonschema
import pytest
import referencing

from cleanring import get_ring
from cleanring import schemas

from oracle import BruteRing

SMALL_RINGS = ["Z1", "Z2", "Z3", "Z4", "Z6", "Z8", "Z9", "Z2xZ3", "Z2xZ2", "M2(Z2)", "T2(Z2)", "T2(Z4)", "T3(Z2)", "T2(Z3)"]
SWEEP_LIKE = SMALL_RINGS + ["Z12", "Z16", "M2(Z4)", "T2(T2(Z2))", "M2(Z2)xZ3"]


@pytest.fixture(scope="session")
def ring():
    return get_ring


@pytest.fixture(scope="session")
def brute():
    cache = {}

    def make(spec: str) -> BruteRing:
        if spec not in cache:
            cache[spec] = BruteRing(get_ring(spec))
        return cache[spec]

    return make


@pytest.fixture(scope="session")
def validate():
    registry = referencing.Registry().with_resources(
        (f"{name}.schema.json", referencing.Resource.from_contents(schemas.load(name))) for name in schemas.NAMES
    )

    def check(doc: dict, name: str) -> None:
        jsonschema.Draft202012Validator(schemas.load(name), registry=registry).validate(doc)

    return check
