"""JSON schemas for the documents emitted by the library and CLI."""

from __future__ import annotations

import json
from importlib import resources

NAMES = ("witness", "property_report", "verification_report", "decomposition", "ring_info")


def load(name: str) -> dict:
    return json.loads(resources.files(__name__).joinpath(f"{name}.schema.json").read_text())
