"""Exponent constants standing in for unspecified O(1) terms."""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass, fields

from ..errors import ParseError


@dataclass(frozen=True)
class BoundConstants:
    vorobjov_c: int = 1
    jeronimo_c: int = 1
    sep_c: int = 1
    kron_c: int = 1
    rec_c: int = 1
    nonrec_L: int = 1
    ctau: int = 1

    def __post_init__(self):
        for f in fields(self):
            v = getattr(self, f.name)
            if isinstance(v, bool) or not isinstance(v, int) or v < 1:
                raise ParseError(f"{f.name} must be a positive integer, got {v!r}")

    def to_json(self) -> dict:
        return asdict(self)

    @classmethod
    def from_json(cls, data) -> "BoundConstants":
        if not isinstance(data, dict):
            raise ParseError("constants must be a JSON object")
        known = {f.name for f in fields(cls)}
        extra = set(data) - known
        if extra:
            raise ParseError(f"unknown constants: {sorted(extra)}")
        return cls(**data)

    @classmethod
    def load(cls, path) -> "BoundConstants":
        try:
            with open(path) as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ParseError(f"cannot read constants from {path}: {exc}") from exc
        return cls.from_json(data)
