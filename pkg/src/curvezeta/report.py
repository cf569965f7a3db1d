"""Output envelope and canonical JSON encoding.

No floats ever reach the encoder: integers beyond 2^53 become decimal
strings and non-integral rationals become "num/den" strings, so every
document parses and re-serializes to identical bytes.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

SAFE_INT = 2**53


@dataclass(frozen=True)
class Diagnostic:
    level: str  # "info", "warning" or "error"
    code: str
    message: str

    def to_json(self) -> dict:
        return {"level": self.level, "code": self.code, "message": self.message}


@dataclass
class OutputEnvelope:
    command: str
    inputs: dict
    result: Any = None
    diagnostics: list[Diagnostic] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "command": self.command,
            "inputs": encode(self.inputs),
            "result": encode(self.result),
            "diagnostics": [d.to_json() for d in self.diagnostics],
        }

    def dumps(self) -> str:
        return dumps(self.to_json())


def encode(obj):
    """Recursively convert a payload into JSON-safe, float-free values."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, int):
        return obj if -SAFE_INT <= obj <= SAFE_INT else str(obj)
    if isinstance(obj, Fraction):
        return encode(obj.numerator) if obj.denominator == 1 else f"{obj.numerator}/{obj.denominator}"
    if isinstance(obj, float):
        raise TypeError("floats are not allowed in output payloads")
    if isinstance(obj, dict):
        return {str(k): encode(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [encode(v) for v in obj]
    if hasattr(obj, "to_json"):
        return encode(obj.to_json())
    return str(obj)


def decode_int(value) -> int | Fraction:
    """Inverse of ``encode`` for a single number."""
    if isinstance(value, int):
        return value
    if "/" in value:
        return Fraction(value)
    return int(value)


def dumps(doc) -> str:
    return json.dumps(doc, ensure_ascii=False, separators=(", ", ": "))
