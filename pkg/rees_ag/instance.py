from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Sequence

from jsonschema import Draft7Validator

from .artinian import LocalIdeal
from .errors import InputError
from .expr_parser import parse_generators
from .oracle import Instance
from .polyring import Polynomial, RingDescriptor, VARIABLE_PATTERN


INSTANCE_SCHEMA: dict[str, Any] = {
    "type": "object",
    "properties": {
        "field": {
            "oneOf": [
                {"const": "Q"},
                {
                    "type": "object",
                    "properties": {"Fp": {"type": "integer", "minimum": 2}},
                    "required": ["Fp"],
                    "additionalProperties": False,
                },
            ]
        },
        "vars": {
            "type": "array",
            "items": {"type": "string", "pattern": VARIABLE_PATTERN.pattern},
            "minItems": 1,
            "uniqueItems": True,
        },
        "gens": {"type": "array", "items": {"type": "string", "minLength": 1}},
        "split_i": {"type": "integer", "minimum": 0},
        "label": {"type": "string"},
    },
    "required": ["vars", "gens"],
    "additionalProperties": False,
}

_VALIDATOR = Draft7Validator(INSTANCE_SCHEMA)


def parse_local_generators(texts: Sequence[str], ring: RingDescriptor, source: str = "gens") -> list[Polynomial]:
    """Parse generators of an ideal of the local ring; each one must vanish at the origin."""
    polys = parse_generators(texts, ring)
    for text, poly in zip(texts, polys):
        constant = poly.constant_term()
        if constant != 0:
            raise InputError(
                f"{source}: generator {text!r} has constant term {constant} and is a unit in the local ring; "
                "generators must lie in the maximal ideal"
            )
    return polys


@dataclass
class InstanceSpec:
    variables: tuple[str, ...]
    generators: tuple[str, ...]
    characteristic: int = 0
    split_i: int | None = None
    label: str = ""

    def ring(self) -> RingDescriptor:
        return RingDescriptor(self.variables, self.characteristic)

    def polynomials(self) -> list[Polynomial]:
        return parse_local_generators(self.generators, self.ring())

    def ideal(self) -> LocalIdeal:
        ring = self.ring()
        return LocalIdeal(ring, tuple(parse_local_generators(self.generators, ring)))

    def to_oracle_instance(self) -> Instance:
        self.polynomials()
        label = self.label or "(" + ", ".join(self.generators) + ")"
        return Instance(label, self.variables, self.generators, self.characteristic, self.split_i)


def schema_errors(payload: object) -> list[str]:
    messages = []
    for error in sorted(_VALIDATOR.iter_errors(payload), key=lambda e: [str(part) for part in e.absolute_path]):
        location = "/".join(str(part) for part in error.absolute_path) or "<root>"
        messages.append(f"{location}: {error.message}")
    return messages


def instance_from_payload(payload: object) -> InstanceSpec:
    errors = schema_errors(payload)
    if errors:
        raise InputError("Invalid instance: " + "; ".join(errors))
    assert isinstance(payload, dict)
    field_spec = payload.get("field", "Q")
    characteristic = int(field_spec["Fp"]) if isinstance(field_spec, dict) else 0
    spec = InstanceSpec(
        variables=tuple(payload["vars"]),
        generators=tuple(payload["gens"]),
        characteristic=characteristic,
        split_i=payload.get("split_i"),
        label=str(payload.get("label", "")),
    )
    spec.ring()
    return spec


def load_instance(path: Path) -> InstanceSpec:
    try:
        payload = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise InputError(f"Cannot read instance file {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"Instance file {path} is not valid JSON: {exc.msg} at line {exc.lineno}") from exc
    return instance_from_payload(payload)
