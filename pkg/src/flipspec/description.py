"""JSON geometry descriptions.

Blowup::

    {"kind": "blowup", "ambient": {"projective_space": 2}, "center": ["x1", "x2"]}

Local model (degrees are ray-coefficient lists or ``{label: coeff}`` maps)::

    {"kind": "local_model", "base": "point", "v_plus": [[], []], "v_minus": [[], [], []]}

An ambient or base may also be an explicit fan ``{"rays": ..., "cones": ..., "labels": ...}``.
"""

from __future__ import annotations

import json
from pathlib import Path

import jsonschema

from . import toric
from .geometry import GeometryError, ThreeComponentGeometry, build_blowup_geometry, build_local_model_geometry


class DescriptionError(ValueError):
    pass


_FAN = {
    "oneOf": [
        {"const": "point"},
        {
            "type": "object",
            "properties": {"projective_space": {"type": "integer", "minimum": 1}},
            "required": ["projective_space"],
            "additionalProperties": False,
        },
        {
            "type": "object",
            "properties": {
                "rays": {"type": "array", "items": {"type": "array", "items": {"type": "integer"}}},
                "cones": {"type": "array", "items": {"type": "array", "items": {"type": "integer", "minimum": 0}}},
                "labels": {"type": "array", "items": {"type": "string"}},
            },
            "required": ["rays", "cones"],
            "additionalProperties": False,
        },
    ]
}

_DEGREE = {
    "oneOf": [
        {"type": "array", "items": {"type": "integer"}},
        {"type": "object", "additionalProperties": {"type": "integer"}},
    ]
}

_OPTIONS = {
    "type": "object",
    "properties": {
        "order": {"type": "integer", "minimum": 0},
        "tol": {"type": "number", "exclusiveMinimum": 0},
        "locus": {"type": "array", "items": {"type": "string"}},
    },
    "additionalProperties": False,
}

SCHEMA = {
    "oneOf": [
        {
            "type": "object",
            "properties": {
                "kind": {"const": "blowup"},
                "ambient": _FAN,
                "center": {"type": "array", "items": {"type": ["string", "integer"]}, "minItems": 1},
                "options": _OPTIONS,
            },
            "required": ["kind", "ambient", "center"],
            "additionalProperties": False,
        },
        {
            "type": "object",
            "properties": {
                "kind": {"const": "local_model"},
                "base": _FAN,
                "v_plus": {"type": "array", "items": _DEGREE, "minItems": 1},
                "v_minus": {"type": "array", "items": _DEGREE, "minItems": 1},
                "options": _OPTIONS,
            },
            "required": ["kind", "base", "v_plus", "v_minus"],
            "additionalProperties": False,
        },
    ]
}


def _fan(spec) -> toric.Fan:
    if spec == "point":
        return toric.point()
    if "projective_space" in spec:
        return toric.projective_space(spec["projective_space"])
    return toric.Fan.from_data(spec["rays"], spec["cones"], spec.get("labels"))


def validate_description(data) -> None:
    try:
        jsonschema.validate(data, SCHEMA)
    except jsonschema.ValidationError as exc:
        raise DescriptionError(f"schema violation: {exc.message}") from None


def geometry_from_description(data) -> ThreeComponentGeometry:
    validate_description(data)
    try:
        if data["kind"] == "blowup":
            return build_blowup_geometry(_fan(data["ambient"]), data["center"])
        base = _fan(data["base"])
        return build_local_model_geometry(base, data["v_plus"], data["v_minus"])
    except (GeometryError, ValueError, KeyError, IndexError) as exc:
        raise DescriptionError(f"unsupported geometry: {exc}") from None


def load_description(path: str | Path) -> dict:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise DescriptionError(f"cannot read {path}: {exc.strerror}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DescriptionError(f"malformed JSON: {exc.msg} at line {exc.lineno}") from None
    validate_description(data)
    return data
