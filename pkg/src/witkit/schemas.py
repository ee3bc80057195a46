"""JSON schemas of the files and stdout documents the CLI reads and writes."""

from __future__ import annotations

from .states import RECORD_KEYS

_unit_number = {"type": "number", "minimum": -1.5, "maximum": 1.5}

RECORD = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "MeasurementRecord",
    "type": "object",
    "properties": {
        **{k: _unit_number for k in RECORD_KEYS},
        "shots": {"type": "integer", "minimum": 1},
        "std_err": {
            "type": "object",
            "properties": {k: {"type": "number", "minimum": 0} for k in RECORD_KEYS},
            "required": list(RECORD_KEYS),
            "additionalProperties": False,
        },
    },
    "required": list(RECORD_KEYS),
    "additionalProperties": False,
}

MATRIX = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "Matrix",
    "type": "object",
    "properties": {
        "dims": {"type": "array", "items": {"type": "integer", "minimum": 1}, "minItems": 2, "maxItems": 2},
        "re": {"type": "array", "items": {"type": "number"}},
        "im": {"type": "array", "items": {"type": "number"}},
        "provenance": {
            "type": "object",
            "properties": {"kind": {"type": "string"}, "params": {"type": "object"}},
            "required": ["kind"],
        },
    },
    "required": ["dims", "re", "im"],
}

DETECTION = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "DetectionResult",
    "type": "object",
    "properties": {
        "min_value": {"type": "number"},
        "best_family": {"type": "integer", "minimum": 1, "maximum": 6},
        "best_a": {"type": "number", "minimum": -1, "maximum": 1},
        "best_b": {"type": "number", "minimum": -1, "maximum": 1},
        "entangled": {"type": "boolean"},
        "significance": {"type": ["number", "null"]},
        "ppt_min_eigenvalue": {"type": "number"},
        "agrees_with_ppt": {"type": "boolean"},
    },
    "required": ["min_value", "best_family", "best_a", "entangled", "significance"],
}

VERDICT = {
    "type": "object",
    "properties": {
        "min_product_value": {"type": "number"},
        "min_eigenvalue": {"type": "number"},
        "is_block_positive": {"type": "boolean"},
        "is_witness": {"type": "boolean"},
        "restarts_used": {"type": "integer", "minimum": 0},
    },
    "required": ["min_product_value", "min_eigenvalue", "is_block_positive", "is_witness", "restarts_used"],
}

WITNESS_OUTPUT = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "WitnessOutput",
    "type": "object",
    "properties": {
        "witness": MATRIX,
        "is_valid": {"type": "boolean"},
        "is_extremal_class": {"type": "boolean"},
        "is_indecomposable_class": {"type": "boolean"},
        "verdict": VERDICT,
    },
    "required": ["witness"],
}

SCAN_AD_HEADER = ("gamma", "a_lower", "a_upper", "min_value")
SCAN_WERNER_HEADER = ("f", "min_value")
