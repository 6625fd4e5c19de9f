from typing import Tuple, Optional, Dict, Any
from jsonschema import Draft7Validator, exceptions as jsonschema_exceptions

COMPLEX = {
    "type": "array",
    "items": {"type": "number"},
    "minItems": 2,
    "maxItems": 2,
}

VECTOR = {"type": "array", "items": COMPLEX, "minItems": 1}

MATRIX = {"type": "array", "items": VECTOR, "minItems": 1}

STATE = {
    "type": "object",
    "properties": {
        "n": {"type": "integer", "minimum": 1},
        "vec": VECTOR,
    },
    "required": ["vec"],
}

DENSITY = {
    "type": "object",
    "properties": {
        "n": {"type": "integer", "minimum": 1},
        "rho": MATRIX,
    },
    "required": ["rho"],
}

ENSEMBLE = {
    "type": "object",
    "properties": {
        "probs": {"type": "array", "items": {"type": "number", "minimum": 0}, "minItems": 1},
        "states": {"type": "array", "items": STATE, "minItems": 1},
    },
    "required": ["probs", "states"],
}

HADAMARD = {
    "type": "object",
    "properties": {
        "n": {"type": "integer", "minimum": 1},
        "H": MATRIX,
        "theta": {
            "type": "array",
            "items": {"type": "array", "items": {"type": "number"}, "minItems": 1},
            "minItems": 1,
        },
    },
    "oneOf": [{"required": ["H"]}, {"required": ["theta"]}],
}

BELL_BASIS = {
    "type": "object",
    "properties": {
        "n": {"type": "integer", "minimum": 1},
        "hadamards": {"type": "array", "items": HADAMARD, "minItems": 1},
    },
    "required": ["hadamards"],
}

FAMILY = {
    "oneOf": [
        {
            "type": "object",
            "properties": {"matrices": {"type": "array", "items": MATRIX, "minItems": 1}},
            "required": ["matrices"],
        },
        ENSEMBLE,
    ]
}

SCHEMAS: Dict[str, Dict[str, Any]] = {
    "state": STATE,
    "density": DENSITY,
    "ensemble": ENSEMBLE,
    "hadamard": HADAMARD,
    "bell_basis": BELL_BASIS,
    "family": FAMILY,
}


def validate_document(payload: Any, kind: str) -> Tuple[Optional[Any], Optional[str]]:
    """
    Validate a parsed JSON document against the schema registered for `kind`.

    Returns:
        (payload, None) if validation is successful.
        (None, error_message) if validation fails.
    """
    schema = SCHEMAS.get(kind)
    if schema is None:
        return None, f"ERROR: Unknown document kind '{kind}'."

    try:
        Draft7Validator(schema).validate(payload)
        return payload, None
    except jsonschema_exceptions.ValidationError as e:
        error_path = list(e.absolute_path) if e.absolute_path else []
        path_str = ".".join(map(str, error_path)) if error_path else "document"
        return None, f"ERROR: {kind} document failed validation at '{path_str}': {e.message}"
