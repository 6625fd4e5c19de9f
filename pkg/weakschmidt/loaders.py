from typing import Any
import json
import os

from .config import TolLike
from .errors import DocumentError
from .serialization import codec
from .utils.schema import validate_document

_DECODERS = {
    "state": lambda payload, tol: codec.decode_state(payload),
    "density": codec.decode_density,
    "ensemble": lambda payload, tol: codec.decode_ensemble(payload),
    "hadamard": lambda payload, tol: codec.decode_hadamard(payload),
    "bell_basis": codec.decode_bell_basis,
    "family": lambda payload, tol: codec.decode_family(payload),
}


def read_document(path: str) -> Any:
    """
    Load a JSON document from disk without interpreting it.
    """
    if not os.path.exists(path):
        raise DocumentError(f"Input file not found: {path}")
    try:
        with open(path, "r") as f:
            return json.load(f)
    except json.JSONDecodeError as e:
        raise DocumentError(f"Malformed JSON in {path}: {e}") from e
    except OSError as e:
        raise DocumentError(f"Could not read {path}: {e}") from e


def load_document(path: str, kind: str, tol: TolLike = None) -> Any:
    """
    Read, schema-validate and decode a document of the given kind.

    Semantic violations found while decoding (unnormalized state, non-PSD
    density matrix, non-Hadamard input) surface as the corresponding
    InputError subclass.
    """
    if kind not in _DECODERS:
        raise ValueError(f"Unknown document kind: {kind}")
    payload = read_document(path)
    payload, error = validate_document(payload, kind)
    if error:
        raise DocumentError(f"{path}: {error}")
    return _DECODERS[kind](payload, tol)
