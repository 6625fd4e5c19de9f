import json
from datetime import date, datetime
from enum import Enum
from typing import Any

import numpy as np


def json_serializer_default(o: Any) -> Any:
    """Handles common non-serializable types for json.dumps."""
    if isinstance(o, (datetime, date)):
        return o.isoformat()
    elif isinstance(o, complex) or isinstance(o, np.complexfloating):
        return [float(o.real), float(o.imag)]
    elif isinstance(o, np.bool_):
        return bool(o)
    elif isinstance(o, np.integer):
        return int(o)
    elif isinstance(o, np.floating):
        return float(o)
    elif isinstance(o, np.ndarray):
        return _plain(o.tolist())
    elif isinstance(o, Enum):
        return o.value
    elif isinstance(o, set):
        return sorted(o)
    elif hasattr(o, 'to_dict') and callable(o.to_dict):
        try:
            return o.to_dict()
        except Exception:
            pass
    return repr(o)


def _plain(obj: Any) -> Any:
    """Recursively convert to JSON-native values; -0.0 is folded into 0.0."""
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        value = float(obj)
        return 0.0 if value == 0.0 else value
    if isinstance(obj, (complex, np.complexfloating)):
        return [_plain(obj.real), _plain(obj.imag)]
    if obj is None or isinstance(obj, str):
        return obj
    return _plain(json_serializer_default(obj))


def format_float(x: float) -> str:
    """17 significant digits, decimal point always kept so values parse back as floats."""
    if x != x or x in (float("inf"), float("-inf")):
        raise ValueError(f"Out of range float values are not JSON compliant: {x!r}")
    return format(x, "#.17g")


class FixedFloatEncoder(json.JSONEncoder):
    """JSONEncoder printing every float through format_float."""

    def iterencode(self, o: Any, _one_shot: bool = False):
        encoder = json.encoder.encode_basestring_ascii if self.ensure_ascii else json.encoder.encode_basestring
        _iterencode = json.encoder._make_iterencode(
            {} if self.check_circular else None,
            self.default,
            encoder,
            self.indent,
            format_float,
            self.key_separator,
            self.item_separator,
            self.sort_keys,
            self.skipkeys,
            _one_shot,
        )
        return _iterencode(o, 0)


def dumps_canonical(obj: Any, pretty: bool = False) -> str:
    """Deterministic JSON text: keys sorted, floats fixed-format with 17 significant digits."""
    if pretty:
        return json.dumps(_plain(obj), cls=FixedFloatEncoder, sort_keys=True, indent=2)
    return json.dumps(_plain(obj), cls=FixedFloatEncoder, sort_keys=True, separators=(",", ":"))
