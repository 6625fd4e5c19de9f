from .helpers import json_serializer_default, dumps_canonical, format_float

__all__ = ["json_serializer_default", "dumps_canonical", "format_float"]
