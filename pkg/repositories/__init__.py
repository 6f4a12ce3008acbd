import json
import math
from numbers import Integral, Real

import numpy as np


def format_float(value: float, digits: int) -> str:
    if not math.isfinite(value):
        return 'null'
    return format(float(value), f'.{digits}g')


def encode(value, digits: int) -> str:
    """Deterministic JSON text with every float printed to `digits` significant digits."""
    if value is None:
        return 'null'
    if isinstance(value, (bool, np.bool_)):
        return 'true' if value else 'false'
    if isinstance(value, Integral):
        return str(int(value))
    if isinstance(value, Real):
        return format_float(value, digits)
    if isinstance(value, str):
        return json.dumps(value)
    if isinstance(value, dict):
        return '{' + ', '.join(f'{json.dumps(str(key))}: {encode(item, digits)}' for key, item in value.items()) + '}'
    if isinstance(value, np.ndarray):
        value = value.tolist()
    if isinstance(value, (list, tuple)):
        return '[' + ', '.join(encode(item, digits) for item in value) + ']'
    raise TypeError(f"cannot encode {type(value).__name__}")


def format_cell(value, digits: int) -> str:
    if isinstance(value, (bool, np.bool_)):
        return 'true' if value else 'false'
    if isinstance(value, Integral):
        return str(int(value))
    if isinstance(value, Real):
        return '' if not math.isfinite(value) else format_float(value, digits)
    return str(value)
