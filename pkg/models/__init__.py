from typing import Iterable

import numpy as np


def frozen_array(values: Iterable, dtype=None) -> np.ndarray:
    result = np.array(values, dtype=dtype, copy=True)
    result.setflags(write=False)
    return result
