from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import frozen_array


@dataclass(frozen=True, eq=False)
class EigenDecomposition:
    values: np.ndarray
    vectors: Optional[np.ndarray] = None  # columns
    iterations: int = 0
    residual: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, 'values', frozen_array(self.values, complex))
        if self.vectors is not None:
            object.__setattr__(self, 'vectors', frozen_array(self.vectors))

    @property
    def real_values(self) -> np.ndarray:
        return self.values.real.copy()
