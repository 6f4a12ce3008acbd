from dataclasses import dataclass

import numpy as np

from . import frozen_array
from .tensor_model import TensorGrid


@dataclass(frozen=True, eq=False)
class HarmonicSample:
    n: int
    m: int
    values: np.ndarray  # raveled, theta index fastest
    grid: TensorGrid
    degenerate: bool = False

    def __post_init__(self):
        object.__setattr__(self, 'values', frozen_array(self.values, complex))

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.values))
