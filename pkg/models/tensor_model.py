from dataclasses import dataclass
from typing import Tuple

import numpy as np

from . import frozen_array
from .node_model import NodeSet


@dataclass(frozen=True, eq=False)
class TensorGrid:
    axes: Tuple[NodeSet, ...]  # axis 0 runs fastest

    def __post_init__(self):
        object.__setattr__(self, 'axes', tuple(self.axes))
        if not self.axes:
            raise ValueError("a tensor grid needs at least one axis")

    @property
    def dims(self) -> Tuple[int, ...]:
        return tuple(axis.count for axis in self.axes)

    @property
    def total(self) -> int:
        return int(np.prod(self.dims))


@dataclass(frozen=True)
class KronFactor:
    axis: int
    label: str


@dataclass(frozen=True, eq=False)
class KronOperator:
    entries: np.ndarray
    grid: TensorGrid
    factors: Tuple[KronFactor, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, 'entries', frozen_array(self.entries))
        object.__setattr__(self, 'factors', tuple(self.factors))
        if self.entries.shape != (self.grid.total, self.grid.total):
            raise ValueError("operator dimension must match the grid size")

    @property
    def dimension(self) -> int:
        return self.grid.total
