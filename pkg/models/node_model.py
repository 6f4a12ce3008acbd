from enum import Enum
from dataclasses import dataclass

import numpy as np

from . import frozen_array


class NodeKind(Enum):
    periodic = 0  # (-pi, pi]
    open = 1  # (0, pi)
    general = 2


class ConditionKernel(Enum):
    trigonometric = 0
    polynomial = 1


@dataclass(frozen=True, eq=False)
class NodeSet:
    points: np.ndarray
    kind: NodeKind

    def __post_init__(self):
        object.__setattr__(self, 'points', frozen_array(self.points, float))

    @property
    def count(self) -> int:
        return int(self.points.shape[0])

    def __len__(self) -> int:
        return self.count

    def contains(self, value: float, tolerance: float = 1e-12) -> bool:
        return bool(np.any(np.abs(self.points - value) < tolerance))


@dataclass(frozen=True, eq=False)
class NodeConditionResidual:
    residuals: np.ndarray
    kernel: ConditionKernel = ConditionKernel.trigonometric

    def __post_init__(self):
        object.__setattr__(self, 'residuals', frozen_array(self.residuals, float))

    @property
    def max_abs(self) -> float:
        if not self.residuals.size:
            return 0.0
        return float(np.max(np.abs(self.residuals)))
