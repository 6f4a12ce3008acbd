from enum import Enum
from dataclasses import dataclass

import numpy as np

from . import frozen_array
from .node_model import NodeSet
from .operator_model import OperatorMatrix


class Parity(Enum):
    odd = 1
    even = 0

    @classmethod
    def of(cls, n: int) -> 'Parity':
        return cls.odd if n % 2 else cls.even


@dataclass(frozen=True, eq=False)
class RotationGenerator:
    delta: np.ndarray
    a_matrix: np.ndarray
    lz: OperatorMatrix
    n: int
    parity: Parity
    epsilon: float

    def __post_init__(self):
        object.__setattr__(self, 'delta', frozen_array(self.delta, complex))
        object.__setattr__(self, 'a_matrix', frozen_array(self.a_matrix, complex))

    @property
    def phi_nodes(self) -> NodeSet:
        return self.lz.nodes


@dataclass(frozen=True, eq=False)
class LzEigensystem:
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray  # columns
    phi_nodes: NodeSet
    residuals: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, 'eigenvalues', frozen_array(self.eigenvalues, float))
        object.__setattr__(self, 'eigenvectors', frozen_array(self.eigenvectors, complex))
        object.__setattr__(self, 'residuals', frozen_array(self.residuals, float))
