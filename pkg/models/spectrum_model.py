from enum import Enum
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from . import frozen_array
from .node_model import NodeSet
from .operator_model import OperatorMatrix
from .tensor_model import KronOperator


class L2Variant(Enum):
    eq30 = 0  # trigonometric theta derivative
    eq35 = 1  # parity theta derivative


class SolveMethod(Enum):
    theta_blocks = 0
    dense_qr = 1


@dataclass(frozen=True, eq=False)
class LSquaredOperator:
    matrix: KronOperator
    variant: L2Variant
    theta_nodes: NodeSet
    phi_nodes: NodeSet
    exact_count: int
    theta_operator: OperatorMatrix
    theta_part: np.ndarray  # N x N, the theta factor of -L^2 before the phi coupling
    node_residual: float
    symmetrizable: bool

    def __post_init__(self):
        object.__setattr__(self, 'theta_part', frozen_array(self.theta_part))

    @property
    def n_theta(self) -> int:
        return self.theta_nodes.count

    @property
    def m_phi(self) -> int:
        return self.phi_nodes.count

    @property
    def dimension(self) -> int:
        return self.matrix.dimension

    @property
    def max_degree(self) -> int:
        if self.variant == L2Variant.eq30:
            return (self.n_theta - 1) // 2
        return self.n_theta


@dataclass(frozen=True, eq=False)
class ThetaBlock:
    m: int
    matrix: np.ndarray
    symmetric: Optional[np.ndarray] = None
    similarity: Optional[np.ndarray] = None  # diagonal of T, block = T symmetric T^-1

    @property
    def symmetrizable(self) -> bool:
        return self.symmetric is not None


@dataclass(frozen=True)
class HarmonicMatch:
    n: int
    m: int
    residual: float


@dataclass(frozen=True)
class SpectralCluster:
    value: float
    multiplicity: int
    imag: float = 0.0
    n_label: Optional[int] = None
    residual: Optional[float] = None


@dataclass(frozen=True, eq=False)
class LabeledSpectrum:
    values: np.ndarray  # sorted, one per eigenvalue
    clusters: Tuple[SpectralCluster, ...]
    eigenvectors: Tuple[np.ndarray, ...]  # one column block per cluster
    match_report: Tuple[HarmonicMatch, ...]
    variant: L2Variant
    exact_count: int
    method: SolveMethod

    def __post_init__(self):
        object.__setattr__(self, 'values', frozen_array(self.values, complex))

    @property
    def labeled(self) -> Tuple[SpectralCluster, ...]:
        return tuple(cluster for cluster in self.clusters if cluster.n_label is not None)

    @property
    def max_imag(self) -> float:
        if not self.values.size:
            return 0.0
        return float(np.max(np.abs(self.values.imag)))
