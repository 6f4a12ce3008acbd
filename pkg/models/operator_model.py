from enum import Enum
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import frozen_array
from .node_model import NodeSet


class ExactnessKind(Enum):
    polynomial = 0  # degree <= N-1
    trigonometric = 1  # degree <= (N-1)/2, N odd
    half_integer = 2  # e^{ix/2} f, f of degree <= N/2-1
    sine_half = 3  # sin(x/2) f
    cosine_half = 4  # cos(x/2) f
    parity = 5  # definite parity, degree <= N


@dataclass(frozen=True)
class Exactness:
    kind: ExactnessKind
    degree: int

    def describe(self) -> str:
        return f"{self.kind.name}<={self.degree}"


@dataclass(frozen=True, eq=False)
class Similarity:
    """Diagonal similarity stored as log-magnitude and sign so that products of many sines never underflow."""
    log_magnitude: np.ndarray
    sign: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, 'log_magnitude', frozen_array(self.log_magnitude, float))
        object.__setattr__(self, 'sign', frozen_array(self.sign, float))
        if not np.all(np.isfinite(self.log_magnitude)) or np.any(self.sign == 0):
            raise ValueError("similarity diagonal must not contain zeros")

    def ratios(self) -> np.ndarray:
        """Matrix of d_i / d_j."""
        exponent = self.log_magnitude[:, None] - self.log_magnitude[None, :]
        return np.outer(self.sign, self.sign) * np.exp(exponent)

    def diagonal(self) -> np.ndarray:
        # scaled by a common factor, which leaves every similarity transform unchanged
        return self.sign * np.exp(self.log_magnitude - np.max(self.log_magnitude))


@dataclass(frozen=True, eq=False)
class OperatorMatrix:
    entries: np.ndarray
    nodes: NodeSet
    exactness: Exactness
    kernel: Optional[np.ndarray] = None
    similarity: Optional[Similarity] = None
    order: int = 1

    def __post_init__(self):
        object.__setattr__(self, 'entries', frozen_array(self.entries))
        if self.kernel is not None:
            object.__setattr__(self, 'kernel', frozen_array(self.kernel))
        if self.entries.ndim != 2 or self.entries.shape[0] != self.entries.shape[1]:
            raise ValueError("operator entries must be a square matrix")
        if self.entries.shape[0] != self.nodes.count:
            raise ValueError("operator side must equal the node count")

    @property
    def dimension(self) -> int:
        return int(self.entries.shape[0])

    def apply(self, samples) -> np.ndarray:
        return self.entries @ np.asarray(samples)
