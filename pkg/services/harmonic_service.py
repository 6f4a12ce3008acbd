from typing import Iterable, Union

import numpy as np

from models.harmonic_model import HarmonicSample
from models.node_model import NodeSet
from models.tensor_model import TensorGrid
from utils.errors import InvalidArgument, DegenerateSample
from .tensor_service import tensor_grid, grid_coordinates


DEGENERATE_NORM = 1e-12
RANK_TOLERANCE = 1e-10


def assoc_legendre(n: int, m: int, x):
    """
    P^m_n(x) with the Condon-Shortley phase, by upward recurrence in the degree from P^m_m.
    Accepts a scalar or an array of abscissae in [-1, 1].
    """
    if not 0 <= m <= n:
        raise InvalidArgument(f"associated Legendre order must satisfy 0 <= m <= n, got n={n} m={m}")
    values = np.asarray(x, dtype=float)
    if np.any(np.abs(values) > 1.0):
        raise InvalidArgument("associated Legendre argument must lie in [-1, 1]")
    double_factorial = np.prod(np.arange(2 * m - 1, 0, -2, dtype=float))
    previous = (-1.0) ** m * double_factorial * (1.0 - values * values) ** (0.5 * m)
    if n == m:
        return previous if values.ndim else float(previous)
    current = values * (2 * m + 1) * previous
    for degree in range(m + 2, n + 1):
        previous, current = current, ((2 * degree - 1) * values * current - (degree + m - 1) * previous) / (degree - m)
    return current if values.ndim else float(current)


def spherical_grid(theta_nodes: NodeSet, phi_nodes: NodeSet) -> TensorGrid:
    return tensor_grid(theta_nodes, phi_nodes)


def harmonic_on_grid(n: int, m: int, grid: TensorGrid) -> HarmonicSample:
    if n < 0 or abs(m) > n:
        raise InvalidArgument(f"spherical harmonic needs |m| <= n, got n={n} m={m}")
    if len(grid.dims) != 2:
        raise InvalidArgument("spherical harmonics live on a (theta, phi) grid")
    theta, phi = grid_coordinates(grid).T
    # negative orders share the |m| Legendre factor; the scale is irrelevant to subspace comparisons
    values = assoc_legendre(n, abs(m), np.cos(theta)) * np.exp(1j * m * phi)
    degenerate = np.linalg.norm(values) <= DEGENERATE_NORM * np.sqrt(values.size)
    return HarmonicSample(n, m, values, grid, bool(degenerate))


def orthonormal_basis(vectors) -> np.ndarray:
    vectors = np.asarray(vectors)
    if vectors.ndim == 1:
        vectors = vectors[:, None]
    if not vectors.shape[1]:
        return vectors.astype(complex)
    u, s, _ = np.linalg.svd(vectors, full_matrices=False)
    if not s.size or s[0] == 0:
        return u[:, :0]
    return u[:, s > RANK_TOLERANCE * s[0]]


def _sample_values(sample: Union[HarmonicSample, np.ndarray]) -> np.ndarray:
    if isinstance(sample, HarmonicSample):
        if sample.degenerate:
            raise DegenerateSample(f"harmonic (n={sample.n}, m={sample.m}) vanishes on the grid")
        return sample.values
    return np.asarray(sample, dtype=complex).ravel()


def subspace_residual(eigvectors, samples: Iterable[Union[HarmonicSample, np.ndarray]]) -> float:
    basis = orthonormal_basis(eigvectors)
    worst = 0.0
    for sample in samples:
        values = _sample_values(sample)
        if values.shape[0] != basis.shape[0]:
            raise InvalidArgument("sample and eigenvector lengths differ")
        norm = np.linalg.norm(values)
        if norm <= DEGENERATE_NORM:
            raise DegenerateSample("oracle sample has zero norm")
        worst = max(worst, float(np.linalg.norm(values - basis @ (basis.conj().T @ values)) / norm))
    return worst
