import logging

import numpy as np

from models.operator_model import OperatorMatrix
from models.rotation_model import RotationGenerator, LzEigensystem, Parity
from utils.errors import InvalidArgument
from . import get_count, complex_pairs, float_list, off_diagonal_mass
from .diffmat_service import trig_diff_matrix, prepare_operator
from .eigen_service import matrix_exponential
from .node_service import equidistant_nodes, prepare_node_set


logger = logging.getLogger(__name__)


def delta_with_phases(phases) -> np.ndarray:
    """Circulant shift with Delta[j, j-1] = exp(i*phase_j), wrapping at the first row."""
    phases = np.asarray(phases, dtype=float).ravel()
    if not phases.size:
        raise InvalidArgument("at least one phase is required")
    n = phases.size
    delta = np.zeros((n, n), dtype=complex)
    delta[np.arange(n), (np.arange(n) - 1) % n] = np.exp(1j * phases)
    return delta


def rotation_matrix(n: int) -> np.ndarray:
    n = get_count(n, 2)
    delta = delta_with_phases(np.zeros(n))
    if n % 2 == 0:
        delta[0, n - 1] = -1.0  # two-valued representation
    return delta


def generator_matrix(n: int) -> np.ndarray:
    n = get_count(n, 2)
    j, k = np.meshgrid(np.arange(n), np.arange(n), indexing='ij')
    difference = j - k
    sines = np.sin(np.pi * difference / n)
    np.fill_diagonal(sines, 1.0)
    a_matrix = 1j * np.where(difference % 2, -1.0, 1.0) * (np.pi / n) / sines
    np.fill_diagonal(a_matrix, 0.0)
    return a_matrix


def lz_operator(n: int) -> OperatorMatrix:
    d_phi = trig_diff_matrix(equidistant_nodes(n))
    return OperatorMatrix(-1j * d_phi.entries, d_phi.nodes, d_phi.exactness, d_phi.kernel, d_phi.similarity)


def build_rotation_generator(n: int) -> RotationGenerator:
    n = get_count(n, 2)
    logger.debug("building rotation generator n=%d", n)
    return RotationGenerator(
        rotation_matrix(n), generator_matrix(n), lz_operator(n), n, Parity.of(n), 2 * np.pi / n
    )


def lz_ladder(n: int) -> np.ndarray:
    n = get_count(n, 2)
    return np.arange(n) - (n - 1) / 2.0


def lz_eigensystem(n: int) -> LzEigensystem:
    n = get_count(n, 2)
    lz = lz_operator(n)
    values = lz_ladder(n)
    phi = lz.nodes.points
    vectors = np.exp(1j * np.outer(phi, values)) / np.sqrt(n)
    residuals = np.linalg.norm(lz.entries @ vectors - vectors * values, axis=0)
    return LzEigensystem(values, vectors, lz.nodes, residuals)


def verify_exponential_relation(gen: RotationGenerator) -> float:
    exponential = matrix_exponential(-1j * gen.epsilon * gen.lz.entries)
    return float(np.max(np.abs(exponential - gen.delta)))


def characteristic_check(gen: RotationGenerator) -> float:
    system = lz_eigensystem(gen.n)
    worst = 0.0
    for m, vector in zip(system.eigenvalues, system.eigenvectors.T):
        value = np.exp(-1j * gen.epsilon * m)
        worst = max(worst, abs((-value) ** gen.n + 1), float(np.linalg.norm(gen.delta @ vector - value * vector)))
    return worst


def simultaneous_diagonalization_error(gen: RotationGenerator) -> float:
    unitary = lz_eigensystem(gen.n).eigenvectors
    return max(
        off_diagonal_mass(unitary.conj().T @ gen.delta @ unitary),
        off_diagonal_mass(unitary.conj().T @ gen.a_matrix @ unitary)
    )


def prepare_generator(gen: RotationGenerator) -> dict:
    return {
        "n": gen.n,
        "parity": gen.parity.name,
        "epsilon": gen.epsilon,
        "delta": complex_pairs(gen.delta),
        "a_matrix": complex_pairs(gen.a_matrix),
        "lz": prepare_operator(gen.lz)
    }


def prepare_eigensystem(system: LzEigensystem) -> dict:
    return {
        "eigenvalues": float_list(system.eigenvalues),
        "eigenvectors": complex_pairs(system.eigenvectors),
        "phi_nodes": prepare_node_set(system.phi_nodes),
        "residuals": float_list(system.residuals)
    }
