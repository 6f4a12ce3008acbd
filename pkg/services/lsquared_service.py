import logging
from concurrent.futures import Executor
from typing import List, Optional, Sequence, Tuple

import numpy as np

from models.node_model import NodeSet
from models.operator_model import OperatorMatrix
from models.spectrum_model import (
    L2Variant, SolveMethod, LSquaredOperator, ThetaBlock, HarmonicMatch, SpectralCluster, LabeledSpectrum
)
from models.tensor_model import KronOperator
from utils.config import (
    COLLISION_TOLERANCE, SYMMETRIZE_TOLERANCE, LABEL_TOLERANCE, CLUSTER_ABSOLUTE_GAP, CLUSTER_RELATIVE_GAP
)
from utils.errors import InvalidArgument, SingularCoefficient
from . import get_odd_count, float_list
from .diffmat_service import trig_diff_matrix, parity_diff_matrix
from .eigen_service import jacobi_symmetric, hessenberg_qr, null_space
from .harmonic_service import spherical_grid, harmonic_on_grid, subspace_residual
from .node_service import equidistant_nodes, node_condition_residual, cot, prepare_node_set
from .tensor_service import lift_matrix, diag_coeff, prepare_kron_operator


logger = logging.getLogger(__name__)

SPIN_EXCLUSION = " (half-integer representations are excluded from L^2)"


def _check_theta_nodes(theta_nodes: NodeSet, tolerance: float = COLLISION_TOLERANCE) -> None:
    points = theta_nodes.points
    if np.any(points <= 0.0) or np.any(points >= np.pi) or np.any(np.sin(points) < tolerance):
        raise SingularCoefficient("theta nodes must avoid the poles 0 and pi where cot and csc^2 diverge")


def exact_harmonics(max_degree: int, m_phi: int) -> List[Tuple[int, int]]:
    """(n, m) pairs with n <= max_degree that the phi grid can resolve."""
    reach = (m_phi - 1) // 2
    return [(n, m) for n in range(max_degree + 1) for m in range(-min(n, reach), min(n, reach) + 1)]


def in_parity_space(n: int, m: int, n_theta: int) -> bool:
    """Whether P^m_n(cos theta) lies in the span the parity matrix differentiates exactly, for symmetric nodes."""
    if (n - n_theta) % 2:
        return False
    return n < n_theta or m % 2 == 1


def _theta_part(variant: L2Variant, theta_nodes: NodeSet,
                tolerance: float = COLLISION_TOLERANCE) -> Tuple[OperatorMatrix, np.ndarray]:
    cotangents = np.diag(cot(theta_nodes.points))
    if variant == L2Variant.eq30:
        d_theta = trig_diff_matrix(theta_nodes, tolerance)
        return d_theta, d_theta.entries @ d_theta.entries + cotangents @ d_theta.entries
    d_theta = parity_diff_matrix(theta_nodes, tolerance)
    correction = theta_nodes.count * d_theta.similarity.ratios()
    return d_theta, d_theta.entries @ d_theta.entries + cotangents @ d_theta.entries - correction


def _assemble(variant: L2Variant, theta_nodes: NodeSet, m_phi: int, exact_degree: int,
              symmetrize_tolerance: float, collision_tolerance: float) -> LSquaredOperator:
    n_theta = get_odd_count(theta_nodes.count, name='theta node count', reason=SPIN_EXCLUSION)
    m_phi = get_odd_count(m_phi, name='m_phi', reason=SPIN_EXCLUSION)
    _check_theta_nodes(theta_nodes, collision_tolerance)
    d_theta, theta_part = _theta_part(variant, theta_nodes, collision_tolerance)
    d_phi = trig_diff_matrix(equidistant_nodes(m_phi))
    grid = spherical_grid(theta_nodes, d_phi.nodes)
    theta_term = lift_matrix(theta_part, 0, grid, 'theta')
    phi_term = lift_matrix(d_phi.entries @ d_phi.entries, 1, grid, 'd_phi^2')
    inverse_sines = diag_coeff(lambda theta, phi: 1.0 / np.sin(theta) ** 2, grid, 'csc^2')
    matrix = KronOperator(
        -(theta_term.entries + phi_term.entries @ inverse_sines.entries), grid,
        theta_term.factors + phi_term.factors + inverse_sines.factors
    )
    residual = node_condition_residual(
        theta_nodes, lambda theta: float(cot(theta)), tolerance=collision_tolerance
    ).max_abs
    logger.debug("assembled %s L^2 with N=%d M=%d node residual %.3e", variant.name, n_theta, m_phi, residual)
    return LSquaredOperator(
        matrix=matrix,
        variant=variant,
        theta_nodes=theta_nodes,
        phi_nodes=d_phi.nodes,
        exact_count=len(exact_harmonics(exact_degree, m_phi)),
        theta_operator=d_theta,
        theta_part=theta_part,
        node_residual=residual,
        symmetrizable=variant == L2Variant.eq30 and residual < symmetrize_tolerance
    )


def assemble_l2(theta_nodes: NodeSet, m_phi: int,
                symmetrize_tolerance: float = SYMMETRIZE_TOLERANCE,
                collision_tolerance: float = COLLISION_TOLERANCE) -> LSquaredOperator:
    if m_phi < theta_nodes.count:
        logger.warning("M=%d < N=%d: the exact part of the spectrum is limited by the phi grid",
                       m_phi, theta_nodes.count)
    return _assemble(L2Variant.eq30, theta_nodes, m_phi, (theta_nodes.count - 1) // 2, symmetrize_tolerance,
                     collision_tolerance)


def assemble_l2_parity(theta_nodes: NodeSet, m_phi: int,
                       symmetrize_tolerance: float = SYMMETRIZE_TOLERANCE,
                       collision_tolerance: float = COLLISION_TOLERANCE) -> LSquaredOperator:
    if m_phi != 2 * theta_nodes.count + 1:
        logger.warning("parity L^2 claims its exact count for M = 2N+1, got N=%d M=%d", theta_nodes.count, m_phi)
    return _assemble(L2Variant.eq35, theta_nodes, m_phi, theta_nodes.count, symmetrize_tolerance, collision_tolerance)


def assemble(variant: L2Variant, theta_nodes: NodeSet, m_phi: int,
             symmetrize_tolerance: float = SYMMETRIZE_TOLERANCE,
             collision_tolerance: float = COLLISION_TOLERANCE) -> LSquaredOperator:
    if variant == L2Variant.eq30:
        return assemble_l2(theta_nodes, m_phi, symmetrize_tolerance, collision_tolerance)
    return assemble_l2_parity(theta_nodes, m_phi, symmetrize_tolerance, collision_tolerance)


def _block(theta_part: np.ndarray, theta_operator: OperatorMatrix, m: float, symmetrizable: bool) -> ThetaBlock:
    inverse_sines = np.diag(1.0 / np.sin(theta_operator.nodes.points) ** 2)
    matrix = -theta_part + m * m * inverse_sines
    if not symmetrizable:
        return ThetaBlock(int(m), matrix)
    kernel = theta_operator.kernel
    symmetric = kernel.T @ kernel + m * m * inverse_sines
    return ThetaBlock(int(m), matrix, 0.5 * (symmetric + symmetric.T), theta_operator.similarity.diagonal())


def theta_block(theta_nodes: NodeSet, m: int, variant: L2Variant = L2Variant.eq30,
                symmetrize_tolerance: float = SYMMETRIZE_TOLERANCE,
                collision_tolerance: float = COLLISION_TOLERANCE) -> ThetaBlock:
    """
    The N x N operator left after replacing d^2/dphi^2 by -m^2.
    On nodes solving the cot-weighted node condition the eq30 block also carries its
    symmetric positive semidefinite form and the diagonal similarity relating the two.
    """
    _check_theta_nodes(theta_nodes, collision_tolerance)
    theta_operator, theta_part = _theta_part(variant, theta_nodes, collision_tolerance)
    symmetrizable = False
    if variant == L2Variant.eq30:
        residual = node_condition_residual(
            theta_nodes, lambda theta: float(cot(theta)), tolerance=collision_tolerance
        ).max_abs
        symmetrizable = residual < symmetrize_tolerance
    return _block(theta_part, theta_operator, m, symmetrizable)


def phi_orders(m_phi: int) -> np.ndarray:
    return np.arange(m_phi) - (m_phi - 1) // 2


def theta_blocks(op: LSquaredOperator) -> List[ThetaBlock]:
    return [_block(op.theta_part, op.theta_operator, m, op.symmetrizable) for m in phi_orders(op.m_phi)]


def _sorted_order(values: np.ndarray) -> np.ndarray:
    return np.lexsort((values.imag, values.real))


def cluster_values(values: Sequence[complex]) -> List[np.ndarray]:
    """Index groups of sorted values whose consecutive gaps stay below the clustering threshold."""
    values = np.asarray(values, dtype=complex)
    if not values.size:
        return []
    gap = max(CLUSTER_ABSOLUTE_GAP, CLUSTER_RELATIVE_GAP * float(np.max(np.abs(values))))
    order = _sorted_order(values)
    groups, current = [], [order[0]]
    for previous, index in zip(order[:-1], order[1:]):
        if abs(values[index] - values[previous]) <= gap:
            current.append(index)
        else:
            groups.append(np.array(current))
            current = [index]
    groups.append(np.array(current))
    return groups


def _nonsymmetric_eigenpairs(matrix: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    values = hessenberg_qr(matrix).values
    values = values[_sorted_order(values)]
    vectors = np.zeros(matrix.shape, dtype=complex)
    start = 0
    for group in cluster_values(values):
        shift = np.mean(values[group])
        vectors[:, start:start + group.size] = null_space(matrix - shift * np.eye(matrix.shape[0]), group.size)
        start += group.size
    return values, vectors


def solve_block(block: ThetaBlock, phi_nodes: NodeSet) -> Tuple[np.ndarray, np.ndarray]:
    """Eigenvalues of one theta block and the matching eigenvectors lifted onto the (theta, phi) grid."""
    if block.symmetrizable:
        decomposition = jacobi_symmetric(block.symmetric)
        values = decomposition.values
        theta_vectors = block.similarity[:, None] * decomposition.vectors
    else:
        values, theta_vectors = _nonsymmetric_eigenpairs(block.matrix)
    phase = np.exp(1j * block.m * phi_nodes.points)
    logger.debug("solved theta block m=%d", block.m)
    return values, np.kron(phase[:, None], theta_vectors)


def _label(value: float, first_index: int, op: LSquaredOperator, tolerance: float) -> Optional[int]:
    if first_index >= op.exact_count:
        return None
    for n in range(op.max_degree + 1):
        target = n * (n + 1)
        if abs(value - target) <= tolerance * max(1.0, target):
            return n
    return None


def _matches(op: LSquaredOperator, n: int, vectors: np.ndarray) -> List[HarmonicMatch]:
    reach = (op.m_phi - 1) // 2
    matches = []
    for m in range(-min(n, reach), min(n, reach) + 1):
        sample = harmonic_on_grid(n, m, op.matrix.grid)
        if sample.degenerate:
            logger.debug("skipping harmonic n=%d m=%d, it vanishes on the grid", n, m)
            continue
        matches.append(HarmonicMatch(n, m, subspace_residual(vectors, [sample])))
    return matches


def labeled_spectrum(op: LSquaredOperator, tolerance: float = LABEL_TOLERANCE,
                     executor: Optional[Executor] = None) -> LabeledSpectrum:
    if op.variant == L2Variant.eq30:
        method = SolveMethod.theta_blocks
        blocks = theta_blocks(op)
        mapper = executor.map if executor is not None else map
        solved = list(mapper(lambda block: solve_block(block, op.phi_nodes), blocks))
        values = np.concatenate([block_values for block_values, _ in solved]).astype(complex)
        vectors = np.concatenate([block_vectors for _, block_vectors in solved], axis=1)
        order = _sorted_order(values)
        values, vectors = values[order], vectors[:, order]
    else:
        method = SolveMethod.dense_qr
        values, vectors = _nonsymmetric_eigenpairs(op.matrix.entries)

    clusters, grouped, report = [], [], []
    for group in cluster_values(values):
        members = values[group]
        value = float(np.mean(members.real))
        n_label = _label(value, int(group[0]), op, tolerance)
        residual = None
        if n_label is not None:
            matches = _matches(op, n_label, vectors[:, group])
            report.extend(matches)
            if matches:
                residual = max(match.residual for match in matches)
        clusters.append(SpectralCluster(value, int(group.size), float(np.max(np.abs(members.imag))), n_label, residual))
        grouped.append(vectors[:, group])
    return LabeledSpectrum(values, tuple(clusters), tuple(grouped), tuple(report), op.variant, op.exact_count, method)


def harmonic_checks(op: LSquaredOperator) -> List[HarmonicMatch]:
    """Direct residual |L^2 h - n(n+1) h| / |h| of every harmonic the operator could reproduce."""
    checks = []
    for n, m in exact_harmonics(op.max_degree, op.m_phi):
        sample = harmonic_on_grid(n, m, op.matrix.grid)
        if sample.degenerate:
            continue
        image = op.matrix.entries @ sample.values
        checks.append(HarmonicMatch(n, m, float(np.linalg.norm(image - n * (n + 1) * sample.values) / sample.norm)))
    return checks


def spectrum_rows(spectrum: LabeledSpectrum) -> List[list]:
    rows = []
    for cluster in spectrum.clusters:
        for _ in range(cluster.multiplicity):
            index = len(rows)
            rows.append([
                index + 1,
                float(spectrum.values[index].real),
                cluster.multiplicity,
                '' if cluster.n_label is None else cluster.n_label,
                '' if cluster.residual is None else cluster.residual
            ])
    return rows


def prepare_l2_operator(op: LSquaredOperator) -> dict:
    return {
        "variant": op.variant.name,
        "n_theta": op.n_theta,
        "m_phi": op.m_phi,
        "exact_count": op.exact_count,
        "node_residual": op.node_residual,
        "symmetrizable": op.symmetrizable,
        "theta_nodes": prepare_node_set(op.theta_nodes),
        "phi_nodes": prepare_node_set(op.phi_nodes),
        "matrix": prepare_kron_operator(op.matrix)
    }


def prepare_spectrum(spectrum: LabeledSpectrum) -> dict:
    return {
        "variant": spectrum.variant.name,
        "method": spectrum.method.name,
        "exact_count": spectrum.exact_count,
        "max_imag": spectrum.max_imag,
        "values": float_list(spectrum.values.real),
        "clusters": [
            {
                "value": cluster.value,
                "imag": cluster.imag,
                "multiplicity": cluster.multiplicity,
                "n_label": cluster.n_label,
                "residual": cluster.residual
            } for cluster in spectrum.clusters
        ],
        "match_report": [{"n": match.n, "m": match.m, "residual": match.residual} for match in spectrum.match_report]
    }
