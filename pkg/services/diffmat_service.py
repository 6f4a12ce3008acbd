import logging
from typing import Tuple

import numpy as np

from models.node_model import NodeSet
from models.operator_model import OperatorMatrix, Exactness, ExactnessKind, Similarity
from utils.config import COLLISION_TOLERANCE
from utils.errors import InvalidArgument, DegenerateNodes
from . import check_distinct, pairwise_half_differences, off_diagonal, complex_pairs, float_list
from .node_service import prepare_node_set


logger = logging.getLogger(__name__)


def _log_products(factors: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Row products over l != i in log-magnitude and sign form."""
    factors = np.array(factors, copy=True)
    np.fill_diagonal(factors, 1.0)
    return np.sum(np.log(np.abs(factors)), axis=1), np.prod(np.sign(factors), axis=1)


def _similar(kernel: np.ndarray, similarity: Similarity) -> np.ndarray:
    return similarity.ratios() * kernel


def _with_diagonal(entries: np.ndarray, diagonal: np.ndarray) -> np.ndarray:
    entries = off_diagonal(entries)
    np.fill_diagonal(entries, diagonal)
    return entries


def poly_diff_matrix(nodes: NodeSet, tolerance: float = COLLISION_TOLERANCE) -> OperatorMatrix:
    points = nodes.points
    check_distinct(points, tolerance)
    differences = points[:, None] - points[None, :]
    np.fill_diagonal(differences, 1.0)
    inverse = off_diagonal(1.0 / differences)
    kernel = _with_diagonal(inverse, np.sum(inverse, axis=1))
    similarity = Similarity(*_log_products(differences))
    entries = _similar(kernel, similarity)
    return OperatorMatrix(entries, nodes, Exactness(ExactnessKind.polynomial, nodes.count - 1), kernel, similarity)


def trig_exactness(nodes: NodeSet) -> Exactness:
    if nodes.count % 2:
        return Exactness(ExactnessKind.trigonometric, (nodes.count - 1) // 2)
    degree = nodes.count // 2 - 1
    has_zero, has_pi = nodes.contains(0.0), nodes.contains(np.pi)
    if has_zero and has_pi:
        return Exactness(ExactnessKind.half_integer, degree)
    if has_zero:
        return Exactness(ExactnessKind.sine_half, degree)
    if has_pi:
        return Exactness(ExactnessKind.cosine_half, degree)
    raise InvalidArgument("an even number of periodic nodes must include 0 or pi")


def trig_diff_matrix(nodes: NodeSet, tolerance: float = COLLISION_TOLERANCE) -> OperatorMatrix:
    points = nodes.points
    if np.any(points <= -np.pi) or np.any(points > np.pi):
        raise InvalidArgument("periodic nodes must lie in (-pi, pi]")
    check_distinct(points, tolerance)
    exactness = trig_exactness(nodes)
    half = pairwise_half_differences(points)
    sines = np.sin(half)
    cotangents = off_diagonal(np.cos(half) / sines)
    kernel = _with_diagonal(off_diagonal(0.5 / sines), 0.5 * np.sum(cotangents, axis=1))
    similarity = Similarity(*_log_products(sines))
    entries = _similar(kernel, similarity)
    return OperatorMatrix(entries, nodes, exactness, kernel, similarity)


def parity_diff_matrix(nodes: NodeSet, tolerance: float = COLLISION_TOLERANCE) -> OperatorMatrix:
    points = nodes.points
    if np.any(points <= 0.0) or np.any(points >= np.pi):
        raise InvalidArgument("parity nodes must lie strictly inside (0, pi)")
    check_distinct(points, tolerance)
    differences = points[:, None] - points[None, :]
    np.fill_diagonal(differences, np.pi / 2)
    sines = np.sin(differences)
    if np.any(np.abs(sines) < tolerance):
        raise DegenerateNodes("two nodes differ by a multiple of pi")
    cotangents = off_diagonal(np.cos(differences) / sines)
    kernel = _with_diagonal(cotangents, np.sum(cotangents, axis=1))
    similarity = Similarity(*_log_products(sines))
    entries = _similar(kernel, similarity)
    return OperatorMatrix(entries, nodes, Exactness(ExactnessKind.parity, nodes.count), kernel, similarity)


def matrix_power(op: OperatorMatrix, k: int) -> OperatorMatrix:
    if isinstance(k, bool) or not isinstance(k, (int, np.integer)) or k < 0:
        raise InvalidArgument("power must be a nonnegative integer")
    kernel = None if op.kernel is None else np.linalg.matrix_power(op.kernel, k)
    return OperatorMatrix(
        np.linalg.matrix_power(op.entries, k), op.nodes, op.exactness, kernel, op.similarity, op.order * int(k)
    )


def build_diff_matrix(kind: str, nodes: NodeSet, tolerance: float = COLLISION_TOLERANCE) -> OperatorMatrix:
    builders = {'poly': poly_diff_matrix, 'trig': trig_diff_matrix, 'parity': parity_diff_matrix}
    if kind not in builders:
        raise InvalidArgument(f"unknown differentiation matrix kind {kind!r}")
    logger.debug("building %s differentiation matrix on %d %s nodes", kind, nodes.count, nodes.kind.name)
    op = builders[kind](nodes, tolerance)
    logger.debug("%s matrix is exact on %s", kind, op.exactness.describe())
    return op


def prepare_operator(op: OperatorMatrix) -> dict:
    similarity = None
    if op.similarity is not None:
        similarity = {
            "log_magnitude": float_list(op.similarity.log_magnitude),
            "sign": float_list(op.similarity.sign)
        }
    return {
        "nodes": prepare_node_set(op.nodes),
        "exactness": {"kind": op.exactness.kind.name, "degree": op.exactness.degree, "order": op.order},
        "similarity": similarity,
        "entries": complex_pairs(op.entries)
    }
