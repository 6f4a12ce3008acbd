import logging
from typing import Callable

import numpy as np

from models.node_model import NodeSet, NodeKind, NodeConditionResidual, ConditionKernel
from utils.config import COLLISION_TOLERANCE, NODE_TOLERANCE, NODE_MAX_ITERATIONS
from utils.errors import InvalidArgument, EvaluationError, ConvergenceFailure
from . import get_count, check_distinct, pairwise_half_differences, off_diagonal, float_list


logger = logging.getLogger(__name__)

ARMIJO_FRACTION = 1e-4
MAX_BACKTRACKS = 60


def cot(x):
    return np.cos(x) / np.sin(x)


def check_kind_range(points: np.ndarray, kind: NodeKind) -> None:
    if kind == NodeKind.periodic and (np.any(points <= -np.pi) or np.any(points > np.pi)):
        raise InvalidArgument("periodic nodes must lie in (-pi, pi]")
    if kind == NodeKind.open and (np.any(points <= 0.0) or np.any(points >= np.pi)):
        raise InvalidArgument("open nodes must lie strictly inside (0, pi)")


def explicit_nodes(points, kind: NodeKind = NodeKind.general,
                   tolerance: float = COLLISION_TOLERANCE) -> NodeSet:
    points = np.sort(np.asarray(points, dtype=float).ravel())
    if not points.size:
        raise InvalidArgument("at least one node is required")
    if not np.all(np.isfinite(points)):
        raise InvalidArgument("nodes must be finite")
    check_kind_range(points, kind)
    check_distinct(points, tolerance)
    return NodeSet(points, kind)


def equidistant_nodes(n: int) -> NodeSet:
    n = get_count(n)
    j = np.arange(1, n + 1)
    # integer numerator keeps 0 and pi exact
    return NodeSet(np.pi * ((2 * j - n) / n), NodeKind.periodic)


def equidistant_open_nodes(n: int) -> NodeSet:
    n = get_count(n)
    return NodeSet(np.pi * np.arange(1, n + 1) / (n + 1), NodeKind.open)


def node_condition_residual(
        nodes: NodeSet, log_derivative: Callable[[float], float],
        kernel: ConditionKernel = ConditionKernel.trigonometric,
        tolerance: float = COLLISION_TOLERANCE
) -> NodeConditionResidual:
    points = nodes.points
    check_distinct(points, tolerance)
    if kernel == ConditionKernel.trigonometric:
        pair_sums = np.sum(off_diagonal(cot(pairwise_half_differences(points))), axis=1)
    else:
        differences = points[:, None] - points[None, :]
        np.fill_diagonal(differences, 1.0)
        pair_sums = np.sum(off_diagonal(1.0 / differences), axis=1)
    derivative = np.empty_like(points)
    for index, point in enumerate(points):
        derivative[index] = log_derivative(float(point))
        if not np.isfinite(derivative[index]):
            raise EvaluationError(f"log-derivative is not finite at node {index + 1} ({point!r})")
    return NodeConditionResidual(pair_sums + derivative, kernel)


def _feasible(z: np.ndarray) -> bool:
    return bool(np.all(z > 0.0) and np.all(z < np.pi) and np.all(np.diff(z) > 0.0))


def log_objective(z) -> float:
    """Concave function whose stationary points are exactly the cot-weighted node condition."""
    z = np.asarray(z, dtype=float)
    if not _feasible(z):
        return -np.inf
    upper = np.triu_indices(z.size, 1)
    spread = (z[None, :] - z[:, None])[upper] / 2.0
    return float(0.5 * np.sum(np.log(np.sin(z))) + np.sum(np.log(np.sin(spread))))


def objective_gradient(z) -> np.ndarray:
    z = np.asarray(z, dtype=float)
    pair_sums = np.sum(off_diagonal(cot(pairwise_half_differences(z))), axis=1)
    return 0.5 * (cot(z) + pair_sums)


def objective_hessian(z) -> np.ndarray:
    z = np.asarray(z, dtype=float)
    coupling = off_diagonal(0.25 / np.sin(pairwise_half_differences(z)) ** 2)
    hessian = coupling.copy()
    np.fill_diagonal(hessian, -0.5 / np.sin(z) ** 2 - np.sum(coupling, axis=1))
    return hessian


def _symmetrized(z: np.ndarray) -> np.ndarray:
    return 0.5 * (z + (np.pi - z[::-1]))


def _line_search(z: np.ndarray, step: np.ndarray, gradient: np.ndarray) -> np.ndarray:
    current = log_objective(z)
    slope = float(gradient @ step)
    gradient_size = np.max(np.abs(gradient))
    fraction = 1.0
    for _ in range(MAX_BACKTRACKS):
        candidate = z + fraction * step
        if _feasible(candidate):
            if log_objective(candidate) >= current + ARMIJO_FRACTION * fraction * slope:
                return candidate
            if np.max(np.abs(objective_gradient(candidate))) < gradient_size:
                return candidate
        fraction *= 0.5
    return None


def solve_theta_nodes(n: int, tolerance: float = NODE_TOLERANCE,
                      max_iterations: int = NODE_MAX_ITERATIONS) -> NodeSet:
    n = get_count(n)
    if not tolerance > 0:
        raise InvalidArgument("tolerance must be positive")
    z = np.array(equidistant_open_nodes(n).points)
    best = np.inf
    for iteration in range(max_iterations + 1):
        gradient = objective_gradient(z)
        worst = 2.0 * float(np.max(np.abs(gradient)))  # the node-condition residual is twice the gradient
        best = min(best, worst)
        logger.debug("theta nodes n=%d iteration=%d residual=%.3e", n, iteration, worst)
        if worst < tolerance:
            return NodeSet(z, NodeKind.open)
        if iteration == max_iterations:
            break
        step = np.linalg.solve(objective_hessian(z), -gradient)
        candidate = _line_search(z, step, gradient)
        if candidate is None:
            raise ConvergenceFailure(f"line search stalled for n={n}", best, iteration)
        z = _symmetrized(candidate)
    raise ConvergenceFailure(f"theta nodes did not converge for n={n}", best, max_iterations)


def prepare_node_set(nodes: NodeSet) -> dict:
    return {"kind": nodes.kind.name, "points": float_list(nodes.points)}


def prepare_residual(residual: NodeConditionResidual) -> dict:
    return {
        "kernel": residual.kernel.name,
        "residuals": float_list(residual.residuals),
        "max_abs": residual.max_abs
    }
