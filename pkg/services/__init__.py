from typing import Iterable, List

import numpy as np

from utils.config import COLLISION_TOLERANCE
from utils.errors import InvalidArgument, DegenerateNodes


def get_count(value, minimum: int = 1, name: str = 'n') -> int:
    if isinstance(value, bool) or not isinstance(value, (int, np.integer)):
        raise InvalidArgument(f"{name} must be an integer")
    if value < minimum:
        raise InvalidArgument(f"{name} must be >= {minimum}")
    return int(value)


def get_odd_count(value, minimum: int = 1, name: str = 'n', reason: str = '') -> int:
    value = get_count(value, minimum, name)
    if value % 2 == 0:
        raise InvalidArgument(f"{name} must be odd{reason}")
    return value


def check_distinct(points: np.ndarray, tolerance: float = COLLISION_TOLERANCE) -> None:
    points = np.asarray(points, dtype=float)
    if points.size < 2:
        return
    gaps = np.abs(points[:, None] - points[None, :])
    np.fill_diagonal(gaps, np.inf)
    first, second = sorted(np.unravel_index(np.argmin(gaps), gaps.shape))
    if gaps[first, second] < tolerance:
        raise DegenerateNodes(f"nodes {first + 1} and {second + 1} are closer than {tolerance:g}")


def off_diagonal(matrix: np.ndarray) -> np.ndarray:
    result = np.array(matrix, copy=True)
    np.fill_diagonal(result, 0)
    return result


def off_diagonal_mass(matrix: np.ndarray) -> float:
    """Frobenius norm of the off-diagonal entries."""
    return float(np.linalg.norm(off_diagonal(matrix)))


def pairwise_half_differences(points: np.ndarray) -> np.ndarray:
    """(x_i - x_j) / 2 with ones on the diagonal, safe to pass to sin/tan."""
    half = (points[:, None] - points[None, :]) / 2.0
    np.fill_diagonal(half, 1.0)
    return half


def float_list(values: Iterable) -> List[float]:
    return [float(value) for value in np.asarray(values).ravel()]


def complex_pairs(matrix: np.ndarray) -> list:
    matrix = np.asarray(matrix)
    if matrix.ndim == 1:
        return [[float(value.real), float(value.imag)] for value in matrix.astype(complex)]
    return [complex_pairs(row) for row in matrix]
