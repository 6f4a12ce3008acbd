from typing import Callable, Sequence, Tuple

import numpy as np

from models.node_model import NodeSet
from models.operator_model import OperatorMatrix
from models.tensor_model import TensorGrid, KronFactor, KronOperator
from utils.errors import InvalidArgument, EvaluationError
from . import complex_pairs
from .node_service import prepare_node_set


def tensor_grid(*axes: NodeSet) -> TensorGrid:
    if not axes:
        raise InvalidArgument("a tensor grid needs at least one axis")
    return TensorGrid(axes)


def _strides(grid: TensorGrid) -> np.ndarray:
    return np.concatenate(([1], np.cumprod(grid.dims)[:-1])).astype(int)


def ravel(multi_index: Sequence[int], grid: TensorGrid) -> int:
    """1-based multi-index to 1-based flat index, first axis fastest."""
    if len(multi_index) != len(grid.dims):
        raise InvalidArgument(f"expected {len(grid.dims)} indices, got {len(multi_index)}")
    for axis, (index, size) in enumerate(zip(multi_index, grid.dims)):
        if not 1 <= index <= size:
            raise InvalidArgument(f"index {index} on axis {axis} is outside 1..{size}")
    return 1 + int(sum((index - 1) * stride for index, stride in zip(multi_index, _strides(grid))))


def unravel(r: int, grid: TensorGrid) -> Tuple[int, ...]:
    if not 1 <= r <= grid.total:
        raise InvalidArgument(f"flat index {r} is outside 1..{grid.total}")
    remainder, result = r - 1, []
    for size in grid.dims:
        remainder, index = divmod(remainder, size)
        result.append(index + 1)
    return tuple(result)


def kron_product(a, b) -> np.ndarray:
    a, b = np.asarray(a), np.asarray(b)
    if a.ndim != 2 or b.ndim != 2 or a.shape[0] != a.shape[1] or b.shape[0] != b.shape[1]:
        raise InvalidArgument("kronecker factors must be square matrices")
    return np.kron(a, b)


def lift_matrix(matrix, axis: int, grid: TensorGrid, label: str = 'matrix') -> KronOperator:
    matrix = np.asarray(matrix)
    if not 0 <= axis < len(grid.dims):
        raise InvalidArgument(f"axis {axis} does not exist on a {len(grid.dims)}-axis grid")
    if matrix.shape != (grid.dims[axis], grid.dims[axis]):
        raise InvalidArgument(f"matrix of shape {matrix.shape} does not fit axis {axis} of size {grid.dims[axis]}")
    entries = np.eye(1, dtype=matrix.dtype)
    for current in reversed(range(len(grid.dims))):
        entries = np.kron(entries, matrix if current == axis else np.eye(grid.dims[current]))
    return KronOperator(entries, grid, (KronFactor(axis, label),))


def lift(op: OperatorMatrix, axis: int, grid: TensorGrid) -> KronOperator:
    return lift_matrix(op.entries, axis, grid, f"{op.exactness.kind.name}^{op.order}")


def grid_coordinates(grid: TensorGrid) -> np.ndarray:
    """Rows of axis coordinates in raveled order."""
    mesh = np.meshgrid(*[axis.points for axis in reversed(grid.axes)], indexing='ij')
    return np.stack([coordinates.ravel() for coordinates in reversed(mesh)], axis=1)


def diag_coeff(f: Callable[..., float], grid: TensorGrid, label: str = 'coefficient') -> KronOperator:
    coordinates = grid_coordinates(grid)
    values = []
    for r, point in enumerate(coordinates):
        value = f(*point)
        if not np.isfinite(value):
            raise EvaluationError(f"coefficient is not finite at node {unravel(r + 1, grid)}")
        values.append(value)
    return KronOperator(np.diag(np.asarray(values)), grid, (KronFactor(-1, label),))


def variable_matrix(grid: TensorGrid, axis: int) -> KronOperator:
    if not 0 <= axis < len(grid.dims):
        raise InvalidArgument(f"axis {axis} does not exist on a {len(grid.dims)}-axis grid")
    return lift_matrix(np.diag(grid.axes[axis].points), axis, grid, 'variable')


def prepare_kron_operator(op: KronOperator) -> dict:
    return {
        "grid": [prepare_node_set(axis) for axis in op.grid.axes],
        "factors": [{"axis": factor.axis, "label": factor.label} for factor in op.factors],
        "entries": complex_pairs(op.entries)
    }
