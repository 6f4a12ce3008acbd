import logging

import numpy as np

from models.eigen_model import EigenDecomposition
from utils.config import (
    JACOBI_MAX_SWEEPS, JACOBI_OFF_TOLERANCE, SYMMETRY_TOLERANCE, QR_MAX_ITERATIONS, QR_EXCEPTIONAL_PERIOD
)
from utils.errors import InvalidArgument, ConvergenceFailure
from . import off_diagonal_mass


logger = logging.getLogger(__name__)

EPSILON = np.finfo(float).eps

PADE_ORDERS = (3, 5, 7, 9, 13)
PADE_THETAS = (0.01495585217958292, 0.2539398330063230, 0.9504178996162932, 2.097847961257068, 5.371920351148152)
PADE_COEFFICIENTS = {
    3: (120, 60, 12, 1),
    5: (30240, 15120, 3360, 420, 30, 1),
    7: (17297280, 8648640, 1995840, 277200, 25200, 1512, 56, 1),
    9: (17643225600, 8821612800, 2075673600, 302702400, 30270240, 2162160, 110880, 3960, 90, 1),
    13: (64764752532480000, 32382376266240000, 7771770303897600, 1187353796428800, 129060195264000,
         10559470521600, 670442572800, 33522128640, 1323241920, 40840800, 960960, 16380, 182, 1)
}


def _square(a, dtype=None) -> np.ndarray:
    a = np.array(a, dtype=dtype, copy=True)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise InvalidArgument("a square matrix is required")
    return a


def _rotate(a: np.ndarray, v: np.ndarray, p: int, q: int) -> None:
    theta = (a[q, q] - a[p, p]) / (2.0 * a[p, q])
    t = (1.0 if theta >= 0 else -1.0) / (abs(theta) + np.hypot(1.0, theta))
    c = 1.0 / np.hypot(1.0, t)
    s = t * c
    column_p, column_q = a[:, p].copy(), a[:, q].copy()
    a[:, p], a[:, q] = c * column_p - s * column_q, s * column_p + c * column_q
    row_p, row_q = a[p, :].copy(), a[q, :].copy()
    a[p, :], a[q, :] = c * row_p - s * row_q, s * row_p + c * row_q
    a[p, q] = a[q, p] = 0.0
    column_p, column_q = v[:, p].copy(), v[:, q].copy()
    v[:, p], v[:, q] = c * column_p - s * column_q, s * column_p + c * column_q


def _eigen_residual(a: np.ndarray, values: np.ndarray, vectors: np.ndarray) -> float:
    scale = np.linalg.norm(a)
    if scale == 0 or not vectors.size:
        return 0.0
    return float(np.max(np.linalg.norm(a @ vectors - vectors * values, axis=0)) / scale)


def jacobi_symmetric(a, max_sweeps: int = JACOBI_MAX_SWEEPS,
                     tolerance: float = JACOBI_OFF_TOLERANCE) -> EigenDecomposition:
    """
    Cyclic-by-row Jacobi with a threshold in the first three sweeps.
    Eigenvalues come back ascending with orthonormal eigenvector columns.
    """
    a = _square(a)
    if np.iscomplexobj(a):
        if np.any(a.imag != 0):
            raise InvalidArgument("jacobi solver needs a real matrix")
        a = a.real
    a = a.astype(float)
    if a.size and np.max(np.abs(a - a.T)) > SYMMETRY_TOLERANCE * max(1.0, np.max(np.abs(a))):
        raise InvalidArgument("matrix is not symmetric")
    original = 0.5 * (a + a.T)
    a = original.copy()
    n = a.shape[0]
    v = np.eye(n)
    norm = np.linalg.norm(a)
    sweep = 0
    while off_diagonal_mass(a) > tolerance * norm:
        if sweep == max_sweeps:
            raise ConvergenceFailure("jacobi sweeps exhausted", off_diagonal_mass(a) / norm, sweep)
        sweep += 1
        threshold = 0.2 * off_diagonal_mass(a) / n ** 2 if sweep < 4 else 0.0
        for p in range(n - 1):
            for q in range(p + 1, n):
                g = 100.0 * abs(a[p, q])
                if sweep > 4 and abs(a[p, p]) + g == abs(a[p, p]) and abs(a[q, q]) + g == abs(a[q, q]):
                    a[p, q] = a[q, p] = 0.0
                elif a[p, q] != 0.0 and abs(a[p, q]) > threshold:
                    _rotate(a, v, p, q)
        logger.debug("jacobi sweep=%d off=%.3e", sweep, off_diagonal_mass(a))
    values = np.diag(a).copy()
    order = np.argsort(values, kind='stable')
    values, v = values[order], v[:, order]
    return EigenDecomposition(values, v, sweep, _eigen_residual(original, values, v))


def hessenberg(a) -> np.ndarray:
    """Upper Hessenberg form unitarily similar to a, by Householder reflections."""
    h = _square(a, complex)
    n = h.shape[0]
    for k in range(n - 2):
        x = h[k + 1:, k].copy()
        alpha = np.linalg.norm(x)
        if alpha == 0.0:
            continue
        phase = x[0] / abs(x[0]) if x[0] != 0 else 1.0
        x[0] += phase * alpha
        x /= np.linalg.norm(x)
        h[k + 1:, :] -= 2.0 * np.outer(x, x.conj() @ h[k + 1:, :])
        h[:, k + 1:] -= 2.0 * np.outer(h[:, k + 1:] @ x, x.conj())
        h[k + 2:, k] = 0.0
    return h


def _wilkinson_shift(corner: np.ndarray) -> complex:
    a, b, c, d = corner[0, 0], corner[0, 1], corner[1, 0], corner[1, 1]
    middle = 0.5 * (a + d)
    root = np.sqrt(complex(0.25 * (a - d) ** 2 + b * c))
    first, second = middle + root, middle - root
    return first if abs(first - d) <= abs(second - d) else second


def _qr_step(window: np.ndarray, shift: complex) -> None:
    size = window.shape[0]
    identity = np.eye(size)
    window -= shift * identity
    rotations = []
    for k in range(size - 1):
        top, bottom = window[k, k], window[k + 1, k]
        radius = np.hypot(abs(top), abs(bottom))
        c, s = (top / radius, bottom / radius) if radius else (1.0, 0.0)
        rotation = np.array([[np.conj(c), np.conj(s)], [-s, c]])
        window[k:k + 2, k:] = rotation @ window[k:k + 2, k:]
        rotations.append(rotation)
    for k, rotation in enumerate(rotations):
        window[:k + 2, k:k + 2] = window[:k + 2, k:k + 2] @ rotation.conj().T
    window += shift * identity


def _negligible(h: np.ndarray, k: int, scale: float) -> bool:
    reference = abs(h[k, k]) + abs(h[k - 1, k - 1])
    return abs(h[k, k - 1]) <= EPSILON * (reference if reference else scale)


def hessenberg_qr(a, max_iterations: int = QR_MAX_ITERATIONS) -> EigenDecomposition:
    """Eigenvalues only: Hessenberg reduction followed by single-shift complex QR with deflation."""
    h = hessenberg(a)
    n = h.shape[0]
    scale = np.linalg.norm(h)
    total = stalled = 0
    high = n - 1
    while high > 0:
        low = high
        while low > 0 and not _negligible(h, low, scale):
            low -= 1
        if low > 0:
            h[low, low - 1] = 0.0
        if low == high:
            high -= 1
            stalled = 0
            continue
        if stalled == max_iterations:
            raise ConvergenceFailure(
                "qr iteration did not deflate", abs(h[high, high - 1]), total, index=high + 1
            )
        stalled += 1
        total += 1
        if stalled % QR_EXCEPTIONAL_PERIOD == 0:
            shift = h[high, high] + 0.75 * abs(h[high, high - 1])
        else:
            shift = _wilkinson_shift(h[high - 1:high + 1, high - 1:high + 1])
        _qr_step(h[low:high + 1, low:high + 1], shift)
    logger.debug("hessenberg qr n=%d iterations=%d", n, total)
    return EigenDecomposition(np.diag(h).copy(), None, total, 0.0)


def _pade(a: np.ndarray, order: int) -> np.ndarray:
    c = PADE_COEFFICIENTS[order]
    identity = np.eye(a.shape[0], dtype=a.dtype)
    a2 = a @ a
    if order == 13:
        a4 = a2 @ a2
        a6 = a2 @ a4
        u = a @ (a6 @ (c[13] * a6 + c[11] * a4 + c[9] * a2) + c[7] * a6 + c[5] * a4 + c[3] * a2 + c[1] * identity)
        v = a6 @ (c[12] * a6 + c[10] * a4 + c[8] * a2) + c[6] * a6 + c[4] * a4 + c[2] * a2 + c[0] * identity
    else:
        powers = [identity, a2]
        for _ in range(2, order // 2 + 1):
            powers.append(powers[-1] @ a2)
        u = a @ sum(c[j] * powers[j // 2] for j in range(order, 0, -2))
        v = sum(c[j] * powers[j // 2] for j in range(order - 1, -1, -2))
    return np.linalg.solve(v - u, v + u)


def matrix_exponential(a) -> np.ndarray:
    """Scaling and squaring around a diagonal Pade approximant of order 3 to 13."""
    a = _square(a)
    a = a.astype(complex if np.iscomplexobj(a) else float)
    if not a.size:
        return a
    norm = np.linalg.norm(a, 1)
    for order, theta in zip(PADE_ORDERS, PADE_THETAS):
        if norm <= theta:
            return _pade(a, order)
    mantissa, squarings = np.frexp(norm / PADE_THETAS[-1])
    squarings = int(squarings) - int(mantissa == 0.5)
    result = _pade(a / 2.0 ** squarings, 13)
    for _ in range(squarings):
        result = result @ result
    return result


def null_space(a, dimension: int) -> np.ndarray:
    """Orthonormal columns along the `dimension` smallest singular directions of a."""
    a = _square(a)
    if not 0 <= dimension <= a.shape[0]:
        raise InvalidArgument("null space dimension out of range")
    _, _, vh = np.linalg.svd(a)
    return vh[a.shape[0] - dimension:].conj().T
