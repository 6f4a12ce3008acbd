import numpy as np
import pytest
from scipy.special import lpmv

from models.node_model import NodeKind
from models.harmonic_model import HarmonicSample
from services.harmonic_service import (
    assoc_legendre, spherical_grid, harmonic_on_grid, orthonormal_basis, subspace_residual
)
from services.node_service import explicit_nodes, equidistant_nodes
from utils.errors import InvalidArgument, DegenerateSample


@pytest.fixture
def grid():
    theta = explicit_nodes([np.pi / 4, np.pi / 2, 3 * np.pi / 4], NodeKind.open)
    return spherical_grid(theta, equidistant_nodes(3))


def test_legendre_small_values():
    assert assoc_legendre(0, 0, 0.3) == 1.0
    assert assoc_legendre(1, 0, 0.3) == pytest.approx(0.3)
    assert assoc_legendre(1, 1, 0.6) == pytest.approx(-0.8)
    assert assoc_legendre(2, 0, 0.5) == pytest.approx(-0.125)
    assert assoc_legendre(2, 2, 0.0) == pytest.approx(3.0)


@pytest.mark.parametrize("n", range(5))
def test_legendre_agrees_with_scipy(n):
    x = np.linspace(-1.0, 1.0, 11)
    for m in range(n + 1):
        np.testing.assert_allclose(assoc_legendre(n, m, x), lpmv(m, n, x), atol=1e-12)


def test_legendre_returns_scalars_for_scalars():
    assert isinstance(assoc_legendre(3, 1, 0.2), float)
    assert assoc_legendre(3, 1, [0.2, 0.4]).shape == (2,)


@pytest.mark.parametrize("n, m, x", [(2, 3, 0.0), (2, -1, 0.0), (1, 0, 1.5)])
def test_legendre_rejects(n, m, x):
    with pytest.raises(InvalidArgument):
        assoc_legendre(n, m, x)


def test_constant_harmonic(grid):
    sample = harmonic_on_grid(0, 0, grid)
    np.testing.assert_array_equal(sample.values, np.ones(9))
    assert not sample.degenerate


def test_first_order_harmonic(grid):
    sample = harmonic_on_grid(1, 1, grid)
    theta, phi = np.meshgrid([np.pi / 4, np.pi / 2, 3 * np.pi / 4], equidistant_nodes(3).points, indexing='xy')
    expected = -np.sin(theta) * np.exp(1j * phi)
    np.testing.assert_allclose(sample.values, expected.ravel(), atol=1e-14)


def test_vanishing_harmonic_is_degenerate():
    grid = spherical_grid(explicit_nodes([np.pi / 2], NodeKind.open), equidistant_nodes(3))
    sample = harmonic_on_grid(1, 0, grid)
    assert sample.degenerate
    with pytest.raises(DegenerateSample):
        subspace_residual(np.ones((3, 1)), [sample])


def test_harmonic_rejects_bad_order(grid):
    with pytest.raises(InvalidArgument):
        harmonic_on_grid(1, 2, grid)


def test_orthonormal_basis_drops_dependent_columns():
    vectors = np.array([[1.0, 2.0], [1.0, 2.0], [0.0, 0.0]])
    basis = orthonormal_basis(vectors)
    assert basis.shape == (3, 1)
    np.testing.assert_allclose(np.abs(basis[:, 0]), [2 ** -0.5, 2 ** -0.5, 0.0], atol=1e-15)


def test_subspace_residual_inside_span(grid):
    sample = harmonic_on_grid(1, 1, grid)
    vectors = np.column_stack([2.0 * sample.values, harmonic_on_grid(0, 0, grid).values])
    assert subspace_residual(vectors, [sample]) < 1e-14


def test_subspace_residual_orthogonal(grid):
    constant = harmonic_on_grid(0, 0, grid).values
    assert subspace_residual(constant, [harmonic_on_grid(1, 1, grid)]) == pytest.approx(1.0)


def test_subspace_residual_accepts_plain_vectors():
    assert subspace_residual(np.eye(3)[:, :2], [np.array([0.0, 0.0, 1.0])]) == pytest.approx(1.0)
    with pytest.raises(DegenerateSample):
        subspace_residual(np.eye(3), [np.zeros(3)])
    with pytest.raises(InvalidArgument):
        subspace_residual(np.eye(3), [np.ones(4)])


def test_sample_keeps_its_grid(grid):
    sample = harmonic_on_grid(2, -1, grid)
    assert isinstance(sample, HarmonicSample)
    assert sample.grid is grid
    assert sample.values.shape == (9,)
