import numpy as np
import pytest
from scipy.linalg import expm

from services.eigen_service import jacobi_symmetric, hessenberg, hessenberg_qr, matrix_exponential, null_space
from services import off_diagonal_mass
from utils.errors import InvalidArgument, ConvergenceFailure


def random_symmetric(rng, n):
    a = rng.standard_normal((n, n))
    return a + a.T


def random_orthogonal(rng, n):
    q, _ = np.linalg.qr(rng.standard_normal((n, n)))
    return q


def sorted_complex(values):
    values = np.asarray(values, dtype=complex)
    return values[np.lexsort((np.round(values.imag, 8), np.round(values.real, 8)))]


def test_jacobi_diagonal():
    result = jacobi_symmetric(np.diag([3.0, -1.0, 2.0]))
    np.testing.assert_array_equal(result.real_values, [-1.0, 2.0, 3.0])
    np.testing.assert_array_equal(np.abs(result.vectors), np.eye(3)[:, [1, 2, 0]])
    assert result.iterations == 0


def test_jacobi_wide_diagonal():
    diagonal = np.linspace(1.0, 1000.0, 40) ** 1.5
    result = jacobi_symmetric(np.diag(diagonal))
    assert result.iterations == 0
    np.testing.assert_array_equal(result.real_values, diagonal)
    np.testing.assert_array_equal(result.vectors, np.eye(40))


def test_jacobi_converges_on_larger_input(rng):
    a = random_symmetric(rng, 30)
    result = jacobi_symmetric(a)
    v = result.vectors
    np.testing.assert_allclose(result.real_values, np.linalg.eigvalsh(a), atol=1e-10)
    np.testing.assert_allclose(v.T @ v, np.eye(30), atol=1e-10)
    assert np.max(np.abs(v.T @ a @ v - np.diag(result.real_values))) < 1e-11 * np.linalg.norm(a)


def test_jacobi_off_diagonal_is_driven_to_tolerance(rng):
    a = random_symmetric(rng, 12)
    result = jacobi_symmetric(a)
    rotated = result.vectors.T @ a @ result.vectors
    assert off_diagonal_mass(rotated) < 1e-11 * np.linalg.norm(a)


def test_jacobi_swap():
    result = jacobi_symmetric([[0.0, 1.0], [1.0, 0.0]])
    np.testing.assert_allclose(result.real_values, [-1.0, 1.0], atol=1e-15)


def test_jacobi_reconstructs(rng):
    a = random_symmetric(rng, 6)
    result = jacobi_symmetric(a)
    v = result.vectors
    np.testing.assert_allclose(v.T @ v, np.eye(6), atol=1e-10)
    np.testing.assert_allclose(v @ np.diag(result.real_values) @ v.T, a, atol=1e-10)
    np.testing.assert_allclose(result.real_values, np.linalg.eigvalsh(a), atol=1e-10)
    assert result.residual < 1e-9


def test_jacobi_is_similarity_invariant(rng):
    a = random_symmetric(rng, 7)
    q = random_orthogonal(rng, 7)
    np.testing.assert_allclose(jacobi_symmetric(q @ a @ q.T).real_values, jacobi_symmetric(a).real_values, atol=1e-9)


def test_jacobi_is_deterministic(rng):
    a = random_symmetric(rng, 8)
    first, second = jacobi_symmetric(a), jacobi_symmetric(a)
    np.testing.assert_array_equal(first.values, second.values)
    np.testing.assert_array_equal(first.vectors, second.vectors)


def test_jacobi_rejects_asymmetric():
    with pytest.raises(InvalidArgument):
        jacobi_symmetric([[0.0, 1.0], [0.0, 0.0]])


def test_jacobi_rejects_non_square():
    with pytest.raises(InvalidArgument):
        jacobi_symmetric(np.ones((2, 3)))


def test_jacobi_sweep_cap():
    with pytest.raises(ConvergenceFailure):
        jacobi_symmetric([[1.0, 2.0], [2.0, 1.0]], max_sweeps=0)


def test_hessenberg_shape_and_spectrum(rng):
    a = rng.standard_normal((6, 6))
    h = hessenberg(a)
    np.testing.assert_array_equal(np.tril(h, -2), 0)
    np.testing.assert_allclose(sorted_complex(np.linalg.eigvals(h)), sorted_complex(np.linalg.eigvals(a)), atol=1e-10)


def test_qr_upper_triangular():
    a = np.triu(np.arange(1.0, 17.0).reshape(4, 4))
    values = hessenberg_qr(a).values
    np.testing.assert_allclose(np.sort(values.real), [1.0, 6.0, 11.0, 16.0], atol=1e-12)
    np.testing.assert_allclose(values.imag, 0.0, atol=1e-12)


def test_qr_companion():
    values = hessenberg_qr([[0.0, 1.0], [1.0, 0.0]]).values
    np.testing.assert_allclose(np.sort(values.real), [-1.0, 1.0], atol=1e-12)


def test_qr_complex_pair():
    values = hessenberg_qr([[0.0, -1.0], [1.0, 0.0]]).values
    np.testing.assert_allclose(np.sort(values.imag), [-1.0, 1.0], atol=1e-12)
    np.testing.assert_allclose(values.real, 0.0, atol=1e-12)


def test_qr_trace_and_determinant(rng):
    a = rng.standard_normal((5, 5))
    values = hessenberg_qr(a).values
    assert np.sum(values) == pytest.approx(np.trace(a), abs=1e-8)
    assert np.prod(values) == pytest.approx(np.linalg.det(a), abs=1e-8)


def test_qr_similarity_invariant(rng):
    a = rng.standard_normal((6, 6))
    s = np.eye(6) + 0.2 * rng.standard_normal((6, 6))
    moved = np.linalg.solve(s, a @ s)
    np.testing.assert_allclose(
        sorted_complex(hessenberg_qr(moved).values), sorted_complex(hessenberg_qr(a).values), atol=1e-7
    )


def test_qr_complex_input(rng):
    a = rng.standard_normal((5, 5)) + 1j * rng.standard_normal((5, 5))
    np.testing.assert_allclose(
        sorted_complex(hessenberg_qr(a).values), sorted_complex(np.linalg.eigvals(a)), atol=1e-9
    )


def test_qr_iteration_cap():
    with pytest.raises(ConvergenceFailure) as failure:
        hessenberg_qr([[0.0, 1.0], [1.0, 0.0]], max_iterations=0)
    assert failure.value.index == 2


def test_exponential_of_zero():
    np.testing.assert_array_equal(matrix_exponential(np.zeros((3, 3))), np.eye(3))


def test_exponential_of_diagonal():
    d = np.array([-2.0, 0.5, 3.0])
    np.testing.assert_allclose(matrix_exponential(np.diag(d)), np.diag(np.exp(d)), rtol=1e-11)


@pytest.mark.parametrize("scale", [1e-3, 0.1, 0.5, 1.5, 4.0, 30.0])
def test_exponential_matches_reference(rng, scale):
    a = scale * (rng.standard_normal((5, 5)) + 1j * rng.standard_normal((5, 5))) / 5
    reference = expm(a)
    np.testing.assert_allclose(matrix_exponential(a), reference, atol=1e-8 * max(1.0, np.max(np.abs(reference))))


def test_exponential_inverse(rng):
    a = rng.standard_normal((6, 6))
    np.testing.assert_allclose(matrix_exponential(a) @ matrix_exponential(-a), np.eye(6), atol=1e-9)


def test_exponential_of_normal_matrix(rng):
    q = random_orthogonal(rng, 4)
    d = np.array([0.3, -1.2, 2.0, 0.0])
    np.testing.assert_allclose(matrix_exponential(q @ np.diag(d) @ q.T), q @ np.diag(np.exp(d)) @ q.T, atol=1e-10)


def test_null_space():
    a = np.array([[1.0, 1.0], [1.0, 1.0]])
    basis = null_space(a, 1)
    np.testing.assert_allclose(a @ basis, 0.0, atol=1e-14)
    assert basis.shape == (2, 1)
    with pytest.raises(InvalidArgument):
        null_space(a, 3)


def test_off_diagonal_mass_resolves_small_entries():
    a = np.diag(np.linspace(1.0, 1000.0, 40) ** 1.5)
    assert off_diagonal_mass(a) == 0.0
    a[3, 7] = a[7, 3] = 1e-12
    assert off_diagonal_mass(a) == pytest.approx(np.sqrt(2) * 1e-12)
