import logging

import numpy as np
import pytest

from models.node_model import NodeSet, NodeKind
from models.operator_model import ExactnessKind
from services.diffmat_service import (
    poly_diff_matrix, trig_diff_matrix, parity_diff_matrix, matrix_power, prepare_operator, build_diff_matrix
)
from services.node_service import equidistant_nodes, explicit_nodes
from services.verify_service import random_spaced_nodes
from utils.errors import InvalidArgument, DegenerateNodes


def test_poly_two_nodes():
    d = poly_diff_matrix(explicit_nodes([-1.0, 1.0]))
    np.testing.assert_allclose(d.entries, [[-0.5, 0.5], [-0.5, 0.5]], atol=1e-15)
    assert d.exactness.kind == ExactnessKind.polynomial
    assert d.exactness.degree == 1


def test_poly_single_node():
    assert poly_diff_matrix(explicit_nodes([0.3])).entries.tolist() == [[0.0]]


@pytest.mark.parametrize("seed", range(10))
def test_poly_exact_on_monomials(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(2, 11))
    points = random_spaced_nodes(rng, n)
    d = poly_diff_matrix(explicit_nodes(points))
    np.testing.assert_allclose(d.apply(np.ones(n)), 0.0, atol=1e-10)
    for p in range(1, n):
        samples = points ** p
        error = np.max(np.abs(d.apply(samples) - p * points ** (p - 1)))
        assert error <= 1e-8 * (1 + np.max(np.abs(samples)))


def test_poly_rejects_coincident_nodes():
    with pytest.raises(DegenerateNodes):
        poly_diff_matrix(NodeSet([0.1, 0.1], NodeKind.general))


def test_poly_similarity_reproduces_entries():
    d = poly_diff_matrix(explicit_nodes([-0.9, -0.2, 0.4, 0.8]))
    scale = d.similarity.diagonal()
    np.testing.assert_allclose(d.entries, scale[:, None] * d.kernel / scale[None, :], atol=1e-13)


def test_trig_three_equidistant():
    d = trig_diff_matrix(equidistant_nodes(3))
    assert d.entries[0, 1] == pytest.approx(1 / np.sqrt(3), abs=1e-14)
    np.testing.assert_allclose(np.diag(d.entries), 0.0, atol=1e-15)
    assert d.exactness.kind == ExactnessKind.trigonometric
    assert d.exactness.degree == 1


@pytest.mark.parametrize("n", [3, 4, 7, 10])
def test_trig_equidistant_closed_form(n):
    d = trig_diff_matrix(equidistant_nodes(n))
    j, k = np.meshgrid(np.arange(n), np.arange(n), indexing='ij')
    off = j != k
    expected = (-1.0) ** (j + k)[off] / (2 * np.sin(np.pi * (j - k)[off] / n))
    np.testing.assert_allclose(d.entries[off], expected, atol=1e-13)
    np.testing.assert_allclose(d.entries, -d.entries.T, atol=1e-13)


def test_trig_kills_constants():
    for n in (1, 3, 5, 9):
        d = trig_diff_matrix(equidistant_nodes(n))
        np.testing.assert_allclose(d.apply(np.ones(n)), 0.0, atol=1e-13)


def test_trig_five_differentiates_sine():
    d = trig_diff_matrix(equidistant_nodes(5))
    x = d.nodes.points
    np.testing.assert_allclose(d.apply(np.sin(x)), np.cos(x), atol=1e-12)


@pytest.mark.parametrize("n", range(3, 22, 2))
def test_trig_odd_exactness(n):
    d = trig_diff_matrix(equidistant_nodes(n))
    x = d.nodes.points
    for q in range((n - 1) // 2 + 1):
        np.testing.assert_allclose(d.apply(np.cos(q * x)), -q * np.sin(q * x), atol=1e-10)
        np.testing.assert_allclose(d.apply(np.sin(q * x)), q * np.cos(q * x), atol=1e-10)


@pytest.mark.parametrize("n", range(4, 21, 2))
def test_trig_even_half_integer_exactness(n):
    d = trig_diff_matrix(equidistant_nodes(n))
    assert d.exactness.kind == ExactnessKind.half_integer
    x = d.nodes.points
    for q in range(-(n // 2 - 1), n // 2):
        samples = np.exp(1j * (q + 0.5) * x)
        np.testing.assert_allclose(d.apply(samples), 1j * (q + 0.5) * samples, atol=1e-10)


def test_trig_even_tags():
    assert trig_diff_matrix(explicit_nodes([-2.5, -1.0, 0.0, 1.7], NodeKind.periodic)).exactness.kind == \
        ExactnessKind.sine_half
    assert trig_diff_matrix(explicit_nodes([-2.5, -1.0, 1.7, np.pi], NodeKind.periodic)).exactness.kind == \
        ExactnessKind.cosine_half
    with pytest.raises(InvalidArgument):
        trig_diff_matrix(explicit_nodes([-2.5, -1.0, 1.0, 1.7], NodeKind.periodic))


def test_trig_sine_half_class_is_exact():
    d = trig_diff_matrix(explicit_nodes([-2.5, -1.0, 0.0, 1.7], NodeKind.periodic))
    x = d.nodes.points
    samples = np.sin(x / 2) * np.cos(x)
    derivative = 0.5 * np.cos(x / 2) * np.cos(x) - np.sin(x / 2) * np.sin(x)
    np.testing.assert_allclose(d.apply(samples), derivative, atol=1e-10)


def test_trig_rejects_points_outside_period():
    with pytest.raises(InvalidArgument):
        trig_diff_matrix(NodeSet([-4.0, 0.0, 1.0], NodeKind.general))


def test_trig_large_n_stays_finite():
    d = trig_diff_matrix(equidistant_nodes(64))
    assert np.all(np.isfinite(d.entries))
    np.testing.assert_allclose(d.entries, -d.entries.T, atol=1e-11)


def test_parity_single_node():
    assert parity_diff_matrix(NodeSet([1.0], NodeKind.open)).entries.tolist() == [[0.0]]


def test_parity_two_nodes_kernel():
    d = parity_diff_matrix(NodeSet([np.pi / 4, np.pi / 2], NodeKind.open))
    np.testing.assert_allclose(d.kernel, [[-1.0, -1.0], [1.0, 1.0]], atol=1e-15)
    assert d.exactness.kind == ExactnessKind.parity
    assert d.exactness.degree == 2


def test_parity_exact_on_node_products():
    points = np.array([0.4, 1.1, 2.0])
    d = parity_diff_matrix(NodeSet(points, NodeKind.open))

    def f(theta):
        return np.cos(theta - points[0]) * np.sin(theta - points[1]) * np.sin(theta - points[2])

    def derivative(theta):
        return (-np.sin(theta - points[0]) * np.sin(theta - points[1]) * np.sin(theta - points[2])
                + np.cos(theta - points[0]) * np.cos(theta - points[1]) * np.sin(theta - points[2])
                + np.cos(theta - points[0]) * np.sin(theta - points[1]) * np.cos(theta - points[2]))

    np.testing.assert_allclose(d.apply(f(points)), derivative(points), atol=1e-12)


def test_parity_rejects_points_outside_interval():
    with pytest.raises(InvalidArgument):
        parity_diff_matrix(NodeSet([0.0, 1.0], NodeKind.general))


def test_power_zero_is_identity():
    d = matrix_power(trig_diff_matrix(equidistant_nodes(5)), 0)
    np.testing.assert_allclose(d.entries, np.eye(5))
    assert d.order == 0


def test_power_two_poly():
    d = matrix_power(poly_diff_matrix(explicit_nodes([-1.0, 0.0, 1.0])), 2)
    np.testing.assert_allclose(d.apply(np.array([1.0, 0.0, 1.0])), [2.0, 2.0, 2.0], atol=1e-13)
    assert d.order == 2
    assert d.exactness.degree == 2


def test_power_two_trig():
    d = matrix_power(trig_diff_matrix(equidistant_nodes(5)), 2)
    x = d.nodes.points
    np.testing.assert_allclose(d.apply(np.cos(x)), -np.cos(x), atol=1e-12)


def test_power_rejects_negative():
    with pytest.raises(InvalidArgument):
        matrix_power(trig_diff_matrix(equidistant_nodes(3)), -1)


def test_build_rejects_unknown_kind():
    with pytest.raises(InvalidArgument):
        build_diff_matrix('chebyshev', equidistant_nodes(3))


def test_prepare_operator_shape():
    result = prepare_operator(poly_diff_matrix(explicit_nodes([-1.0, 1.0])))
    assert result["exactness"] == {"kind": "polynomial", "degree": 1, "order": 1}
    assert result["entries"][0][1] == [0.5, 0.0]
    assert result["nodes"]["points"] == [-1.0, 1.0]
    assert len(result["similarity"]["sign"]) == 2


@pytest.mark.parametrize("kind", ['poly', 'trig'])
def test_build_uses_the_given_collision_tolerance(kind):
    nodes = equidistant_nodes(5)
    assert build_diff_matrix(kind, nodes).dimension == 5
    with pytest.raises(DegenerateNodes):
        build_diff_matrix(kind, nodes, tolerance=2.0)


def test_build_logs_exactness(caplog):
    with caplog.at_level(logging.DEBUG, logger='services.diffmat_service'):
        build_diff_matrix('trig', equidistant_nodes(5))
    assert "trig matrix is exact on trigonometric<=2" in caplog.text
