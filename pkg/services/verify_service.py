import logging
from concurrent.futures import Executor
from typing import Optional

import numpy as np

from models.run_model import Settings
from models.verify_model import VerificationReport
from .diffmat_service import poly_diff_matrix, trig_diff_matrix, matrix_power
from .eigen_service import hessenberg_qr, jacobi_symmetric
from .lsquared_service import (
    assemble_l2, assemble_l2_parity, labeled_spectrum, harmonic_checks, theta_blocks, in_parity_space
)
from .node_service import equidistant_nodes, explicit_nodes, solve_theta_nodes, node_condition_residual, cot
from .rotation_service import (
    build_rotation_generator, verify_exponential_relation, lz_eigensystem, lz_ladder, characteristic_check,
    simultaneous_diagonalization_error, delta_with_phases
)
from .tensor_service import tensor_grid, lift, kron_product, grid_coordinates


logger = logging.getLogger(__name__)

L2_SIZES = ((3, 3), (5, 5), (5, 7), (7, 7))
PARITY_SIZES = (1, 3, 5)


def random_spaced_nodes(rng: np.random.Generator, n: int, spacing: float = 0.05,
                        low: float = -1.0, high: float = 1.0) -> np.ndarray:
    """n sorted points in [low, high] with every gap at least `spacing`."""
    slack = high - low - (n - 1) * spacing
    return low + np.sort(rng.uniform(0.0, slack, n)) + spacing * np.arange(n)


def exact_targets(count: int) -> np.ndarray:
    targets = []
    n = 0
    while len(targets) < count:
        targets.extend([n * (n + 1)] * (2 * n + 1))
        n += 1
    return np.array(targets[:count], dtype=float)


def _relative(values, targets) -> float:
    values, targets = np.asarray(values), np.asarray(targets)
    if not values.size:
        return 0.0
    return float(np.max(np.abs(values - targets) / np.maximum(1.0, np.abs(targets))))


def check_polynomial_exactness(report: VerificationReport, rng: np.random.Generator) -> None:
    worst = 0.0
    for _ in range(50):
        n = int(rng.integers(1, 11))
        points = random_spaced_nodes(rng, n)
        d = poly_diff_matrix(explicit_nodes(points))
        for p in range(n):
            samples = points ** p
            exact = p * points ** (p - 1) if p else np.zeros(n)
            worst = max(worst, float(np.max(np.abs(d.apply(samples) - exact)) / (1 + np.max(np.abs(samples)))))
    report.add(1, "polynomial exactness", worst, 1e-8, detail="50 random node sets, N <= 10")


def check_trigonometric_exactness(report: VerificationReport) -> None:
    worst = 0.0
    for n in range(3, 22, 2):
        d = trig_diff_matrix(equidistant_nodes(n))
        x = d.nodes.points
        for q in range((n - 1) // 2 + 1):
            worst = max(worst, float(np.max(np.abs(d.apply(np.cos(q * x)) + q * np.sin(q * x)))),
                        float(np.max(np.abs(d.apply(np.sin(q * x)) - q * np.cos(q * x)))))
    report.add(2, "trigonometric exactness, odd N", worst, 1e-10, detail="N = 3..21")
    worst = 0.0
    for n in range(4, 21, 2):
        d = trig_diff_matrix(equidistant_nodes(n))
        x = d.nodes.points
        for q in range(-(n // 2 - 1), n // 2):
            samples = np.exp(1j * (q + 0.5) * x)
            worst = max(worst, float(np.max(np.abs(d.apply(samples) - 1j * (q + 0.5) * samples))))
    report.add(2, "half-integer exactness, even N", worst, 1e-10, detail="N = 4..20")


def check_generator_identity(report: VerificationReport) -> None:
    worst = 0.0
    for n in range(2, 32):
        gen = build_rotation_generator(n)
        d_phi = trig_diff_matrix(equidistant_nodes(n))
        worst = max(worst, float(np.max(np.abs(gen.a_matrix - 1j * gen.epsilon * d_phi.entries))))
    report.add(3, "closed-form generator equals i(2pi/N) D_phi", worst, 1e-12, detail="N = 2..31")


def check_group_law(report: VerificationReport, rng: np.random.Generator) -> None:
    power_error, determinant_error, phase_error = 0.0, 0.0, 0.0
    for n in range(2, 33):
        delta = build_rotation_generator(n).delta
        sign = 1.0 if n % 2 else -1.0
        power_error = max(power_error, float(np.max(np.abs(np.linalg.matrix_power(delta, n) - sign * np.eye(n)))))
        determinant_error = max(determinant_error, abs(np.linalg.det(delta) - 1.0))
        phases = rng.uniform(-np.pi, np.pi, n)
        general = delta_with_phases(phases)
        expected = np.exp(1j * np.sum(phases)) * np.eye(n)
        phase_error = max(phase_error, float(np.max(np.abs(np.linalg.matrix_power(general, n) - expected))))
    report.add(4, "rotation group law", power_error, 1e-10, detail="N = 2..32")
    report.add(4, "rotation determinant", determinant_error, 1e-10)
    report.add(4, "phase product of the general circulant", phase_error, 1e-10)


def check_exponential_relation(report: VerificationReport) -> None:
    worst = max(verify_exponential_relation(build_rotation_generator(n)) for n in range(2, 33))
    report.add(5, "exp(-i eps L_z) equals Delta", worst, 1e-8, detail="N = 2..32")


def check_lz_spectrum(report: VerificationReport) -> None:
    residual, ladder, unitarity, diagonal = 0.0, 0.0, 0.0, 0.0
    for n in range(2, 33):
        system = lz_eigensystem(n)
        expected = np.arange(-(n - 1), n, 2) / 2.0
        ladder = max(ladder, float(np.max(np.abs(lz_ladder(n) - expected))))
        residual = max(residual, float(np.max(system.residuals)))
        vectors = system.eigenvectors
        unitarity = max(unitarity, float(np.max(np.abs(vectors.conj().T @ vectors - np.eye(n)))))
        gen = build_rotation_generator(n)
        diagonal = max(diagonal, simultaneous_diagonalization_error(gen), characteristic_check(gen))
    report.add(6, "L_z eigenpair residual", residual, 1e-10, detail="N = 2..32")
    report.add(6, "L_z ladder", ladder, 0.0)
    report.add(6, "eigenvector unitarity", unitarity, 1e-12)
    report.add(6, "simultaneous diagonalization", diagonal, 1e-10)


def check_l2_spectrum(report: VerificationReport, settings: Settings, executor: Optional[Executor]) -> None:
    spectrum_error, vector_error, imag = 0.0, 0.0, 0.0
    for n_theta, m_phi in L2_SIZES:
        op = assemble_l2(solve_theta_nodes(n_theta, settings.node_tolerance), m_phi,
                         settings.symmetrize_tolerance, settings.collision_tolerance)
        spectrum = labeled_spectrum(op, settings.label_tolerance, executor)
        lowest = spectrum.values.real[:op.exact_count]
        spectrum_error = max(spectrum_error, _relative(lowest, exact_targets(op.exact_count)))
        imag = max(imag, spectrum.max_imag)
        for cluster in spectrum.labeled:
            if cluster.residual is not None:
                vector_error = max(vector_error, cluster.residual)
    report.add(7, "eq30 exact spectrum", spectrum_error, 1e-8, detail=f"sizes {L2_SIZES}")
    report.add(7, "eq30 spectrum is real", imag, 0.0)
    report.add(9, "eq30 eigenvectors are spherical harmonics", vector_error, 1e-8)


def check_parity_spectrum(report: VerificationReport, settings: Settings) -> None:
    harmonic_error, claim_error, imag = 0.0, 0.0, 0.0
    for n_theta in PARITY_SIZES:
        op = assemble_l2_parity(solve_theta_nodes(n_theta, settings.node_tolerance), 2 * n_theta + 1)
        for match in harmonic_checks(op):
            if in_parity_space(match.n, match.m, n_theta):
                harmonic_error = max(harmonic_error, match.residual / max(1.0, match.n * (match.n + 1)))
        spectrum = labeled_spectrum(op, 1e-6)
        # N = 1 claims more exact eigenvalues than the grid has
        count = min(op.exact_count, op.dimension)
        claim_error = max(claim_error, _relative(spectrum.values.real[:count], exact_targets(count)))
        imag = max(imag, spectrum.max_imag)
    report.add(8, "eq35 exact on harmonics of matching parity", harmonic_error, 1e-6, detail="N = 1, 3, 5")
    report.add(8, "eq35 claimed (N+1)^2 exact eigenvalues", claim_error, 1e-6, gating=False)
    report.add(8, "eq35 spectrum imaginary part", imag, 1e-8, gating=False)


def check_positive_semidefinite(report: VerificationReport, settings: Settings) -> None:
    worst = 0.0
    for n_theta in range(1, 10, 2):
        op = assemble_l2(solve_theta_nodes(n_theta, settings.node_tolerance), n_theta,
                         settings.symmetrize_tolerance, settings.collision_tolerance)
        for block in theta_blocks(op):
            if not block.symmetrizable:
                worst = np.inf
                continue
            worst = max(worst, -float(np.min(jacobi_symmetric(block.symmetric).values.real)))
    report.add(10, "symmetrized theta blocks are positive semidefinite", max(worst, 0.0), 1e-10,
               detail="N = 1..9")


def check_node_solver(report: VerificationReport, settings: Settings) -> None:
    worst = 0.0
    for n in range(1, 16):
        nodes = solve_theta_nodes(n, settings.node_tolerance)
        worst = max(worst, node_condition_residual(nodes, lambda theta: float(cot(theta))).max_abs)
    report.add(11, "node condition residual", worst, 1e-10, detail="N = 1..15")
    closed_forms = max(
        float(np.max(np.abs(solve_theta_nodes(1).points - np.pi / 2))),
        float(np.max(np.abs(solve_theta_nodes(2).points - np.array([np.pi / 4, 3 * np.pi / 4]))))
    )
    report.add(11, "closed-form nodes for N = 1, 2", closed_forms, 1e-10)


def check_block_equivalence(report: VerificationReport, settings: Settings,
                            executor: Optional[Executor] = None) -> None:
    op = assemble_l2(solve_theta_nodes(5, settings.node_tolerance), 5,
                     settings.symmetrize_tolerance, settings.collision_tolerance)
    blocks = np.sort(labeled_spectrum(op, settings.label_tolerance, executor).values.real)
    dense = np.sort(hessenberg_qr(op.matrix.entries).values.real)
    report.add(12, "theta blocks match the dense solve", _relative(dense, blocks), 1e-9, detail="N = M = 5")


def check_kronecker_layer(report: VerificationReport, rng: np.random.Generator) -> None:
    a, c = rng.standard_normal((2, 2)), rng.standard_normal((2, 2))
    b, d = rng.standard_normal((3, 3)), rng.standard_normal((3, 3))
    mixed = float(np.max(np.abs(kron_product(a, b) @ kron_product(c, d) - kron_product(a @ c, b @ d))))
    report.add(13, "mixed-product identity", mixed, 1e-10)

    grid = tensor_grid(explicit_nodes([-1.0, 0.2, 1.0]), explicit_nodes([-1.0, -0.3, 0.4, 1.0]))
    d_x, d_y = poly_diff_matrix(grid.axes[0]), poly_diff_matrix(grid.axes[1])
    lifted_x, lifted_y = lift(d_x, 0, grid).entries, lift(d_y, 1, grid).entries
    report.add(13, "lifted operators commute",
               float(np.max(np.abs(lifted_x @ lifted_y - lifted_y @ lifted_x))), 1e-10)

    x, y = grid_coordinates(grid).T
    worst = 0.0
    for i, j in ((1, 0), (0, 1), (1, 1), (2, 1), (2, 3)):
        operator = lift(matrix_power(d_x, i), 0, grid).entries @ lift(matrix_power(d_y, j), 1, grid).entries
        for power_x in range(3):
            for power_y in range(4):
                exact = _falling(power_x, i) * x ** max(power_x - i, 0) * _falling(power_y, j) * y ** max(power_y - j, 0)
                samples = x ** power_x * y ** power_y
                worst = max(worst, float(np.max(np.abs(operator @ samples - exact)) / (1 + np.max(np.abs(exact)))))
    report.add(13, "tensor-product derivative exactness", worst, 1e-10, detail="monomials of degree (2, 3)")


def _falling(power: int, order: int) -> float:
    if order > power:
        return 0.0
    return float(np.prod(np.arange(power - order + 1, power + 1)))


def run_acceptance(settings: Settings, executor: Optional[Executor] = None) -> VerificationReport:
    rng = np.random.default_rng(settings.verify_seed)
    report = VerificationReport()
    check_polynomial_exactness(report, rng)
    check_trigonometric_exactness(report)
    check_generator_identity(report)
    check_group_law(report, rng)
    check_exponential_relation(report)
    check_lz_spectrum(report)
    check_l2_spectrum(report, settings, executor)
    check_parity_spectrum(report, settings)
    check_positive_semidefinite(report, settings)
    check_node_solver(report, settings)
    check_block_equivalence(report, settings, executor)
    check_kronecker_layer(report, rng)
    for check in report.checks:
        logger.info("criterion %d %s: deviation=%.3e limit=%.1e %s", check.criterion, check.name,
                    check.deviation, check.limit, "pass" if check.passed else "FAIL")
    return report


def prepare_report(report: VerificationReport) -> dict:
    return {
        "passed": report.passed,
        "checks": [
            {
                "criterion": check.criterion,
                "name": check.name,
                "deviation": check.deviation,
                "limit": check.limit,
                "passed": check.passed,
                "gating": check.gating,
                "detail": check.detail
            } for check in report.checks
        ]
    }
