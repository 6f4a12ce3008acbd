import argparse
from concurrent.futures import Executor

from injector import inject

from models.node_model import NodeKind
from models.run_model import RunConfig, Command, OutputFormat, ThetaMode, Settings
from models.spectrum_model import L2Variant
from repositories.artifact_repository import ArtifactRepository
from services.lsquared_service import (
    assemble, labeled_spectrum, harmonic_checks, spectrum_rows, prepare_spectrum, prepare_l2_operator
)
from services.node_service import solve_theta_nodes, equidistant_open_nodes, explicit_nodes
from utils.errors import InvalidArgument
from .utils import BaseCommand, add_output_flags, positive


SPECTRUM_HEADER = ('index', 'value', 'multiplicity', 'n_label', 'residual')


def register(subparsers) -> None:
    parser = subparsers.add_parser('l2', help="assemble L^2 and emit its labeled spectrum")
    parser.add_argument('--variant', choices=[variant.name for variant in L2Variant], default=L2Variant.eq30.name)
    parser.add_argument('--n-theta', type=int, help="number of theta nodes N (odd)")
    parser.add_argument('--m-phi', type=int, required=True, help="number of phi nodes M (odd)")
    parser.add_argument('--theta', default='solved', choices=('solved', 'equidistant-open', 'explicit'),
                        help="theta node placement")
    parser.add_argument('--theta-points', type=float, nargs='+', metavar='THETA', help="nodes for --theta explicit")
    parser.add_argument('--tolerance', type=float, help="relative tolerance for n(n+1) labels")
    parser.add_argument('--with-matrix', action='store_true', help="include the assembled matrix in JSON output")
    add_output_flags(parser)


def to_config(args: argparse.Namespace) -> RunConfig:
    theta_mode = ThetaMode.parse(args.theta)
    n_theta = positive(args.n_theta, '--n-theta')
    points = tuple(args.theta_points or ())
    if theta_mode == ThetaMode.explicit:
        if not points:
            raise InvalidArgument("--theta explicit needs --theta-points")
        if n_theta is not None and n_theta != len(points):
            raise InvalidArgument("--n-theta does not match the number of --theta-points")
        n_theta = len(points)
    elif points:
        raise InvalidArgument("--theta-points is only valid with --theta explicit")
    elif n_theta is None:
        raise InvalidArgument("--n-theta is required")
    if n_theta % 2 == 0 or args.m_phi < 1 or args.m_phi % 2 == 0:
        raise InvalidArgument("--n-theta and --m-phi must be odd positive integers (no half-integer L^2)")
    if args.tolerance is not None and not args.tolerance > 0:
        raise InvalidArgument("--tolerance must be positive")
    return RunConfig(
        command=Command.l2,
        output=OutputFormat[args.output],
        out_path=args.out_path,
        points=points,
        n_theta=n_theta,
        m_phi=args.m_phi,
        variant=L2Variant[args.variant],
        theta_mode=theta_mode,
        tolerance=args.tolerance,
        with_matrix=args.with_matrix
    )


class L2Command(BaseCommand):
    name = 'l2'

    @inject
    def __init__(self, settings: Settings, repository: ArtifactRepository, executor: Executor):
        super().__init__(settings, repository)
        self.executor = executor

    def theta_nodes(self, config: RunConfig):
        if config.theta_mode == ThetaMode.solved:
            return solve_theta_nodes(config.n_theta, self.settings.node_tolerance, self.settings.node_max_iterations)
        if config.theta_mode == ThetaMode.equidistant_open:
            return equidistant_open_nodes(config.n_theta)
        return explicit_nodes(config.points, NodeKind.open, self.settings.collision_tolerance)

    def run(self, config: RunConfig) -> int:
        op = assemble(
            config.variant, self.theta_nodes(config), config.m_phi,
            self.settings.symmetrize_tolerance, self.settings.collision_tolerance
        )
        spectrum = labeled_spectrum(op, config.tolerance or self.settings.label_tolerance, self.executor)
        if config.output == OutputFormat.csv:
            self.emit_csv(config, SPECTRUM_HEADER, spectrum_rows(spectrum))
            return 0
        operator = prepare_l2_operator(op)
        if not config.with_matrix:
            del operator["matrix"]
        self.emit_json(config, {
            "operator": operator,
            "spectrum": prepare_spectrum(spectrum),
            "harmonic_checks": [
                {"n": check.n, "m": check.m, "residual": check.residual} for check in harmonic_checks(op)
            ]
        })
        return 0
