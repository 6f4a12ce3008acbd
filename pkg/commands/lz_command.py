import argparse

from injector import inject

from models.run_model import RunConfig, Command, OutputFormat, Settings
from repositories.artifact_repository import ArtifactRepository
from services.rotation_service import (
    build_rotation_generator, lz_eigensystem, verify_exponential_relation, prepare_generator, prepare_eigensystem
)
from utils.errors import InvalidArgument
from .utils import BaseCommand, add_output_flags


def register(subparsers) -> None:
    parser = subparsers.add_parser('lz', help="emit Delta, A, L_z and the L_z eigensystem")
    parser.add_argument('--n', type=int, required=True, help="dimension N >= 2")
    add_output_flags(parser)


def to_config(args: argparse.Namespace) -> RunConfig:
    if args.n < 2:
        raise InvalidArgument("--n must be at least 2")
    return RunConfig(command=Command.lz, output=OutputFormat[args.output], out_path=args.out_path, n=args.n)


class LzCommand(BaseCommand):
    name = 'lz'

    @inject
    def __init__(self, settings: Settings, repository: ArtifactRepository):
        super().__init__(settings, repository)

    def run(self, config: RunConfig) -> int:
        system = lz_eigensystem(config.n)
        if config.output == OutputFormat.csv:
            rows = zip(range(1, config.n + 1), system.eigenvalues, system.residuals)
            self.emit_csv(config, ('index', 'eigenvalue', 'residual'), rows)
            return 0
        generator = build_rotation_generator(config.n)
        self.emit_json(config, {
            "generator": prepare_generator(generator),
            "eigensystem": prepare_eigensystem(system),
            "exponential_deviation": verify_exponential_relation(generator)
        })
        return 0
