import argparse

from injector import inject

from models.node_model import NodeKind
from models.run_model import RunConfig, Command, OutputFormat, DiffKind, Settings
from repositories.artifact_repository import ArtifactRepository
from services.diffmat_service import build_diff_matrix, matrix_power, prepare_operator
from utils.errors import InvalidArgument
from .utils import BaseCommand, add_output_flags, add_node_flags, node_choice, build_nodes


NODE_KINDS = {DiffKind.poly: NodeKind.general, DiffKind.trig: NodeKind.periodic, DiffKind.parity: NodeKind.open}


def register(subparsers) -> None:
    parser = subparsers.add_parser('diffmat', help="emit a differentiation matrix")
    parser.add_argument('--kind', choices=[kind.name for kind in DiffKind], default=DiffKind.trig.name)
    parser.add_argument('--power', type=int, default=1, help="derivative order k")
    add_node_flags(parser)
    add_output_flags(parser)


def to_config(args: argparse.Namespace) -> RunConfig:
    if args.power < 0:
        raise InvalidArgument("--power must be nonnegative")
    mode, n = node_choice(args)
    return RunConfig(
        command=Command.diffmat,
        output=OutputFormat[args.output],
        out_path=args.out_path,
        n=n,
        node_mode=mode,
        points=tuple(args.points or ()),
        diff_kind=DiffKind[args.kind],
        power=args.power
    )


class DiffmatCommand(BaseCommand):
    name = 'diffmat'

    @inject
    def __init__(self, settings: Settings, repository: ArtifactRepository):
        super().__init__(settings, repository)

    def run(self, config: RunConfig) -> int:
        nodes = build_nodes(config, self.settings, NODE_KINDS[config.diff_kind])
        op = matrix_power(
            build_diff_matrix(config.diff_kind.name, nodes, self.settings.collision_tolerance), config.power
        )
        if config.output == OutputFormat.csv:
            entries = op.entries.astype(complex)
            rows = [
                (row + 1, column + 1, float(entries[row, column].real), float(entries[row, column].imag))
                for row in range(op.dimension) for column in range(op.dimension)
            ]
            self.emit_csv(config, ('row', 'column', 'real', 'imag'), rows)
            return 0
        self.emit_json(config, prepare_operator(op))
        return 0
