import argparse

from injector import inject

from models.node_model import NodeKind
from models.run_model import RunConfig, Command, OutputFormat, Settings
from repositories.artifact_repository import ArtifactRepository
from services.node_service import prepare_node_set, node_condition_residual, prepare_residual, cot
from .utils import BaseCommand, add_output_flags, add_node_flags, node_choice, build_nodes


def register(subparsers) -> None:
    parser = subparsers.add_parser('nodes', help="emit a node set")
    add_node_flags(parser)
    parser.add_argument('--tolerance', type=float, help="node condition tolerance for --solve-theta")
    add_output_flags(parser)


def to_config(args: argparse.Namespace) -> RunConfig:
    mode, n = node_choice(args)
    return RunConfig(
        command=Command.nodes,
        output=OutputFormat[args.output],
        out_path=args.out_path,
        n=n,
        node_mode=mode,
        points=tuple(args.points or ()),
        tolerance=args.tolerance
    )


class NodesCommand(BaseCommand):
    name = 'nodes'

    @inject
    def __init__(self, settings: Settings, repository: ArtifactRepository):
        super().__init__(settings, repository)

    def run(self, config: RunConfig) -> int:
        nodes = build_nodes(config, self.settings)
        if config.output == OutputFormat.csv:
            self.emit_csv(config, ('index', 'point'), enumerate(nodes.points, 1))
            return 0
        result = prepare_node_set(nodes)
        if nodes.kind == NodeKind.open:
            residual = node_condition_residual(
                nodes, lambda theta: float(cot(theta)), tolerance=self.settings.collision_tolerance
            )
            result["condition"] = prepare_residual(residual)
        self.emit_json(config, result)
        return 0
