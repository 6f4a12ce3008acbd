import argparse
from typing import Optional, Tuple

from models.node_model import NodeSet, NodeKind
from models.run_model import RunConfig, NodeMode, Settings
from repositories.artifact_repository import ArtifactRepository
from services.node_service import equidistant_nodes, equidistant_open_nodes, solve_theta_nodes, explicit_nodes
from utils.errors import InvalidArgument


NODE_DESTINATIONS = {
    NodeMode.equidistant: 'equidistant',
    NodeMode.equidistant_open: 'equidistant_open',
    NodeMode.solve_theta: 'solve_theta',
    NodeMode.explicit: 'points'
}


class BaseCommand:
    name = ''

    def __init__(self, settings: Settings, repository: ArtifactRepository):
        self.settings = settings
        self.repository = repository

    def run(self, config: RunConfig) -> int:
        raise NotImplementedError

    def emit_json(self, config: RunConfig, result: dict) -> None:
        self.repository.save_json(self.name, result, config.out_path)

    def emit_csv(self, config: RunConfig, header, rows) -> None:
        self.repository.save_csv(header, rows, config.out_path)


def add_output_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument('--output', choices=('json', 'csv'), default='json', help="artifact format")
    parser.add_argument('--out', dest='out_path', metavar='PATH', help="write the artifact here instead of stdout")
    parser.add_argument('--verbose', action='store_true', help="log solver progress on stderr")


def add_node_flags(parser: argparse.ArgumentParser, required: bool = True) -> None:
    group = parser.add_mutually_exclusive_group(required=required)
    group.add_argument('--equidistant', type=int, metavar='N', help="periodic nodes -pi + 2 pi j / N")
    group.add_argument('--equidistant-open', type=int, metavar='N', help="open nodes j pi / (N + 1)")
    group.add_argument('--solve-theta', type=int, metavar='N', help="nodes solving the cot-weighted node condition")
    group.add_argument('--points', type=float, nargs='+', metavar='X', help="explicit nodes in radians")


def positive(value: Optional[int], flag: str) -> Optional[int]:
    if value is not None and value < 1:
        raise InvalidArgument(f"{flag} must be a positive integer")
    return value


def node_choice(args: argparse.Namespace) -> Tuple[NodeMode, Optional[int]]:
    for mode, destination in NODE_DESTINATIONS.items():
        value = getattr(args, destination, None)
        if value is None:
            continue
        if mode == NodeMode.explicit:
            return mode, None
        return mode, positive(value, "--" + destination.replace("_", "-"))
    raise InvalidArgument("a node option is required")


def build_nodes(config: RunConfig, settings: Settings, kind: NodeKind = NodeKind.general) -> NodeSet:
    if config.node_mode == NodeMode.equidistant:
        return equidistant_nodes(config.n)
    if config.node_mode == NodeMode.equidistant_open:
        return equidistant_open_nodes(config.n)
    if config.node_mode == NodeMode.solve_theta:
        return solve_theta_nodes(
            config.n, config.tolerance or settings.node_tolerance, settings.node_max_iterations
        )
    return explicit_nodes(config.points, kind, settings.collision_tolerance)
