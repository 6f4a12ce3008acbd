import sys
import argparse

from models.run_model import Command
from . import nodes_command, diffmat_command, lz_command, l2_command, verify_command
from .errors import diagnostic, USAGE_EXIT_CODE


COMMAND_MODULES = {
    Command.nodes: nodes_command,
    Command.diffmat: diffmat_command,
    Command.lz: lz_command,
    Command.l2: l2_command,
    Command.verify: verify_command
}

COMMAND_CLASSES = {
    Command.nodes: nodes_command.NodesCommand,
    Command.diffmat: diffmat_command.DiffmatCommand,
    Command.lz: lz_command.LzCommand,
    Command.l2: l2_command.L2Command,
    Command.verify: verify_command.VerifyCommand
}


class AngulonArgumentParser(argparse.ArgumentParser):
    def error(self, message: str):
        print(diagnostic('usage-error', message), file=sys.stderr)
        sys.exit(USAGE_EXIT_CODE)


def build_parser() -> argparse.ArgumentParser:
    parser = AngulonArgumentParser(
        prog='angulon',
        description="Differentiation matrices, discrete rotations and angular momentum spectra"
    )
    subparsers = parser.add_subparsers(dest='command', required=True, parser_class=AngulonArgumentParser)
    for module in COMMAND_MODULES.values():
        module.register(subparsers)
    return parser


def to_config(args: argparse.Namespace):
    return COMMAND_MODULES[Command[args.command]].to_config(args)
