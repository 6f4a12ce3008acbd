import argparse
from concurrent.futures import Executor

from injector import inject

from models.run_model import RunConfig, Command, OutputFormat, Settings
from repositories.artifact_repository import ArtifactRepository
from services.verify_service import run_acceptance, prepare_report
from utils.errors import VerificationFailure
from .utils import BaseCommand, add_output_flags


def register(subparsers) -> None:
    parser = subparsers.add_parser('verify', help="run the acceptance checks and emit a report")
    add_output_flags(parser)


def to_config(args: argparse.Namespace) -> RunConfig:
    return RunConfig(command=Command.verify, output=OutputFormat[args.output], out_path=args.out_path)


class VerifyCommand(BaseCommand):
    name = 'verify'

    @inject
    def __init__(self, settings: Settings, repository: ArtifactRepository, executor: Executor):
        super().__init__(settings, repository)
        self.executor = executor

    def run(self, config: RunConfig) -> int:
        report = run_acceptance(self.settings, self.executor)
        if config.output == OutputFormat.csv:
            rows = [
                (check.criterion, check.name, check.deviation, check.limit, check.passed, check.gating)
                for check in report.checks
            ]
            self.emit_csv(config, ('criterion', 'name', 'deviation', 'limit', 'passed', 'gating'), rows)
        else:
            self.emit_json(config, prepare_report(report))
        if not report.passed:
            names = ', '.join(f"{check.criterion}:{check.name}" for check in report.failures)
            raise VerificationFailure(f"failed checks {names}")
        return 0
