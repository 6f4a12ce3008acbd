import sys
import logging
from concurrent.futures import Executor, ThreadPoolExecutor

from injector import Module, Injector, singleton

from commands import build_parser, to_config, COMMAND_CLASSES
from commands.errors import report_error, report_unexpected
from models.run_model import Settings
from repositories.artifact_repository import ArtifactRepository
from utils import load_settings
from utils.errors import AngulonError


logger = logging.getLogger('angulon')


class AppModule(Module):
    def __init__(self, settings: Settings, executor: Executor):
        self.settings = settings
        self.executor = executor

    def configure(self, binder):
        """Bind the run-wide singletons."""
        binder.bind(Settings, to=self.settings, scope=singleton)
        binder.bind(ArtifactRepository, scope=singleton)
        binder.bind(Executor, to=self.executor, scope=singleton)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        stream=sys.stderr,
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s"
    )
    try:
        config = to_config(args)
        settings = load_settings()
        with ThreadPoolExecutor(max_workers=max(1, settings.block_workers)) as executor:
            command = Injector([AppModule(settings, executor)]).get(COMMAND_CLASSES[config.command])
            logger.debug("running %s", config)
            return command.run(config)
    except AngulonError as error:
        return report_error(error)
    except Exception as error:
        return report_unexpected(error)


if __name__ == "__main__":
    sys.exit(main())
