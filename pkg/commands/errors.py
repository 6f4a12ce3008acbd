import sys
import logging
from typing import TextIO

from utils.errors import AngulonError


logger = logging.getLogger(__name__)

PROGRAM = 'angulon'
USAGE_EXIT_CODE = 2
INTERNAL_ERROR_CODE = 'internal-error'
INTERNAL_EXIT_CODE = 1


def one_line(text: str) -> str:
    return ' '.join(str(text).split())


def diagnostic(code: str, message: str) -> str:
    return one_line(f"{PROGRAM}: {code}: {message}")


def report_error(error: AngulonError, stream: TextIO = None) -> int:
    logger.debug("command failed", exc_info=error)
    print(one_line(f"{PROGRAM}: {error.reason()}"), file=stream or sys.stderr)
    return error.exit_code


def report_unexpected(error: Exception, stream: TextIO = None) -> int:
    logger.debug("unexpected failure", exc_info=error)
    print(diagnostic(INTERNAL_ERROR_CODE, f"{type(error).__name__}: {error}"), file=stream or sys.stderr)
    return INTERNAL_EXIT_CODE
