import io
import csv
import sys
import logging
from typing import Iterable, Optional, Sequence, TextIO

from injector import inject

from models.run_model import Settings
from utils.errors import InvalidArgument
from . import encode, format_cell


logger = logging.getLogger(__name__)


class ArtifactRepository:
    @inject
    def __init__(self, settings: Settings):
        self.settings = settings

    def render_json(self, command: str, result: dict) -> str:
        document = {"schema": self.settings.schema, "command": command, "result": result}
        return encode(document, self.settings.float_digits) + '\n'

    def render_csv(self, header: Sequence[str], rows: Iterable[Sequence]) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator='\n')
        writer.writerow(header)
        for row in rows:
            writer.writerow([format_cell(cell, self.settings.float_digits) for cell in row])
        return buffer.getvalue()

    def save(self, text: str, out_path: Optional[str] = None, stream: TextIO = None) -> None:
        if out_path is None:
            (stream or sys.stdout).write(text)
            return
        try:
            with open(out_path, 'w', newline='') as artifact:
                artifact.write(text)
        except OSError as error:
            raise InvalidArgument(f"cannot write {out_path}: {error.strerror}")
        logger.info("wrote %d bytes to %s", len(text), out_path)

    def save_json(self, command: str, result: dict, out_path: Optional[str] = None) -> None:
        self.save(self.render_json(command, result), out_path)

    def save_csv(self, header: Sequence[str], rows: Iterable[Sequence], out_path: Optional[str] = None) -> None:
        self.save(self.render_csv(header, rows), out_path)
