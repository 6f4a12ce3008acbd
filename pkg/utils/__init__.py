import os
import json

from .config import CONFIG_ENV_VARIABLE
from .errors import InvalidArgument


ROOT_PATH = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))


def load_settings(path: str = None):
    from models.run_model import Settings
    path = path or os.environ.get(CONFIG_ENV_VARIABLE) or os.path.join(ROOT_PATH, 'config.json')
    try:
        with open(path, 'r') as config_file:
            return Settings.from_config(json.loads(config_file.read()))
    except (OSError, ValueError) as error:
        raise InvalidArgument(f"cannot load settings from {path}: {error}")
