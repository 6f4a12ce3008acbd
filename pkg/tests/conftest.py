from functools import lru_cache

import numpy as np
import pytest

from models.run_model import Settings
from repositories.artifact_repository import ArtifactRepository
from services.node_service import solve_theta_nodes


@lru_cache(maxsize=None)
def _solved(n: int):
    return solve_theta_nodes(n)


@pytest.fixture
def solved_nodes():
    return _solved


@pytest.fixture
def rng():
    return np.random.default_rng(20201)


@pytest.fixture
def settings():
    return Settings()


@pytest.fixture
def repository(settings):
    return ArtifactRepository(settings)
