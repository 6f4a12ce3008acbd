from enum import Enum
from dataclasses import dataclass, fields
from typing import Optional, Tuple

from utils import config
from .spectrum_model import L2Variant


class Command(Enum):
    nodes = 0
    diffmat = 1
    lz = 2
    l2 = 3
    verify = 4


class OutputFormat(Enum):
    json = 0
    csv = 1


class ThetaMode(Enum):
    solved = 0
    equidistant_open = 1
    explicit = 2

    @classmethod
    def parse(cls, value: str) -> 'ThetaMode':
        return cls[value.replace('-', '_')]


class NodeMode(Enum):
    equidistant = 0
    equidistant_open = 1
    solve_theta = 2
    explicit = 3


class DiffKind(Enum):
    poly = 0
    trig = 1
    parity = 2


@dataclass(frozen=True)
class Settings:
    schema: str = config.SCHEMA
    node_tolerance: float = config.NODE_TOLERANCE
    node_max_iterations: int = config.NODE_MAX_ITERATIONS
    collision_tolerance: float = config.COLLISION_TOLERANCE
    label_tolerance: float = config.LABEL_TOLERANCE
    symmetrize_tolerance: float = config.SYMMETRIZE_TOLERANCE
    block_workers: int = config.BLOCK_WORKERS
    float_digits: int = config.FLOAT_DIGITS
    verify_seed: int = config.VERIFY_SEED

    @classmethod
    def from_config(cls, raw: dict) -> 'Settings':
        values = {}
        for item in fields(cls):
            if item.name.upper() in raw:
                values[item.name] = type(item.default)(raw[item.name.upper()])
        return cls(**values)


@dataclass(frozen=True)
class RunConfig:
    command: Command
    output: OutputFormat = OutputFormat.json
    out_path: Optional[str] = None
    n: Optional[int] = None
    node_mode: NodeMode = NodeMode.equidistant
    points: Tuple[float, ...] = ()
    diff_kind: DiffKind = DiffKind.trig
    power: int = 1
    n_theta: Optional[int] = None
    m_phi: Optional[int] = None
    variant: L2Variant = L2Variant.eq30
    theta_mode: ThetaMode = ThetaMode.solved
    tolerance: Optional[float] = None
    with_matrix: bool = False
