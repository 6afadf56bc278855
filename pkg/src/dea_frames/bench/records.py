"""
Run records, stored as one JSON object per line in an append-only results file.
"""

import dataclasses
import json

from dea_frames.lib.date_time import parse_timestamp
from dea_frames.lib.exceptions import DataError
from dea_frames.lib.labels import Procedure


@dataclasses.dataclass
class RunRecord:
    """
    Metrics of one procedure run on one dataset.

    `total_time` is what head-to-head comparisons use: Phase 1, plus Phase 2 if it was included.
    `overall_time` additionally contains the preprocessing.
    """

    dataset: str
    procedure: str
    pivot_rule: str
    n: int
    m1: int
    m2: int
    m_hat: int
    total_lps: int
    total_time: float
    timestamp: str
    seed: int = None
    target_density: float = None
    realized_frame: int = None
    frame_size: int = None
    boundary_size: int = None
    preprocess_time: float = 0.0
    phase1_time: float = 0.0
    overall_time: float = 0.0
    # BuildHull
    avg_lp_size: float = None
    hyperplane_translations: int = None
    inner_products: int = None
    hyperplane_time: float = None
    order: str = None
    # EHD
    p: int = None
    lp_size_step2: int = None
    lp_size_step3: int = None
    lp_size_step4: int = None
    num_lps_step2: int = None
    num_lps_step3: int = None
    num_lps_step4: int = None
    dominance_lps: int = None
    productivity: int = None
    include_partial_boundary: bool = None
    # Phase 2
    phase2_included: bool = False
    phase2_time: float = None
    phase2_lps: int = None
    phase2_lp_size: int = None

    def __post_init__(self):
        try:
            Procedure(self.procedure)
        except ValueError as e:
            raise DataError(f'Unknown procedure "{self.procedure}"') from e
        for name in ('n', 'm1', 'm2', 'm_hat', 'total_lps'):
            value = getattr(self, name)
            if not isinstance(value, int) or isinstance(value, bool) or value < 0:
                raise DataError(f'Field "{name}" must be a non-negative integer')
        if not isinstance(self.total_time, (int, float)) or isinstance(self.total_time, bool):
            raise DataError('Field "total_time" must be a number')
        try:
            parse_timestamp(self.timestamp)
        except (TypeError, ValueError) as e:
            raise DataError(f'Invalid timestamp "{self.timestamp}"') from e

    @property
    def m(self):
        return self.m1 + self.m2

    @property
    def density(self):
        """
        Nominal density if known, else the realized one.
        """

        if self.target_density is not None:
            return self.target_density
        frame = self.realized_frame if self.realized_frame is not None else self.frame_size
        if frame is None:
            return None
        return frame / self.n

    def to_json(self):
        return json.dumps(dataclasses.asdict(self), sort_keys=True)

    @classmethod
    def from_json(cls, line):
        """
        Raises:
            DataError: If the line is not a valid record.
        """

        try:
            data = json.loads(line)
        except json.JSONDecodeError as e:
            raise DataError(f'Invalid JSON: {e}') from e
        if not isinstance(data, dict):
            raise DataError('Record must be a JSON object')

        known = {field.name for field in dataclasses.fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise DataError(f'Unknown record fields: {", ".join(sorted(unknown))}')
        try:
            return cls(**data)
        except TypeError as e:
            raise DataError(f'Incomplete record: {e}') from e


def append_record(path, record):

    with open(path, 'a', encoding='utf-8') as results_file:
        results_file.write(record.to_json() + '\n')
