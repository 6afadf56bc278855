"""
Head-to-head sweeps over a grid of generated instances.
"""

import dataclasses
import itertools
import logging
import multiprocessing
import os

from dea_frames.datagen import GenSpec

from .dataset_io import manifest_path, read_dataset, read_manifest
from .records import append_record
from .runs import RunOptions, execute_run, generate_files


@dataclasses.dataclass(frozen=True)
class SweepCell:

    n: int
    m1: int
    m2: int
    density: float
    seed: int

    @property
    def spec(self):
        base = GenSpec(self.n, self.m1, self.m2, self.density, self.seed)
        return dataclasses.replace(base, name=f'{base.name}-s{self.seed}')


def grid_cells(cardinalities, dimensions, densities, seeds):
    """
    Returns the SweepCells of the full grid, ordered by cardinality, then dimension, then density, then
    seed.
    """

    return [SweepCell(n, m1, m2, density, seed) for n, (m1, m2), density, seed in
            itertools.product(sorted(cardinalities), sorted(dimensions, key=sum), sorted(densities), seeds)]


@dataclasses.dataclass(frozen=True)
class _CellTask:

    cell: SweepCell
    data_dir: str
    solver: object
    with_oracle: bool

    @property
    def path(self):
        return os.path.join(self.data_dir, self.cell.spec.name + '.csv')


def prepare_cell(task):
    """
    Generates the dataset of one cell unless it exists already. Untimed, so it may run in a worker process.

    Returns:
        Path of the dataset CSV file.
    """

    path = task.path
    if os.path.exists(path) and read_manifest(manifest_path(path)) is not None:
        logging.info('Reusing dataset %s', path)
    else:
        generate_files(task.cell.spec, path, task.with_oracle, task.solver)
    return path


def run_cell(path, procedures, solver, options):
    """
    Runs the procedures on a prepared dataset one after another in this process.

    Returns:
        List of RunRecords.
    """

    dataset = read_dataset(path)
    manifest = read_manifest(manifest_path(path))
    return [execute_run(dataset, procedure, solver, manifest, options).record for procedure in procedures]


def run_sweep(cells, data_dir, results_path, solver, procedures=('buildhull', 'ehd'), options=RunOptions(),
              with_oracle=False, workers=None):
    """
    Runs all cells and appends their records to `results_path` in grid order.

    Args:
        workers: Number of processes generating datasets and running the oracle. None or 1 does that in this
                 process. The timed procedure runs always happen here, one at a time, after all datasets
                 are prepared.

    Returns:
        List of all RunRecords.
    """

    os.makedirs(data_dir, exist_ok=True)
    tasks = [_CellTask(cell, data_dir, solver, with_oracle) for cell in cells]

    if workers is not None and workers > 1:
        with multiprocessing.Pool(workers) as pool:
            paths = pool.map(prepare_cell, tasks)
    else:
        paths = [prepare_cell(task) for task in tasks]

    all_records = []
    for path in paths:
        records = run_cell(path, procedures, solver, options)
        for record in records:
            append_record(results_path, record)
        all_records.extend(records)

    logging.info('Sweep finished: %d cells, %d records', len(cells), len(all_records))
    return all_records
