import os
import tempfile
from unittest import TestCase
from unittest.mock import patch

from dea_frames.bench import sweep
from dea_frames.bench.records import RunRecord
from dea_frames.bench.runs import RunOptions, execute_run
from dea_frames.bench.sweep import prepare_cell
from dea_frames.lp import SimplexSolver


class GridTest(TestCase):

    def test_order(self):
        cells = sweep.grid_cells([500, 200], [(5, 5), (3, 2)], [0.25, 0.01], [1, 2])

        self.assertEqual(len(cells), 16)
        self.assertEqual(cells[0], sweep.SweepCell(200, 3, 2, 0.01, 1))
        self.assertEqual(cells[1], sweep.SweepCell(200, 3, 2, 0.01, 2))
        self.assertEqual(cells[2], sweep.SweepCell(200, 3, 2, 0.25, 1))
        self.assertEqual(cells[4], sweep.SweepCell(200, 5, 5, 0.01, 1))
        self.assertEqual(cells[-1], sweep.SweepCell(500, 5, 5, 0.25, 2))

    def test_spec(self):
        spec = sweep.SweepCell(200, 3, 2, 0.01, 7).spec

        self.assertEqual(spec.name, '05by200at01-s7')
        self.assertEqual((spec.n, spec.m1, spec.m2, spec.target_density, spec.seed), (200, 3, 2, 0.01, 7))


class RunSweepTest(TestCase):

    def test_run_and_reuse(self):
        cells = sweep.grid_cells([15], [(1, 1)], [0.4], [1, 2])

        with tempfile.TemporaryDirectory() as tmp_dir:
            data_dir = os.path.join(tmp_dir, 'data')
            results = os.path.join(tmp_dir, 'results.jsonl')

            records = sweep.run_sweep(cells, data_dir, results, SimplexSolver())
            self.assertEqual(sorted(os.listdir(data_dir)), ['02by15at40-s1.csv', '02by15at40-s1.manifest',
                                                            '02by15at40-s2.csv', '02by15at40-s2.manifest'])

            with patch('dea_frames.bench.sweep.generate_files') as generate_mock:
                sweep.run_sweep(cells[:1], data_dir, results, SimplexSolver(), procedures=['ehd'],
                                options=RunOptions(p=4))
            generate_mock.assert_not_called()

            with open(results, encoding='utf-8') as results_file:
                stored = [RunRecord.from_json(line) for line in results_file]

        self.assertEqual([(r.dataset, r.procedure) for r in records],
                         [('02by15at40-s1', 'buildhull'), ('02by15at40-s1', 'ehd'),
                          ('02by15at40-s2', 'buildhull'), ('02by15at40-s2', 'ehd')])
        self.assertEqual(len(stored), 5)
        self.assertEqual(stored[-1].p, 4)
        self.assertEqual(stored[-1].seed, 1)
        self.assertEqual(stored[-1].target_density, 0.4)
        for buildhull_record, ehd_record in zip(records[::2], records[1::2]):
            self.assertEqual(buildhull_record.frame_size, ehd_record.boundary_size)

    @patch('dea_frames.bench.sweep.multiprocessing.Pool')
    def test_workers_only_prepare(self, pool_mock):
        pool = pool_mock.return_value.__enter__.return_value
        pool.map.side_effect = lambda func, tasks: [func(task) for task in tasks]
        events = []

        def prepare(task):
            events.append(('prepare', task.cell.seed))
            return prepare_cell(task)

        def execute(dataset, procedure, *args):
            events.append(('run', dataset.name))
            return execute_run(dataset, procedure, *args)

        cells = sweep.grid_cells([15], [(1, 1)], [0.4], [1, 2])
        with tempfile.TemporaryDirectory() as tmp_dir:
            with patch('dea_frames.bench.sweep.prepare_cell', side_effect=prepare), \
                    patch('dea_frames.bench.sweep.execute_run', side_effect=execute):
                records = sweep.run_sweep(cells, os.path.join(tmp_dir, 'data'),
                                          os.path.join(tmp_dir, 'results.jsonl'), SimplexSolver(), workers=2)

        pool_mock.assert_called_once_with(2)
        pool.map.assert_called_once()
        self.assertEqual(events, [('prepare', 1), ('prepare', 2),
                                  ('run', '02by15at40-s1'), ('run', '02by15at40-s1'),
                                  ('run', '02by15at40-s2'), ('run', '02by15at40-s2')])
        self.assertEqual(len(records), 4)
