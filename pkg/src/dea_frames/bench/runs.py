import dataclasses
import logging

from dea_frames.buildhull import build_hull, check_extreme
from dea_frames.datagen import generate
from dea_frames.ehd import run_ehd
from dea_frames.lib import metrics as run_metrics
from dea_frames.lib.date_time import utc_timestamp
from dea_frames.lib.labels import Procedure
from dea_frames.oracle import classify_all
from dea_frames.phase2 import score_phase2
from dea_frames.preprocess import OrderKind, default_subset_size, preprocess, processing_order

from .dataset_io import manifest_path, write_dataset, write_manifest
from .records import RunRecord


@dataclasses.dataclass(frozen=True)
class RunOptions:
    """
    Procedure settings of a run.

    Attributes:
        order: OrderKind for BuildHull's processing order.
        order_seed: Seed for the random processing order.
        single_seed: Initialize with one extreme DMU instead of all dimension-sorting results.
        p: EHD initial subset size, None means ceil(sqrt(n)).
        debug_checks: Verify the extremeness of the preprocessing results with LPs before the timed run.
        phase2: Score the remaining DMUs after Phase 1 and include that time.
        workers: Worker processes for oracle runs.
    """

    order: OrderKind = OrderKind.ASCENDING
    order_seed: int = None
    single_seed: bool = False
    p: int = None
    include_partial_boundary: bool = False
    exact_ties: bool = False
    debug_checks: bool = False
    phase2: bool = False
    workers: int = None


@dataclasses.dataclass(eq=False)
class RunOutcome:

    record: RunRecord
    result: object
    scores: object = None


def _base_record(dataset, procedure, solver, manifest):

    manifest = manifest or {}
    return dict(dataset=dataset.name, procedure=str(procedure), pivot_rule=str(solver.algorithm),
                n=dataset.n, m1=dataset.m1, m2=dataset.m2, timestamp=utc_timestamp(),
                seed=manifest.get('seed'), target_density=manifest.get('target_density'),
                realized_frame=manifest.get('realized_frame'))


def execute_run(dataset, procedure, solver, manifest=None, options=RunOptions(), metrics=None):
    """
    Runs preprocessing and one procedure strictly sequentially and builds its RunRecord.

    Args:
        manifest: Dataset manifest entries, used for seed, nominal density and realized frame size.
        metrics: Dict from `lib.metrics.make_metrics()` to fill after the run, or None.

    Returns:
        A RunOutcome.
    """

    procedure = Procedure(procedure)
    record = _base_record(dataset, procedure, solver, manifest)

    if procedure == Procedure.ORACLE:
        report = classify_all(dataset, solver, options.workers)
        record.update(m_hat=0, total_lps=report.lp_count, total_time=report.wall_time,
                      phase1_time=report.wall_time, overall_time=report.wall_time,
                      frame_size=len(report.frame), boundary_size=len(report.boundary),
                      realized_frame=len(report.extreme_representatives))
        return RunOutcome(record=RunRecord(**record), result=report)

    prep = preprocess(dataset, single_seed=options.single_seed)
    if options.debug_checks:
        check_extreme(dataset, prep.extreme_seed, solver)

    if procedure == Procedure.BUILDHULL:
        seed = set(prep.extreme_seed)
        order = processing_order(prep, [i for i in range(dataset.n) if i not in seed], options.order,
                                 options.order_seed)
        result = build_hull(dataset, prep.extreme_seed, order, solver, exact_ties=options.exact_ties)
        reference = result.frame
        record.update(m_hat=result.m_hat, total_lps=result.lp_count, phase1_time=result.wall_time,
                      frame_size=len(result.frame), boundary_size=len(result.frame),
                      avg_lp_size=result.avg_lp_size, hyperplane_translations=result.hyperplane_translations,
                      inner_products=result.inner_products, hyperplane_time=result.hyperplane_time,
                      order=str(OrderKind(options.order)))
        if metrics is not None:
            run_metrics.record_frame_result(metrics, result, prep.elapsed)
    else:
        p = options.p
        if p is None:
            p = min(default_subset_size(dataset.n, prep.m_hat), dataset.n)
        result = run_ehd(dataset, p, prep, solver, options.include_partial_boundary)
        reference = result.boundary
        record.update(m_hat=result.m_hat, total_lps=result.total_lp_count, phase1_time=result.wall_time,
                      boundary_size=len(result.boundary), p=p, lp_size_step2=result.step2.lp_size,
                      lp_size_step3=result.step3.lp_size, lp_size_step4=result.step4.lp_size,
                      num_lps_step2=result.step2.lp_count, num_lps_step3=result.step3.lp_count,
                      num_lps_step4=result.step4.lp_count, dominance_lps=result.dominance_lp_count,
                      productivity=result.productivity,
                      include_partial_boundary=options.include_partial_boundary)
        if metrics is not None:
            run_metrics.record_ehd_result(metrics, result, prep.elapsed)

    scores = None
    total_time = result.wall_time
    if options.phase2:
        scores = score_phase2(dataset, reference, solver)
        total_time += scores.wall_time
        record.update(phase2_included=True, phase2_time=scores.wall_time, phase2_lps=scores.lp_count,
                      phase2_lp_size=scores.lp_size)
        if metrics is not None:
            run_metrics.record_phase2(metrics, str(procedure), scores)

    record.update(preprocess_time=prep.elapsed, total_time=total_time,
                  overall_time=prep.elapsed + total_time)
    logging.info('%s on "%s": %d LPs, %.3f s (preprocessing %.3f s)', procedure, dataset.name,
                 record['total_lps'], total_time, prep.elapsed)

    return RunOutcome(record=RunRecord(**record), result=result, scores=scores)


def generate_files(spec, path, with_oracle=True, solver=None, workers=None):
    """
    Generates a dataset, writes it to `path` and writes the manifest next to it.

    Args:
        with_oracle: Measure the realized frame size with the oracle (recorded as unknown otherwise).

    Returns:
        Tuple of (Dataset, manifest dict).
    """

    dataset = generate(spec)
    write_dataset(dataset, path)

    manifest = {
        'name': spec.name,
        'n': spec.n,
        'm1': spec.m1,
        'm2': spec.m2,
        'seed': spec.seed,
        'target_density': spec.target_density,
        'frontier_points': spec.frontier_count,
        'inject_boundary': spec.inject_boundary,
        'realized_frame': None,
        'realized_boundary': None,
        'realized_density': None
    }
    if with_oracle:
        report = classify_all(dataset, solver, workers)
        manifest['realized_frame'] = len(report.extreme_representatives)
        manifest['realized_boundary'] = len(report.boundary)
        manifest['realized_density'] = report.density
    write_manifest(manifest_path(path), manifest)

    logging.info('Wrote dataset "%s" (%d DMUs, realized frame %s) to %s', spec.name, spec.n,
                 manifest['realized_frame'], path)
    return dataset, manifest
