"""
Turns a results file into CSV tables and long-format plot data.
"""

import logging
import os

import pandas as pd

from dea_frames.lib.exceptions import DataError

from .records import RunRecord


EHD_COLUMNS = ['dataset', 'lp_size_step2', 'lp_size_step3', 'lp_size_step4', 'num_lps_step4', 'total_lps',
               'total_time']
BUILDHULL_COLUMNS = ['dataset', 'total_lps', 'avg_lp_size', 'total_time']

# Mean sequential times in seconds over the published 48-instance benchmark suite (n up to 100,000).
# Hardware-bound reference values, only reported for context.
REFERENCE_MEAN_TIMES = {
    ('ehd', 'dual'): 936.62,
    ('ehd', 'primal'): 851.66,
    ('buildhull', 'dual'): 368.72,
    ('buildhull', 'primal'): 415.39
}

_INTEGER_COLUMNS = ['n', 'm', 'm_hat', 'total_lps', 'lp_size_step2', 'lp_size_step3', 'lp_size_step4',
                    'num_lps_step4', 'frame_size', 'hyperplane_translations', 'inner_products']

_SWEEPS = {
    'density': ('density', ['n', 'm']),
    'cardinality': ('n', ['m', 'density']),
    'dimension': ('m', ['n', 'density'])
}


def load_records(path):
    """
    Reads all valid records from a results file, malformed lines are skipped with a warning.

    Returns:
        Tuple of (list of RunRecord, number of skipped lines).
    """

    records = []
    skipped = 0
    try:
        with open(path, encoding='utf-8') as results_file:
            for line_no, line in enumerate(results_file, start=1):
                if not line.strip():
                    continue
                try:
                    records.append(RunRecord.from_json(line))
                except DataError as e:
                    logging.warning('Skipping record in line %d of %s: %s', line_no, path, e)
                    skipped += 1
    except OSError as e:
        raise DataError(f'Could not read results file "{path}": {e}') from e

    return records, skipped


def _records_frame(records):

    rows = []
    for record in records:
        row = dict(vars(record))
        row['m'] = record.m
        row['density'] = float('nan') if record.density is None else record.density
        rows.append(row)
    return pd.DataFrame(rows)


def _sorted(frame):
    """
    Sorts by cardinality, then dimension, then density.
    """

    return frame.sort_values(['n', 'm', 'density', 'dataset'], kind='stable').reset_index(drop=True)


def _aggregate(frame, keys):
    """
    Averages repeated runs with identical keys.
    """

    numeric = [c for c in frame.columns if c not in keys and pd.api.types.is_numeric_dtype(frame[c]) and
               not pd.api.types.is_bool_dtype(frame[c])]
    aggregated = frame.groupby(keys, as_index=False, dropna=False)[numeric].mean()
    for column in _INTEGER_COLUMNS:
        if column in aggregated.columns:
            values = aggregated[column]
            if values.notna().all() and (values == values.round()).all():
                aggregated[column] = values.astype(int)
    return aggregated


def procedure_table(frame, procedure, pivot_rule):
    """
    Per-dataset table of one procedure and pivot rule with the columns of EHD_COLUMNS or BUILDHULL_COLUMNS.
    """

    columns = EHD_COLUMNS if procedure == 'ehd' else BUILDHULL_COLUMNS
    selected = frame[(frame['procedure'] == procedure) & (frame['pivot_rule'] == pivot_rule)]
    if selected.empty:
        return pd.DataFrame(columns=columns)
    table = _sorted(_aggregate(selected, ['dataset']))
    return table[columns]


def comparison_table(frame):
    """
    One row per dataset and pivot rule with both procedures' times and speedup = time_EHD / time_BuildHull.
    """

    keys = ['dataset', 'pivot_rule']
    columns = keys + ['n', 'm', 'density', 'time_ehd', 'time_buildhull', 'speedup']
    selected = frame[frame['procedure'].isin(['ehd', 'buildhull'])]
    if selected.empty:
        return pd.DataFrame(columns=columns)
    per_procedure = _aggregate(selected, keys + ['procedure'])
    times = per_procedure.pivot_table(index=keys, columns='procedure', values='total_time')
    if 'ehd' not in times.columns or 'buildhull' not in times.columns:
        return pd.DataFrame(columns=columns)
    times = times.dropna(subset=['ehd', 'buildhull']).reset_index()
    times = times.rename(columns={'ehd': 'time_ehd', 'buildhull': 'time_buildhull'})
    times.columns.name = None
    times['speedup'] = times['time_ehd'] / times['time_buildhull']

    shape = per_procedure.groupby(keys, as_index=False)[['n', 'm', 'density']].first()
    table = times.merge(shape, on=keys)
    return _sorted(table)[columns]


def buildhull_summary(frame):
    """
    Hyperplane-translation share of the BuildHull running time.
    """

    columns = ['dataset', 'pivot_rule', 'frame_size', 'm_hat', 'hyperplane_translations', 'inner_products',
               'hyperplane_time', 'total_time', 'hyperplane_share']
    selected = frame[frame['procedure'] == 'buildhull']
    if selected.empty:
        return pd.DataFrame(columns=columns)
    table = _sorted(_aggregate(selected, ['dataset', 'pivot_rule']))
    table['hyperplane_share'] = table['hyperplane_time'] / table['total_time']
    return table[columns]


def sweep_data(frame, sweep):
    """
    Long-format plot data of total time against one parameter, one row per (procedure, pivot rule,
    parameter combination).
    """

    variable, fixed = _SWEEPS[sweep]
    keys = ['procedure', 'pivot_rule'] + fixed + [variable]
    selected = frame[frame['procedure'].isin(['ehd', 'buildhull'])]
    columns = keys + ['total_time']
    if selected.empty:
        return pd.DataFrame(columns=columns)
    data = selected.groupby(keys, as_index=False, dropna=False)['total_time'].mean()
    return data.sort_values(keys, kind='stable').reset_index(drop=True)[columns]


def context_lines():

    lines = ['Reference mean sequential times on the published benchmark suite (context, not targets):']
    for (procedure, pivot_rule), seconds in REFERENCE_MEAN_TIMES.items():
        lines.append(f'  {procedure} ({pivot_rule} simplex): {seconds:.2f} s')
    return lines


def write_report(records, out_dir):
    """
    Writes all report files to `out_dir`.

    Returns:
        List of written paths.
    """

    if not records:
        raise DataError('No records to report on')
    os.makedirs(out_dir, exist_ok=True)
    frame = _records_frame(records)
    written = []

    def write(table, name, header_lines=()):
        path = os.path.join(out_dir, name)
        with open(path, 'w', encoding='utf-8', newline='') as out_file:
            for line in header_lines:
                out_file.write(f'# {line}\n')
            table.to_csv(out_file, index=False)
        written.append(path)

    for pivot_rule in sorted(frame['pivot_rule'].unique()):
        for procedure in ('ehd', 'buildhull'):
            table = procedure_table(frame, procedure, pivot_rule)
            if not table.empty:
                write(table, f'{procedure}_table_{pivot_rule}.csv')

    write(comparison_table(frame), 'comparison.csv', context_lines())
    write(buildhull_summary(frame), 'buildhull_summary.csv')
    for sweep in _SWEEPS:
        write(sweep_data(frame, sweep), f'plot_{sweep}.csv')

    context_path = os.path.join(out_dir, 'context.txt')
    with open(context_path, 'w', encoding='utf-8') as context_file:
        context_file.write('\n'.join(context_lines()) + '\n')
    written.append(context_path)

    for line in context_lines():
        logging.info(line)
    return written
