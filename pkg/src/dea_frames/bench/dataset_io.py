"""
Dataset files: UTF-8 CSV with header `x1..x{m1},y1..y{m2}` and one DMU per line, plus a sidecar manifest of
`key: value` lines next to it.
"""

import os
import re

import numpy as np
import pandas as pd

from dea_frames.dea import Dataset
from dea_frames.lib.exceptions import DataError


_COLUMN_PATTERN = re.compile(r'^([xy])([1-9][0-9]*)$')


def manifest_path(dataset_path):
    root, _ = os.path.splitext(dataset_path)
    return root + '.manifest'


def write_dataset(dataset, path):

    columns = {}
    for i in range(dataset.m1):
        columns[f'x{i+1}'] = dataset.inputs[:, i]
    for i in range(dataset.m2):
        columns[f'y{i+1}'] = dataset.outputs[:, i]
    pd.DataFrame(columns).to_csv(path, index=False, encoding='utf-8')


def _split_columns(columns):

    inputs = []
    outputs = []
    for column in columns:
        match = _COLUMN_PATTERN.match(str(column).strip())
        if match is None:
            raise DataError(f'Unexpected column "{column}"')
        (inputs if match.group(1) == 'x' else outputs).append(int(match.group(2)))

    if inputs != list(range(1, len(inputs)+1)) or outputs != list(range(1, len(outputs)+1)) or \
       list(columns[:len(inputs)]) != [f'x{i}' for i in inputs]:
        raise DataError('Header must be "x1..x<m1>,y1..y<m2>"')
    return len(inputs), len(outputs)


def read_dataset(path, name=None):
    """
    Reads a dataset file. The name is taken from the manifest if there is one, else from the file name.

    Raises:
        DataError: If the file is missing, unparsable or does not contain a valid dataset.
    """

    try:
        frame = pd.read_csv(path, encoding='utf-8', float_precision='round_trip')
    except (OSError, UnicodeDecodeError, pd.errors.ParserError, pd.errors.EmptyDataError) as e:
        raise DataError(f'Could not read dataset "{path}": {e}') from e

    m1, _ = _split_columns(list(frame.columns))
    try:
        values = frame.to_numpy(dtype=float)
    except ValueError as e:
        raise DataError(f'Dataset "{path}" contains non-numeric values') from e
    if np.isnan(values).any():
        raise DataError(f'Dataset "{path}" contains empty or invalid values')

    if name is None:
        manifest = read_manifest(manifest_path(path))
        if manifest is not None and 'name' in manifest:
            name = str(manifest['name'])
        else:
            name = os.path.splitext(os.path.basename(path))[0]

    return Dataset(name, values[:, :m1], values[:, m1:])


def _parse_value(text):

    if text in ('', 'None'):
        return None
    for convert in (int, float):
        try:
            return convert(text)
        except ValueError:
            pass
    return text


def write_manifest(path, entries):

    with open(path, 'w', encoding='utf-8') as manifest_file:
        for key, value in entries.items():
            manifest_file.write(f'{key}: {value}\n')


def read_manifest(path):
    """
    Returns the manifest as dict or None if the file does not exist.
    """

    if not os.path.exists(path):
        return None

    entries = {}
    with open(path, encoding='utf-8') as manifest_file:
        for line_no, line in enumerate(manifest_file, start=1):
            line = line.strip()
            if not line or line.startswith('#'):
                continue
            key, sep, value = line.partition(':')
            if not sep:
                raise DataError(f'Invalid manifest line {line_no} in "{path}"')
            entries[key.strip()] = _parse_value(value.strip())
    return entries
