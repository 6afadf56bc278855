import dataclasses

import numpy as np

from dea_frames.lib.exceptions import DataError


def translate_point(inputs, outputs):
    """
    Returns the translated data point a = (-X, Y) of a DMU with input vector X and output vector Y.

    Raises:
        DataError: If a component is not strictly positive and finite.
    """

    inputs = np.asarray(inputs, dtype=float).reshape(-1)
    outputs = np.asarray(outputs, dtype=float).reshape(-1)
    if inputs.size == 0 or outputs.size == 0:
        raise DataError('A DMU needs at least one input and one output')
    for name, values in (('input', inputs), ('output', outputs)):
        if not np.all(np.isfinite(values)) or np.any(values <= 0):
            raise DataError(f'All {name} values must be positive and finite')

    return np.concatenate((-inputs, outputs))


@dataclasses.dataclass(frozen=True, eq=False)
class Dataset:
    """
    n DMUs with m1 inputs and m2 outputs each. Arrays are read-only, `translated` holds one row a^i per DMU.
    """

    name: str
    inputs: np.ndarray
    outputs: np.ndarray
    translated: np.ndarray = dataclasses.field(init=False, repr=False)

    def __post_init__(self):
        inputs = np.array(self.inputs, dtype=float)
        outputs = np.array(self.outputs, dtype=float)
        if inputs.ndim != 2 or outputs.ndim != 2:
            raise DataError('Inputs and outputs must be matrices with one row per DMU')
        if inputs.shape[0] != outputs.shape[0]:
            raise DataError(f'Got {inputs.shape[0]} input rows, but {outputs.shape[0]} output rows')
        if inputs.shape[0] < 1:
            raise DataError('Dataset needs at least one DMU')
        if inputs.shape[1] < 1 or outputs.shape[1] < 1:
            raise DataError('Dataset needs at least one input and one output')
        for name, values in (('input', inputs), ('output', outputs)):
            if not np.all(np.isfinite(values)):
                raise DataError(f'Dataset "{self.name}" contains non-finite {name} values')
            if np.any(values <= 0):
                bad_row = int(np.flatnonzero(np.any(values <= 0, axis=1))[0])
                raise DataError(f'Dataset "{self.name}" has a non-positive {name} value for DMU {bad_row}')

        translated = np.hstack((-inputs, outputs))
        for array in (inputs, outputs, translated):
            array.setflags(write=False)

        object.__setattr__(self, 'inputs', inputs)
        object.__setattr__(self, 'outputs', outputs)
        object.__setattr__(self, 'translated', translated)

    def __len__(self):
        return self.n

    @property
    def n(self):
        return self.inputs.shape[0]

    @property
    def m1(self):
        return self.inputs.shape[1]

    @property
    def m2(self):
        return self.outputs.shape[1]

    @property
    def m(self):
        return self.m1 + self.m2

    def subset(self, indices, name=None):
        indices = np.asarray(indices, dtype=int)
        return Dataset(name or self.name, self.inputs[indices], self.outputs[indices])

    def scaled(self, input_factor, output_factor):
        """
        Returns a copy with all inputs multiplied by `input_factor` and all outputs by `output_factor`.
        """

        return Dataset(self.name, self.inputs * input_factor, self.outputs * output_factor)

    def same_data(self, other):
        return self.inputs.shape == other.inputs.shape and self.outputs.shape == other.outputs.shape and \
            np.array_equal(self.inputs, other.inputs) and np.array_equal(self.outputs, other.outputs)
