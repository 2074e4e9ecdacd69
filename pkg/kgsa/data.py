"""
    data
    ~~~~

    The single paired input-output data set everything in the
    library consumes.
"""

import numpy as np

from kgsa.exceptions import (DimensionMismatch, InvalidSubset,
                             NonFiniteSamples, TooFewSamples)
from kgsa.utils import subset_helpers


class DataSet(object):
    """ Paired input & output sample matrices

    :param inputs: (N, n) array, one column per input variable
    :param outputs: (N, m) array, one column per output dimension
    :param labels: optional input column names, defaults to x1..xn
    :param output_labels: optional output column names
    """

    def __init__(self, inputs, outputs, labels=None, output_labels=None):

        inputs = np.asarray(inputs, dtype=float)
        outputs = np.asarray(outputs, dtype=float)

        if inputs.ndim == 1:
            inputs = inputs.reshape(-1, 1)
        if outputs.ndim == 1:
            outputs = outputs.reshape(-1, 1)

        if inputs.ndim != 2 or outputs.ndim != 2:
            raise DimensionMismatch('2-D sample matrices',
                                    '%s-D & %s-D' % (inputs.ndim,
                                                     outputs.ndim))
        if inputs.shape[0] != outputs.shape[0]:
            raise DimensionMismatch('%s output rows' % inputs.shape[0],
                                    '%s output rows' % outputs.shape[0])
        if inputs.shape[0] < 2:
            raise TooFewSamples(2, inputs.shape[0])
        if inputs.shape[1] > subset_helpers.MAX_INPUTS:
            raise InvalidSubset(detail='At most %s inputs are supported, '
                                       'got %s.' % (subset_helpers.MAX_INPUTS,
                                                    inputs.shape[1]))
        if not np.all(np.isfinite(inputs)):
            raise NonFiniteSamples('inputs')
        if not np.all(np.isfinite(outputs)):
            raise NonFiniteSamples('outputs')

        inputs.setflags(write=False)
        outputs.setflags(write=False)

        self.inputs = inputs
        self.outputs = outputs
        self.labels = list(labels or ['x%s' % (i + 1)
                                      for i in range(inputs.shape[1])])
        self.output_labels = list(output_labels or
                                  ['y%s' % (i + 1)
                                   for i in range(outputs.shape[1])])

        if len(self.labels) != self.n_inputs:
            raise DimensionMismatch('%s input labels' % self.n_inputs,
                                    len(self.labels))
        if len(self.output_labels) != self.n_outputs:
            raise DimensionMismatch('%s output labels' % self.n_outputs,
                                    len(self.output_labels))

    def __len__(self):

        return self.inputs.shape[0]

    def __repr__(self):

        return 'DataSet(N=%s, n=%s, m=%s)' % (self.n_samples, self.n_inputs,
                                              self.n_outputs)

    @property
    def n_samples(self):
        """ Number of rows N """

        return self.inputs.shape[0]

    @property
    def n_inputs(self):
        """ Number of input variables n """

        return self.inputs.shape[1]

    @property
    def n_outputs(self):
        """ Output dimension m """

        return self.outputs.shape[1]

    @property
    def universe(self):
        """ Subset bitmask of every input """

        return subset_helpers.full(self.n_inputs)

    def check_subset(self, subset):
        """ Validate a non-empty subset of this data set's inputs

        :raise: InvalidSubset
        """

        if subset <= 0:
            raise InvalidSubset(detail='Estimation requires a non-empty '
                                       'input subset.')
        if subset >> self.n_inputs:
            raise InvalidSubset(detail='Subset %s refers to inputs beyond '
                                       'the %s available.'
                                % (subset_helpers.fmt(subset),
                                   self.n_inputs))
        return subset

    def select(self, subset):
        """ The (N, |R|) input columns of a subset """

        self.check_subset(subset)
        return self.inputs[:, subset_helpers.to_indices(subset)]

    def take(self, rows):
        """ A new DataSet of the given rows, in the given order """

        rows = np.asarray(rows)
        return DataSet(self.inputs[rows], self.outputs[rows],
                       labels=self.labels, output_labels=self.output_labels)
