""" DataSet, subset bitmasks & the string helpers """

import numpy as np
import pytest

from kgsa.data import DataSet
from kgsa.exceptions import (DimensionMismatch, InvalidSubset,
                             NonFiniteSamples, TooFewSamples)
from kgsa.utils import subset_helpers
from kgsa.utils.str_helpers import derive_seed, naked, str_to_labels


def test_dataset_shapes():

    data = DataSet(np.zeros((5, 3)), np.arange(5.0))

    assert (data.n_samples, data.n_inputs, data.n_outputs) == (5, 3, 1)
    assert len(data) == 5
    assert data.labels == ['x1', 'x2', 'x3']
    assert data.output_labels == ['y1']
    assert data.universe == 7


def test_dataset_read_only():

    data = DataSet(np.zeros((3, 1)), np.zeros(3))

    with pytest.raises(ValueError):
        data.inputs[0, 0] = 1.0


def test_dataset_errors():

    with pytest.raises(DimensionMismatch):
        DataSet(np.zeros((4, 2)), np.zeros(3))
    with pytest.raises(TooFewSamples):
        DataSet(np.zeros((1, 2)), np.zeros(1))
    with pytest.raises(NonFiniteSamples):
        DataSet([[1.0], [np.inf]], [1.0, 2.0])
    with pytest.raises(NonFiniteSamples):
        DataSet([[1.0], [2.0]], [1.0, np.nan])
    with pytest.raises(DimensionMismatch):
        DataSet(np.zeros((3, 2)), np.zeros(3), labels=['a'])


def test_select_and_take():

    inputs = np.arange(12.0).reshape(4, 3)
    data = DataSet(inputs, np.arange(4.0))

    assert np.array_equal(data.select(0b101), inputs[:, [0, 2]])

    taken = data.take([3, 1])
    assert np.array_equal(taken.inputs, inputs[[3, 1]])
    assert np.array_equal(taken.outputs[:, 0], [3.0, 1.0])


@pytest.mark.parametrize('mask', [0, 0b1000])
def test_check_subset_rejects(mask):

    data = DataSet(np.zeros((3, 3)), np.zeros(3))

    with pytest.raises(InvalidSubset):
        data.check_subset(mask)


def test_subset_helpers():

    assert subset_helpers.from_labels([1, 3]) == 5
    assert subset_helpers.to_labels(5) == [1, 3]
    assert subset_helpers.to_indices(5) == [0, 2]
    assert subset_helpers.fmt(5) == '(1,3)'
    assert subset_helpers.fmt(2) == '2'
    assert subset_helpers.full(3) == 7
    assert subset_helpers.popcount(0b1011) == 3

    with pytest.raises(InvalidSubset):
        subset_helpers.from_labels([0])
    with pytest.raises(InvalidSubset):
        subset_helpers.from_labels([4], n_inputs=3)


def test_iter_subsets():

    assert list(subset_helpers.iter_subsets(5)) == [0, 1, 4, 5]
    assert list(subset_helpers.iter_subsets(5, include_empty=False)) == \
        [1, 4, 5]
    assert subset_helpers.subsets_up_to(7, 2) == [1, 2, 4, 3, 5, 6]


def test_compress():

    labels, glob = subset_helpers.compress(0b1010)

    assert labels == [2, 4]
    assert glob == [0, 0b10, 0b1000, 0b1010]


def test_derive_seed():

    assert derive_seed(0, 1) == derive_seed(0, 1)
    assert derive_seed(0, 1) != derive_seed(0, 2)
    assert derive_seed(0, 1) != derive_seed(1, 1)
    assert 0 <= derive_seed(5, 3) < 2 ** 32


def test_str_helpers():

    assert str_to_labels('(1, 3)') == [1, 3]
    assert str_to_labels('2') == [2]
    assert str_to_labels('()') == []
    assert naked(' "x1"\t') == 'x1'

    with pytest.raises(ValueError):
        str_to_labels('(1,a)')
