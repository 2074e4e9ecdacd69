"""
    Shared fixtures of the kgsa test suite
"""

import numpy as np
import pytest

from kgsa.benchmarks import affine_dataset, analytic_variance_beta, \
    example1, example2
from kgsa.data import DataSet
from kgsa.decomposition import IndexTable
from kgsa.utils import subset_helpers


@pytest.fixture
def system1():
    return example1()


@pytest.fixture
def system2():
    return example2()


@pytest.fixture
def table1(system1):
    """ Exact linear kernel IndexTable of Example 1, every subset """

    universe = subset_helpers.full(system1.n_inputs)
    return IndexTable(system1.n_inputs, {
        mask: analytic_variance_beta(system1, mask)
        for mask in subset_helpers.iter_subsets(universe, include_empty=False)
    })


@pytest.fixture
def data1(system1):
    return affine_dataset(system1, 200, seed=7)


@pytest.fixture
def data2(system2):
    return affine_dataset(system2, 120, seed=11)


@pytest.fixture
def noise_data():
    """ 2 inputs, the output only depends on the first """

    rng = np.random.default_rng(3)
    inputs = rng.standard_normal((300, 2))
    outputs = np.sin(2.0 * inputs[:, 0]) + 0.1 * rng.standard_normal(300)
    return DataSet(inputs, outputs)


def random_table(n_inputs, seed):
    """ A table of every subset with random values in [0, 1] """

    rng = np.random.default_rng(seed)
    universe = subset_helpers.full(n_inputs)

    return IndexTable(n_inputs, {
        mask: float(rng.uniform())
        for mask in subset_helpers.iter_subsets(universe, include_empty=False)
    })


@pytest.fixture
def make_random_table():
    return random_table
