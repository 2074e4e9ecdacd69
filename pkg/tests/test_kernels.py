""" Kernel specs, Gram matrices & bandwidth heuristics """

import numpy as np
import pytest

from kgsa.exceptions import (DegenerateSample, DimensionMismatch,
                             InvalidKernelSpec, NonFiniteSamples,
                             TooFewSamples)
from kgsa.kernels import (KernelSpec, as_samples, cross_gram, eval_kernel,
                          gram_matrix, mahalanobis_metric, median_heuristic,
                          spread_heuristic)


def test_rbf_value():

    spec = KernelSpec.rbf(1.0)

    assert eval_kernel(spec, [0.0], [1.0]) == pytest.approx(np.exp(-0.5))
    assert eval_kernel(spec, [2.0, 1.0], [2.0, 1.0]) == 1.0


def test_linear_value():

    assert eval_kernel(KernelSpec.linear(), [1.0, 2.0], [3.0, 4.0]) == 11.0


def test_linear_ignores_bandwidth():

    assert KernelSpec('linear', bandwidth=3.0).bandwidth is None


@pytest.mark.parametrize('family', ['rbf', 'linear'])
def test_gram_symmetric_psd(family):

    samples = np.random.default_rng(0).standard_normal((25, 3))
    spec = KernelSpec(family, bandwidth=1.3)
    values = gram_matrix(spec, samples).values

    assert np.allclose(values, values.T)
    assert np.linalg.eigvalsh(values).min() > -1e-10


def test_rbf_gram_unit_diagonal():

    samples = np.random.default_rng(1).standard_normal((10, 2))
    gram = gram_matrix(KernelSpec.rbf(0.7), samples)

    assert gram.is_square
    assert np.allclose(np.diag(gram.values), 1.0)


def test_gram_is_read_only():

    gram = gram_matrix(KernelSpec.rbf(1.0), [[0.0], [1.0]])

    with pytest.raises(ValueError):
        gram.values[0, 0] = 2.0


def test_mahalanobis_scalar_matches_rbf():
    """ A 1x1 metric v with bandwidth l is the rbf with l^2 v """

    samples = np.random.default_rng(2).standard_normal((15, 1))
    maha = KernelSpec.mahalanobis(1.0, [[4.0]])
    rbf = KernelSpec.rbf(2.0)

    assert np.allclose(gram_matrix(maha, samples).values,
                       gram_matrix(rbf, samples).values)


def test_mahalanobis_collinear_inputs():

    base = np.random.default_rng(4).standard_normal(40)
    samples = np.column_stack([base, 2.0 * base])
    metric, pinv = mahalanobis_metric(samples)

    assert metric.shape == (2, 2)
    assert np.all(np.isfinite(pinv))

    values = gram_matrix(KernelSpec.mahalanobis(1.0, metric, pinv),
                         samples).values
    assert np.all(np.isfinite(values))
    assert np.allclose(np.diag(values), 1.0)


@pytest.mark.parametrize('args', [
    ('poly', 1.0),
    ('rbf', 0.0),
    ('rbf', -1.0),
    ('rbf', None),
    ('rbf', float('nan')),
])
def test_invalid_spec(args):

    with pytest.raises(InvalidKernelSpec):
        KernelSpec(*args)


def test_invalid_metric():

    with pytest.raises(InvalidKernelSpec):
        KernelSpec.mahalanobis(1.0, [[1.0, 0.5], [0.0, 1.0]])
    with pytest.raises(InvalidKernelSpec):
        KernelSpec.mahalanobis(1.0, [[1.0, 0.0], [0.0, -1.0]])
    with pytest.raises(InvalidKernelSpec):
        KernelSpec.mahalanobis(1.0, None)
    with pytest.raises(InvalidKernelSpec):
        KernelSpec('rbf', 1.0, metric=[[1.0]])


def test_spec_immutable():

    spec = KernelSpec.rbf(1.0)

    with pytest.raises(AttributeError):
        spec.bandwidth = 2.0


def test_with_bandwidth_keeps_metric():

    spec = KernelSpec.mahalanobis(1.0, [[2.0, 0.5], [0.5, 1.0]])
    wider = spec.with_bandwidth(3.0)

    assert wider.family == 'mahalanobis'
    assert wider.bandwidth == 3.0
    assert np.array_equal(wider.metric, spec.metric)
    assert spec.bandwidth == 1.0


def test_spec_dict_round_trip():

    spec = KernelSpec.mahalanobis(0.5, [[2.0, 0.5], [0.5, 1.0]])

    assert KernelSpec.from_dict(spec.to_dict()) == spec
    assert KernelSpec.from_dict(KernelSpec.linear().to_dict()) == \
        KernelSpec.linear()
    assert KernelSpec.rbf(1.0) != KernelSpec.rbf(2.0)


def test_cross_gram_dimension_mismatch():

    with pytest.raises(DimensionMismatch):
        cross_gram(KernelSpec.rbf(1.0), np.zeros((3, 2)), np.zeros((2, 3)))


def test_as_samples():

    assert as_samples([1.0, 2.0, 3.0]).shape == (3, 1)

    with pytest.raises(NonFiniteSamples):
        as_samples([1.0, float('nan')])


def test_median_heuristic_exact():

    assert median_heuristic([[0.0], [1.0], [3.0]]) == 2.0


def test_median_heuristic_sampled_is_seeded():

    samples = np.random.default_rng(6).standard_normal((200, 2))

    first = median_heuristic(samples, max_pairs=500, seed=1)
    second = median_heuristic(samples, max_pairs=500, seed=1)

    assert first == second
    assert first == pytest.approx(median_heuristic(samples), rel=0.15)


def test_median_heuristic_errors():

    with pytest.raises(DegenerateSample):
        median_heuristic([[1.0], [1.0], [1.0]])
    with pytest.raises(TooFewSamples):
        median_heuristic([[1.0]])


def test_spread_heuristic():

    assert spread_heuristic([1.0, 2.0, 3.0, 4.0]) == \
        pytest.approx(np.std([1.0, 2.0, 3.0, 4.0], ddof=1))

    with pytest.raises(DegenerateSample):
        spread_heuristic([2.0, 2.0])
