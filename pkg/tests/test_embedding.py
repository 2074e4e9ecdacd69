""" Conditional mean embeddings, ISFs & their beta averages """

import numpy as np
import pytest

from kgsa.data import DataSet
from kgsa.embedding import (IndexEstimate, NormalizationStats, beta_cme,
                            factorize, fit_cme, isf_dist, isf_norm,
                            isf_profile, mmd2_unbiased, normalization_stats)
from kgsa.exceptions import (DegenerateDenominator, DimensionMismatch,
                             FactorizationFailure, InvalidConfig)
from kgsa.kernels import KernelSpec, median_heuristic, spread_heuristic


def _model(data, mask=1, lam=1e-2):

    kernel = KernelSpec.rbf(median_heuristic(data.select(mask)))
    output = KernelSpec.rbf(spread_heuristic(data.outputs))
    return fit_cme(data, mask, kernel, output, lam)


def test_normalization_stats():

    stats = normalization_stats(np.array([[2.0, 1.0], [1.0, 2.0]]))

    assert stats == NormalizationStats(2.0, 1.0)
    assert stats.denominator == 1.0
    assert np.allclose(stats.normalize([1.5, 2.0]), [0.5, 1.0])


def test_normalization_stats_off_diagonal_mean():

    gram = np.array([[5.0, 1.0, 2.0],
                     [1.0, 7.0, 3.0],
                     [2.0, 3.0, 9.0]])
    stats = normalization_stats(gram)

    assert stats.c_y == pytest.approx(7.0)
    assert stats.c_yy == pytest.approx(2.0)


def test_degenerate_denominator():

    data = DataSet(np.random.default_rng(0).standard_normal((10, 1)),
                   np.full(10, 3.0))

    with pytest.raises(DegenerateDenominator):
        fit_cme(data, 1, KernelSpec.rbf(1.0), KernelSpec.rbf(1.0), 1e-2)


def test_lambda_must_be_positive(data1):

    for lam in (0.0, -1.0, None, float('inf')):
        with pytest.raises(InvalidConfig):
            fit_cme(data1, 1, KernelSpec.rbf(1.0), KernelSpec.linear(), lam)


def test_factorize_without_jitter():

    gram = np.array([[1.0, 0.5], [0.5, 1.0]])
    _, jitter = factorize(gram, 1e-3)

    assert jitter == 0.0


def test_factorize_escalates_jitter():

    gram = np.ones((2, 2)) - 1e-9 * np.eye(2)
    _, jitter = factorize(gram, 0.0)

    assert 0.0 < jitter <= 1e-6


def test_factorize_failure():

    with pytest.raises(FactorizationFailure):
        factorize(np.array([[1.0, 2.0], [2.0, 1.0]]), 1e-3)


def test_beta_near_one_for_deterministic_output():
    """ Y = X with the same kernel on both sides & a tiny lambda """

    inputs = np.random.default_rng(1).uniform(-2.0, 2.0, 150)
    data = DataSet(inputs, inputs)
    kernel = KernelSpec.rbf(0.5)

    model = fit_cme(data, 1, kernel, kernel, 1e-8)
    estimate = beta_cme(model, data)

    assert estimate.value == pytest.approx(1.0, abs=1e-3)
    assert estimate.estimator == 'CME-N'
    assert estimate.n_samples == 150


def test_gamma_d_non_negative(noise_data):

    model = _model(noise_data)
    profile = isf_profile(model, np.linspace(-2.0, 2.0, 9))

    assert np.all(profile.gamma_d >= -1e-10)
    assert beta_cme(model, noise_data, variant='D').value >= -1e-10


def test_relevant_input_beats_irrelevant(noise_data):

    relevant = beta_cme(_model(noise_data, 1), noise_data).value
    irrelevant = beta_cme(_model(noise_data, 2), noise_data).value

    assert relevant > irrelevant + 0.2


def test_profile_matches_pointwise(noise_data):

    model = _model(noise_data)
    grid = np.array([-1.0, 0.0, 0.5])
    profile = isf_profile(model, grid)

    for pos, point in enumerate(grid):
        assert profile.gamma_n[pos] == pytest.approx(isf_norm(model, point))
        assert profile.gamma_d[pos] == pytest.approx(isf_dist(model, point))


def test_beta_is_mean_of_isf_at_training_inputs():

    rng = np.random.default_rng(2)
    inputs = rng.standard_normal(30)
    data = DataSet(inputs, inputs ** 2 + 0.1 * rng.standard_normal(30))
    model = _model(data, lam=1e-1)

    for variant, isf in (('N', isf_norm), ('D', isf_dist)):
        expected = np.mean([isf(model, x) for x in inputs])
        assert beta_cme(model, data, variant=variant).value == \
            pytest.approx(expected)


def test_profile_flags_outside_hull(noise_data):

    model = _model(noise_data)
    profile = isf_profile(model, [[0.0], [50.0]])

    assert profile.outside_hull.tolist() == [False, True]


def test_query_dimension_mismatch(noise_data):

    model = _model(noise_data)

    with pytest.raises(DimensionMismatch):
        isf_norm(model, [0.0, 1.0])
    with pytest.raises(DimensionMismatch):
        isf_profile(model, np.zeros((3, 2)))


def test_beta_wrong_data(noise_data, data1):

    model = _model(noise_data)

    with pytest.raises(DimensionMismatch):
        beta_cme(model, data1)
    with pytest.raises(InvalidConfig):
        beta_cme(model, noise_data, variant='X')


def test_weights_inverse_of_regularized_gram(noise_data):

    data = noise_data.take(np.arange(20))
    model = _model(data, lam=1e-1)
    eye = np.eye(20)

    assert np.allclose(model.weights.dot(model.gram + 0.1 * eye), eye,
                       atol=1e-8)


def test_mmd2():

    rng = np.random.default_rng(4)
    kernel = KernelSpec.rbf(1.0)
    null = np.array([mmd2_unbiased(rng.standard_normal(100),
                                   rng.standard_normal(100), kernel)
                     for _ in range(200)])
    shifted = mmd2_unbiased(rng.standard_normal(400),
                            2.0 + rng.standard_normal(400), kernel)

    assert abs(null.mean()) < 3.0 * null.std(ddof=1) / np.sqrt(len(null))
    assert np.any(null < 0.0)
    assert shifted > 0.4


def test_index_estimate():

    est = IndexEstimate(5, 1.02, 'CME-N', 100, seed=3,
                        hyperparameters={'lambda': 0.1})

    assert est.clamped == 1.0
    assert IndexEstimate(1, -0.1, 'NN-F', 10).clamped == 0.0

    back = IndexEstimate.from_dict(est.to_dict())
    assert (back.subset, back.value, back.seed) == (5, 1.02, 3)
    assert back.hyperparameters == {'lambda': 0.1}
