""" Affine oracles, copula sampling & the flow reactor """

import numpy as np
import pytest

from scipy import stats
from scipy.integrate import solve_ivp

import kgsa

from kgsa.benchmarks import (BENCHMARKS, CopulaSpec, Marginal,
                             analytic_isf, analytic_rbf_beta,
                             analytic_variance_beta, eval_affine,
                             generate_benchmark, nearest_psd, reactor_copula,
                             sample_gaussian_copula, sample_mvn,
                             simulate_reactor, simulate_reactor_batch)
from kgsa.benchmarks.copula import symmetric_from_upper
from kgsa.benchmarks.reactor import (CORRELATION_UPPER, RATE_MEANS,
                                     ReactorConfig, arrhenius_rate,
                                     integrate, rate_constants, reactor_rhs)
from kgsa.decomposition import IndexTable
from kgsa.exceptions import (DimensionMismatch, IntegratorStepError,
                             InvalidConfig, NonFiniteSamples,
                             UnknownBenchmark)
from kgsa.utils.subset_helpers import from_labels, full, iter_subsets


"""
    Affine systems
    ~~~~~~~~~~~~~~
"""


def test_eval_affine(system1, system2):

    assert eval_affine(system1, [1.0, 1.0, 1.0]) == pytest.approx(7.0)
    assert eval_affine(system1, [0.0, 0.0, 0.0]) == 0.0
    assert eval_affine(system2, [1.0, 1.0, 1.0, 5.0]) == pytest.approx(4.0)
    assert eval_affine(system1, np.ones((4, 3))).shape == (4,)

    with pytest.raises(DimensionMismatch):
        eval_affine(system1, [1.0, 2.0])


def test_variances(system1, system2):

    assert system1.variance == pytest.approx(23.404)
    assert system2.variance == pytest.approx(7.4)


def test_linear_kernel_betas(system1):

    expected = {(1,): 0.384, (2,): 0.560, (3,): 0.548, (2, 3): 0.6155,
                (1, 2): 0.9445, (1, 2, 3): 1.0}

    for labels, value in expected.items():
        assert analytic_variance_beta(system1, from_labels(labels)) == \
            pytest.approx(value, abs=1e-3)


def test_rbf_kernel_betas(system2):

    expected = {(1,): 0.0812, (2,): 0.2223, (3,): 0.5221, (4,): 0.2573,
                (1, 2, 3): 1.0}

    for labels, value in expected.items():
        assert analytic_rbf_beta(system2, from_labels(labels), 2.7203) == \
            pytest.approx(value, abs=1e-3)


@pytest.mark.parametrize('bandwidth', [None, 0.5, 2.7203, 10.0])
def test_analytic_betas_monotone(system2, bandwidth):

    def beta(mask):
        if bandwidth is None:
            return analytic_variance_beta(system2, mask)
        return analytic_rbf_beta(system2, mask, bandwidth)

    table = IndexTable(4, {mask: beta(mask)
                           for mask in iter_subsets(full(4), False)})

    assert table.monotonicity_violations() == []
    assert table[full(4)] == pytest.approx(1.0)


def test_analytic_isf(system2):

    points = np.linspace(-2.0, 2.0, 9)
    curve = analytic_isf(system2, 0b100, 2.7203, points)
    beta = analytic_rbf_beta(system2, 0b100, 2.7203)

    assert np.allclose(curve.gamma_n, beta)
    assert np.all(curve.gamma_d >= 0.0)
    assert np.argmin(curve.gamma_d) == 4
    assert np.allclose(curve.gamma_d, curve.gamma_d[::-1])


def test_sample_mvn_seeded(system1):

    first = sample_mvn(system1.mean, system1.cov, 50, seed=3)

    assert first.shape == (50, 3)
    assert np.array_equal(first, sample_mvn(system1.mean, system1.cov, 50, 3))


def test_sample_mvn_correlation(system1):

    draws = sample_mvn(system1.mean, system1.cov, 100000, seed=0)

    assert np.corrcoef(draws[:, 1], draws[:, 2])[0, 1] == \
        pytest.approx(0.8, abs=0.01)
    assert abs(np.corrcoef(draws[:, 0], draws[:, 1])[0, 1]) < 0.01


def test_sample_mvn_degenerate():

    assert np.allclose(sample_mvn([1.0, 2.0], np.zeros((2, 2)), 5, 0),
                       [[1.0, 2.0]] * 5)

    draws = sample_mvn([0.0, 0.0], [[1.0, 1.0], [1.0, 1.0]], 100, 1)
    assert np.allclose(draws[:, 0], draws[:, 1], atol=1e-10)


def test_sample_mvn_asymmetric():

    with pytest.raises(InvalidConfig):
        sample_mvn([0.0, 0.0], [[1.0, 0.5], [0.0, 1.0]], 5, 0)


"""
    Gaussian copula
    ~~~~~~~~~~~~~~~
"""


def test_copula_uniform_marginals():

    spec = CopulaSpec([Marginal.uniform(0.0, 1.0)] * 2,
                      [[1.0, 0.5], [0.5, 1.0]])
    draws = sample_gaussian_copula(spec, 20000, seed=2)

    assert draws.min() >= 0.0 and draws.max() <= 1.0
    assert draws.mean(axis=0) == pytest.approx([0.5, 0.5], abs=0.01)
    assert stats.kstest(draws[:, 0], 'uniform').statistic < 0.02


def test_copula_mixed_marginals_ks():

    marginals = [Marginal.normal(2.0, 0.5), Marginal.uniform(-1.0, 3.0),
                 Marginal.normal(-4.0, 2.0)]
    spec = CopulaSpec(marginals, [[1.0, 0.6, -0.3],
                                  [0.6, 1.0, 0.2],
                                  [-0.3, 0.2, 1.0]])
    draws = sample_gaussian_copula(spec, 10000, seed=8)

    for col, marginal in enumerate(marginals):
        assert stats.kstest(draws[:, col], marginal.cdf).statistic < 0.02


def test_copula_normal_marginals_are_affine_latents():

    spec = reactor_copula(correlated=True)
    draws = sample_gaussian_copula(spec, 500, seed=4)
    latent = sample_mvn(np.zeros(8), spec.repaired, 500, 4)

    means = np.array([m.params[0] for m in spec.marginals])
    stds = np.array([m.params[1] for m in spec.marginals])

    assert np.allclose(draws, means + stds * latent, atol=1e-6)


def test_reactor_copula_marginals():

    draws = sample_gaussian_copula(reactor_copula(False), 10000, seed=5)

    for col, marginal in enumerate(reactor_copula(False).marginals):
        mu, sigma = marginal.params
        assert stats.kstest(draws[:, col], 'norm',
                            args=(mu, sigma)).statistic < 0.02


def test_reactor_copula_correlation():

    draws = sample_gaussian_copula(reactor_copula(True), 20000, seed=6)
    corr = np.corrcoef(draws, rowvar=False)

    assert corr[6, 7] >= 0.995
    assert corr[0, 1] == pytest.approx(0.997, abs=0.005)
    assert abs(corr[0, 6]) < 0.03


def test_symmetric_from_upper():

    matrix = symmetric_from_upper(CORRELATION_UPPER)

    assert matrix.shape == (8, 8)
    assert np.allclose(matrix, matrix.T)
    assert np.allclose(np.diag(matrix), 1.0)
    assert matrix[6, 7] == 1.0 and matrix[4, 5] == 1.0


def test_nearest_psd_keeps_psd():

    matrix = np.array([[1.0, 0.3], [0.3, 1.0]])

    assert np.array_equal(nearest_psd(matrix), matrix)


def test_nearest_psd_repairs():

    fixed = nearest_psd(np.array([[1.0, 1.01], [1.01, 1.0]]))

    assert np.allclose(np.diag(fixed), 1.0)
    assert fixed[0, 1] <= 1.0
    assert np.linalg.eigvalsh(fixed).min() >= -1e-12


def test_reactor_correlations_barely_move():

    matrix = symmetric_from_upper(CORRELATION_UPPER)
    fixed = nearest_psd(matrix)

    assert np.max(np.abs(fixed - matrix)) < 0.05
    assert np.linalg.eigvalsh(fixed).min() >= -1e-12


def test_copula_spec_validation():

    with pytest.raises(InvalidConfig):
        CopulaSpec([Marginal.normal(0.0, 1.0)] * 2, [[2.0, 0.0], [0.0, 1.0]])
    with pytest.raises(InvalidConfig):
        CopulaSpec([Marginal.normal(0.0, 1.0)], np.eye(2))
    with pytest.raises(InvalidConfig):
        Marginal.normal(0.0, 0.0)
    with pytest.raises(InvalidConfig):
        Marginal.uniform(1.0, 1.0)
    with pytest.raises(InvalidConfig):
        Marginal('gamma', 1.0, 1.0)


"""
    Flow reactor
    ~~~~~~~~~~~~
"""


@pytest.fixture
def reactor():
    return ReactorConfig()


@pytest.fixture
def nominal(reactor):
    return rate_constants(reactor, [RATE_MEANS])


def test_arrhenius():

    assert arrhenius_rate(2.0, 0.0, 300.0, 0.008314) == pytest.approx(100.0)
    assert arrhenius_rate(0.0, 0.008314 * 300.0, 300.0, 0.008314) == \
        pytest.approx(np.exp(-1.0))

    with pytest.raises(InvalidConfig):
        arrhenius_rate(1.0, 1.0, 0.0, 0.008314)


def test_nominal_rates(nominal):

    assert nominal.shape == (1, 4)
    assert nominal[0] == pytest.approx([0.418, 0.101, 3.2e-4, 5.0e-4],
                                       rel=0.02)


def test_rate_constants_checks(reactor):

    with pytest.raises(DimensionMismatch):
        rate_constants(reactor, np.zeros((2, 7)))
    with pytest.raises(NonFiniteSamples):
        rate_constants(reactor, [[np.nan] * 8])


def test_initial_derivatives(reactor, nominal):

    rhs = reactor_rhs(reactor.initial[None, :], nominal)[0]
    k_1, k_2 = nominal[0, 0], nominal[0, 1]
    product = 0.150 * 0.375

    assert rhs[0] == pytest.approx(-(k_1 + k_2) * product)
    assert rhs[2] == pytest.approx(k_1 * product)
    assert rhs[3] == pytest.approx(k_2 * product)
    assert rhs[4] == 0.0


def test_zero_rates_stay_put(reactor):

    final = integrate(reactor.initial, np.zeros((1, 4)), reactor.t_res, 10)

    assert np.array_equal(final[0], reactor.initial)


def test_mass_balances(reactor):

    final = simulate_reactor(reactor)
    conc_a, conc_b, conc_c, conc_d, conc_e = final

    assert conc_a + conc_c + conc_d + conc_e == pytest.approx(0.150,
                                                              abs=1e-12)
    assert 0.375 - conc_b == pytest.approx(conc_c + conc_d + 2.0 * conc_e,
                                           abs=1e-12)
    assert np.all(final >= 0.0)


def test_matches_adaptive_solver(reactor, nominal):

    def rhs(_, state):
        return reactor_rhs(state[None, :], nominal)[0]

    ref = solve_ivp(rhs, (0.0, reactor.t_res), reactor.initial,
                    method='DOP853', rtol=1e-11, atol=1e-14)

    assert simulate_reactor(reactor)[3] == pytest.approx(ref.y[3, -1],
                                                         abs=1e-6)


def test_rk4_fourth_order(reactor, nominal):

    finals = [integrate(reactor.initial, nominal, reactor.t_res, steps)[0, 3]
              for steps in (600, 1200, 2400)]
    order = np.log2(abs(finals[0] - finals[1]) / abs(finals[1] - finals[2]))

    assert order > 3.5


def test_batch_refines_until_converged(reactor):

    params = np.array([RATE_MEANS, RATE_MEANS])
    finals, steps = simulate_reactor_batch(reactor, params, steps=600)

    assert finals.shape == (2, 5)
    assert steps >= 1200
    assert np.allclose(finals[0], finals[1])


def test_integrator_step_error(reactor, monkeypatch):

    monkeypatch.setattr(kgsa.config, 'REACTOR_CONVERGENCE_TOL', 1e-30)

    with pytest.raises(IntegratorStepError):
        simulate_reactor(reactor, steps=600, refine=False)


def test_reactor_config_validation():

    with pytest.raises(InvalidConfig):
        ReactorConfig.load({'a0': -0.1})
    with pytest.raises(InvalidConfig):
        ReactorConfig.load({'temperature': 0.0})
    with pytest.raises(InvalidConfig):
        ReactorConfig.load({'rates': [1.0, 2.0]})


"""
    Benchmark generation
    ~~~~~~~~~~~~~~~~~~~~
"""


def test_generate_affine():

    data = generate_benchmark('example2', 40, seed=1)

    assert (data.n_samples, data.n_inputs, data.n_outputs) == (40, 4, 1)
    assert np.allclose(data.outputs[:, 0],
                       data.inputs.dot([1.0, 1.0, 2.0, 0.0]))


def test_generate_reactor():

    data = generate_benchmark('reactor-indep', 20, seed=2)

    assert (data.n_samples, data.n_inputs) == (20, 8)
    assert np.all(data.outputs >= 0.0)
    assert np.all(data.outputs <= 0.150)


def test_generate_unknown():

    assert 'reactor-corr' in BENCHMARKS

    with pytest.raises(UnknownBenchmark):
        generate_benchmark('lorenz', 10, seed=0)
