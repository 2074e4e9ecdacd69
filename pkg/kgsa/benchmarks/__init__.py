"""
    benchmarks
    ~~~~~~~~~~

    Synthetic data sets with known sensitivity structure: two
    correlated Gaussian affine systems & the continuous flow
    reactor with independent or correlated rate parameters.
"""

import logging

import numpy as np

from kgsa.benchmarks.affine import (AffineSystem, affine_dataset,
                                    analytic_isf, analytic_rbf_beta,
                                    analytic_variance_beta, eval_affine,
                                    example1, example2, sample_mvn)
from kgsa.benchmarks.copula import (CopulaSpec, Marginal, nearest_psd,
                                    sample_gaussian_copula,
                                    symmetric_from_upper)
from kgsa.benchmarks.reactor import (CORRELATION_UPPER, RATE_MEANS,
                                     RATE_STDS, ReactorConfig,
                                     arrhenius_rate, simulate_reactor,
                                     simulate_reactor_batch)
from kgsa.data import DataSet
from kgsa.exceptions import UnknownBenchmark


LOG = logging.getLogger(__name__)

AFFINE_BENCHMARKS = ('example1', 'example2')
REACTOR_BENCHMARKS = ('reactor-indep', 'reactor-corr')
BENCHMARKS = AFFINE_BENCHMARKS + REACTOR_BENCHMARKS


def affine_system(name):
    """ AffineSystem of an affine benchmark by name

    :raise: UnknownBenchmark
    """

    if name == 'example1':
        return example1()
    elif name == 'example2':
        return example2()
    raise UnknownBenchmark(name, AFFINE_BENCHMARKS)


def reactor_copula(correlated=True):
    """ CopulaSpec of the 8 Arrhenius parameters

    Normal marginals with the nominal means & deviations coupled
    by CORRELATION_UPPER, or the identity when the
    inputs are independent.
    """

    marginals = [Marginal.normal(mu, sigma)
                 for mu, sigma in zip(RATE_MEANS, RATE_STDS)]

    if correlated:
        corr = symmetric_from_upper(CORRELATION_UPPER)
    else:
        corr = np.eye(len(marginals))
    return CopulaSpec(marginals, corr)


def reactor_dataset(n, seed, correlated=True, cfg=None):
    """ DataSet of n reactor runs, output [D] at the residence time """

    cfg = cfg or ReactorConfig()
    inputs = sample_gaussian_copula(reactor_copula(correlated), n, seed)
    finals, steps = simulate_reactor_batch(cfg, inputs)

    LOG.info('Simulated %d reactor runs with %d RK4 steps', n, steps)
    return DataSet(inputs, finals[:, 3])


def generate_benchmark(name, n, seed):
    """ DataSet of n draws of a named benchmark

    :param name: one of BENCHMARKS
    :param n: sample count
    :param seed: int
    :return: DataSet
    :raise: UnknownBenchmark
    """

    if name in AFFINE_BENCHMARKS:
        return affine_dataset(affine_system(name), n, seed)
    elif name == 'reactor-indep':
        return reactor_dataset(n, seed, correlated=False)
    elif name == 'reactor-corr':
        return reactor_dataset(n, seed, correlated=True)
    raise UnknownBenchmark(name, BENCHMARKS)


__all__ = [
    'AFFINE_BENCHMARKS',
    'BENCHMARKS',
    'AffineSystem',
    'CopulaSpec',
    'Marginal',
    'ReactorConfig',
    'affine_dataset',
    'affine_system',
    'analytic_isf',
    'analytic_rbf_beta',
    'analytic_variance_beta',
    'arrhenius_rate',
    'eval_affine',
    'generate_benchmark',
    'nearest_psd',
    'reactor_copula',
    'reactor_dataset',
    'sample_gaussian_copula',
    'sample_mvn',
    'simulate_reactor',
    'simulate_reactor_batch',
]
