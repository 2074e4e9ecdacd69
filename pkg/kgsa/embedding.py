"""
    embedding
    ~~~~~~~~~

    Mean embedding statistics, the unbiased MMD^2, conditional
    mean embedding (CME) regression & the inner statistical
    functions (ISFs) whose average over the data gives the
    single data set beta estimators.

    With L the input Gram matrix of a subset, K the output Gram
    matrix & W = (L + lam I)^-1 the embedding of Y given X_R = x
    is sum_i a_i(x) k(., y_i) where a(x) = W Gamma(x) & Gamma(x)
    is the column of input kernel values between the training
    inputs & x. Both ISFs are quadratic forms of a(x):

        gamma_N(x) = (a'Ka - c_yy) / (c_y - c_yy)
        gamma_D(x) = (1'K1 / N^2 + a'Ka - 2 1'Ka / N) / (c_y - c_yy)
"""

import logging

import numpy as np

from scipy.linalg import LinAlgError, cho_factor, cho_solve

import kgsa

from kgsa import signals
from kgsa.exceptions import (DegenerateDenominator, DimensionMismatch,
                             FactorizationFailure, InvalidConfig,
                             TooFewSamples)
from kgsa.kernels import as_samples, cross_gram, gram_matrix
from kgsa.utils import subset_helpers


LOG = logging.getLogger(__name__)

CME_N = 'CME-N'
CME_D = 'CME-D'
VARIANTS = {'N': CME_N, 'D': CME_D}


class NormalizationStats(object):
    """ U-statistic estimates of E[k(Y, Y)] & E[k(Y, Y')]

    :param c_y: Tr[K] / N
    :param c_yy: mean of the strictly off-diagonal entries of K
    """

    def __init__(self, c_y, c_yy):

        self.c_y = float(c_y)
        self.c_yy = float(c_yy)

    def __eq__(self, other):

        return isinstance(other, NormalizationStats) and \
            self.c_y == other.c_y and self.c_yy == other.c_yy

    def __ne__(self, other):

        return not self == other

    def __repr__(self):

        return 'NormalizationStats(c_y=%r, c_yy=%r)' % (self.c_y, self.c_yy)

    @property
    def denominator(self):
        """ c_y - c_yy, the normalization of every index """

        return self.c_y - self.c_yy

    def check(self):
        """ Ensure the denominator can normalize an index

        :return: the denominator
        :raise: DegenerateDenominator
        """

        denom = self.denominator

        if not denom > kgsa.config.DENOMINATOR_FLOOR:
            raise DegenerateDenominator(denom)
        return denom

    def normalize(self, values):
        """ (values - c_yy) / (c_y - c_yy) """

        return (np.asarray(values, dtype=float) - self.c_yy) / self.check()

    def to_dict(self):
        """ Convert into a plain dict """

        return {'c_y': self.c_y, 'c_yy': self.c_yy}


class IndexEstimate(object):
    """ A single estimated beta index & where it came from

    The raw value may fall slightly outside of [0, 1] from
    estimation noise. Clamping is up to the report.
    """

    def __init__(self, subset, value, estimator, n_samples, seed=None,
                 hyperparameters=None):

        self.subset = subset
        self.value = float(value)
        self.estimator = estimator
        self.n_samples = n_samples
        self.seed = seed
        self.hyperparameters = hyperparameters or {}

    def __repr__(self):

        return 'IndexEstimate(%s, %.4f, %s, N=%s, seed=%s)' % (
            subset_helpers.fmt(self.subset), self.value, self.estimator,
            self.n_samples, self.seed)

    @property
    def clamped(self):
        """ The value clamped into [0, 1] """

        return min(max(self.value, 0.0), 1.0)

    def to_dict(self):
        """ Convert into a plain dict """

        return {
            'subset': subset_helpers.to_labels(self.subset),
            'value': self.value,
            'estimator': self.estimator,
            'n_samples': self.n_samples,
            'seed': self.seed,
            'hyperparameters': self.hyperparameters,
        }

    @classmethod
    def from_dict(cls, data):
        """ Rebuild an estimate from the output of to_dict """

        return cls(subset_helpers.from_labels(data['subset']), data['value'],
                   data['estimator'], data['n_samples'], seed=data.get('seed'),
                   hyperparameters=data.get('hyperparameters'))


class IsfCurve(object):
    """ Both ISF variants evaluated along a grid of query points

    `outside_hull` flags the query points outside of the
    bounding box of the training inputs where the curve is an
    extrapolation.
    """

    def __init__(self, subset, points, gamma_n, gamma_d, outside_hull):

        self.subset = subset
        self.points = np.asarray(points, dtype=float)
        self.gamma_n = np.asarray(gamma_n, dtype=float)
        self.gamma_d = np.asarray(gamma_d, dtype=float)
        self.outside_hull = np.asarray(outside_hull, dtype=bool)

    def __len__(self):

        return self.points.shape[0]

    def to_dict(self):
        """ Convert into a plain dict of lists """

        return {
            'subset': subset_helpers.to_labels(self.subset),
            'points': self.points.tolist(),
            'gamma_n': self.gamma_n.tolist(),
            'gamma_d': self.gamma_d.tolist(),
            'outside_hull': self.outside_hull.tolist(),
        }

    @classmethod
    def from_dict(cls, data):
        """ Rebuild a curve from the output of to_dict """

        return cls(subset_helpers.from_labels(data['subset']),
                   data['points'], data['gamma_n'], data['gamma_d'],
                   data['outside_hull'])


class CmeModel(object):
    """ A fitted conditional mean embedding

    Everything is read-only after construction so a model can be
    queried from many threads at once.
    """

    def __init__(self, subset, input_kernel, output_kernel, lam, inputs,
                 gram, factor, jitter, output_gram, stats):

        self.subset = subset
        self.input_kernel = input_kernel
        self.output_kernel = output_kernel
        self.lam = float(lam)
        self.inputs = inputs
        self.gram = gram
        self.factor = factor
        self.jitter = jitter
        self.output_gram = output_gram
        self.stats = stats

        self.k_colsum = output_gram.sum(axis=0)
        self.k_total = float(self.k_colsum.sum())
        self.k_colsum.setflags(write=False)

    def __repr__(self):

        return 'CmeModel(%s, N=%s, lam=%r)' % (
            subset_helpers.fmt(self.subset), self.n_samples, self.lam)

    @property
    def n_samples(self):
        """ Number of training samples N """

        return self.inputs.shape[0]

    @property
    def weights(self):
        """ The explicit (N, N) weight matrix W = (L + lam I)^-1

        Only meant for inspection, every computation goes through
        the factorization.
        """

        eye = np.eye(self.n_samples)
        weights = cho_solve(self.factor, eye, check_finite=False)
        return 0.5 * (weights + weights.T)

    def hyperparameters(self):
        """ The kernels & regularization that produced the model """

        return {
            'input_kernel': self.input_kernel.to_dict(),
            'output_kernel': self.output_kernel.to_dict(),
            'lambda': self.lam,
            'jitter': self.jitter,
        }

    def solve(self, rhs):
        """ W . rhs through the Cholesky factor """

        return cho_solve(self.factor, rhs, check_finite=False)


def _gram_values(gram):

    return np.asarray(getattr(gram, 'values', gram), dtype=float)


def normalization_stats(gram):
    """ U-statistics of the output kernel from its Gram matrix

    The off-diagonal mean is 1'K1 - Tr[K] over N(N - 1) which is
    correct whatever the diagonal of K holds.

    :param gram: square GramMatrix or ndarray
    :return: NormalizationStats
    :raise: TooFewSamples, DimensionMismatch
    """

    values = _gram_values(gram)

    if values.ndim != 2 or values.shape[0] != values.shape[1]:
        raise DimensionMismatch('a square Gram matrix', values.shape)

    count = values.shape[0]
    if count < 2:
        raise TooFewSamples(2, count)

    trace = float(np.trace(values))
    total = float(values.sum())

    return NormalizationStats(trace / count,
                              (total - trace) / (count * (count - 1)))


def mmd2_unbiased(samples_a, samples_b, kernel):
    """ Unbiased U-statistic estimate of the squared MMD

    The within-sample means exclude the diagonal, the cross
    mean uses every pair.

    :param samples_a: (m, d) samples, m >= 2
    :param samples_b: (n, d) samples, n >= 2
    :param kernel: KernelSpec
    :return: float
    :raise: TooFewSamples
    """

    samples_a = as_samples(samples_a)
    samples_b = as_samples(samples_b)

    for samples in (samples_a, samples_b):
        if samples.shape[0] < 2:
            raise TooFewSamples(2, samples.shape[0])

    stats_a = normalization_stats(gram_matrix(kernel, samples_a))
    stats_b = normalization_stats(gram_matrix(kernel, samples_b))
    cross = cross_gram(kernel, samples_a, samples_b).values.mean()

    return stats_a.c_yy + stats_b.c_yy - 2.0 * float(cross)


def _jitters():
    """ The diagonal jitters tried in order when factoring """

    cfg = kgsa.config
    jitters = [0.0]
    jitter = cfg.JITTER_START

    while jitter <= cfg.JITTER_MAX * (1.0 + 1e-9):
        jitters.append(jitter)
        jitter *= cfg.JITTER_FACTOR
    return jitters


def factorize(gram, lam):
    """ Cholesky factor of L + lam I with jitter escalation

    :return: tuple of (cho_factor result, jitter used)
    :raise: FactorizationFailure
    """

    eye = np.eye(gram.shape[0])

    for jitter in _jitters():
        try:
            factor = cho_factor(gram + (lam + jitter) * eye, lower=True,
                                check_finite=False)
        except LinAlgError:
            continue

        if jitter:
            LOG.warning('Cholesky factorization needed a diagonal jitter of '
                        '%g on top of lambda %g', jitter, lam)
        return factor, jitter

    raise FactorizationFailure(kgsa.config.JITTER_MAX)


def fit_cme(data, subset, input_kernel, output_kernel, lam,
            output_gram=None):
    """ Fit the conditional mean embedding of Y given X_R

    :param data: DataSet
    :param subset: non-empty InputSubset bitmask
    :param input_kernel: KernelSpec over the subset's columns
    :param output_kernel: KernelSpec over the outputs
    :param lam: regularizer > 0
    :param output_gram:
        optional precomputed output Gram matrix so fits of many
        subsets on one data set share it
    :return: CmeModel
    :raise:
        InvalidConfig, InvalidSubset, FactorizationFailure,
        DegenerateDenominator
    """

    if lam is None or not np.isfinite(lam) or lam <= 0:
        raise InvalidConfig('lambda', detail='The regularizer lambda must '
                                             'be finite & > 0, got %s.' % lam)

    inputs = np.array(data.select(subset))
    inputs.setflags(write=False)

    if output_gram is None:
        output_gram = gram_matrix(output_kernel, data.outputs)
    output_gram = _gram_values(output_gram)

    if output_gram.shape != (data.n_samples, data.n_samples):
        raise DimensionMismatch((data.n_samples, data.n_samples),
                                output_gram.shape)

    stats = normalization_stats(output_gram)
    stats.check()

    gram = gram_matrix(input_kernel, inputs).values
    factor, jitter = factorize(gram, lam)

    model = CmeModel(subset, input_kernel, output_kernel, lam, inputs, gram,
                     factor, jitter, output_gram, stats)

    signals.post_fit.send(subset, model=model, jitter=jitter)
    return model


def _isf_values(model, gammas):
    """ Both ISFs for every column of input kernel values

    :param gammas: (N, Q) input kernel values against Q queries
    :return: tuple of (gamma_n, gamma_d) (Q,) ndarrays
    """

    count = model.n_samples
    coefs = model.solve(gammas)
    quad = np.sum(coefs * model.output_gram.dot(coefs), axis=0)
    cross = model.k_colsum.dot(coefs)

    denom = model.stats.check()
    gamma_n = (quad - model.stats.c_yy) / denom
    gamma_d = (model.k_total / count ** 2 + quad - 2.0 * cross / count) / denom

    return gamma_n, gamma_d


def _query(model, point):

    point = np.atleast_1d(np.asarray(point, dtype=float))
    width = model.inputs.shape[1]

    if point.shape != (width,):
        raise DimensionMismatch('a query of %s coordinates' % width,
                                point.shape)
    return cross_gram(model.input_kernel, model.inputs, point[None, :]).values


def isf_norm(model, point):
    """ The norm ISF gamma_N at a single query point

    :param model: CmeModel
    :param point: query of |R| coordinates
    :return: float
    :raise: DimensionMismatch
    """

    return float(_isf_values(model, _query(model, point))[0][0])


def isf_dist(model, point):
    """ The distance ISF gamma_D at a single query point

    :param model: CmeModel
    :param point: query of |R| coordinates
    :return: float
    :raise: DimensionMismatch
    """

    return float(_isf_values(model, _query(model, point))[1][0])


def beta_cme(model, data, variant='N', seed=None):
    """ Average one of the ISFs over the training inputs

    The input kernel values at the training inputs are the
    columns of L itself so no cross Gram matrix is built.

    :param model: CmeModel fitted on `data`
    :param data: DataSet the model was trained on
    :param variant: 'N' or 'D'
    :param seed: optional seed recorded with the estimate
    :return: IndexEstimate
    :raise: InvalidConfig, DimensionMismatch
    """

    try:
        tag = VARIANTS[variant]
    except KeyError:
        raise InvalidConfig('estimator', detail='Unknown CME variant "%s", '
                                                'expected N or D.' % variant)

    if data.n_samples != model.n_samples or \
            not np.array_equal(data.select(model.subset), model.inputs):
        raise DimensionMismatch('the training data of the model',
                                'a different data set')

    gamma_n, gamma_d = _isf_values(model, model.gram)
    values = gamma_n if variant == 'N' else gamma_d

    estimate = IndexEstimate(model.subset, values.mean(), tag,
                             model.n_samples, seed=seed,
                             hyperparameters=model.hyperparameters())

    signals.post_estimate.send(tag, subset=model.subset, estimate=estimate)
    return estimate


def isf_profile(model, grid):
    """ Both ISFs along a grid of query points, in grid order

    :param model: CmeModel
    :param grid: (Q, |R|) query points, a 1-D grid for |R| = 1
    :return: IsfCurve
    :raise: DimensionMismatch, TooFewSamples
    """

    points = as_samples(grid, what='grid points')

    if points.shape[0] < 1:
        raise TooFewSamples(1, 0, detail='The ISF grid is empty.')
    if points.shape[1] != model.inputs.shape[1]:
        raise DimensionMismatch('%s grid columns' % model.inputs.shape[1],
                                points.shape[1])

    gammas = cross_gram(model.input_kernel, model.inputs, points).values
    gamma_n, gamma_d = _isf_values(model, gammas)

    lower = model.inputs.min(axis=0)
    upper = model.inputs.max(axis=0)
    outside = np.any((points < lower) | (points > upper), axis=1)

    if outside.any():
        LOG.warning('%d of %d ISF query points of subset %s lie outside of '
                    'the training inputs, the curve is extrapolated there',
                    int(outside.sum()), len(outside),
                    subset_helpers.fmt(model.subset))

    return IsfCurve(model.subset, points, gamma_n, gamma_d, outside)
