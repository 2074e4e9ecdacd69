"""
    kernels
    ~~~~~~~

    Kernel evaluation, Gram matrix construction & bandwidth
    heuristics for both the input & the output spaces.

    Three families are supported:

        rbf:          exp(-||a - b||^2 / (2 bandwidth^2))
        linear:       a . b
        mahalanobis:  exp(-(a - b)' M+ (a - b) / (2 bandwidth^2))

    Gram matrices are dense. Distances go through scipy's cdist
    so a Gram matrix of a sample with itself is exactly symmetric
    & the rbf diagonal is exactly one.
"""

import numpy as np

from scipy.linalg import eigh, pinvh
from scipy.spatial.distance import cdist, pdist

import kgsa

from kgsa.exceptions import (DegenerateSample, DimensionMismatch,
                             InvalidKernelSpec, NonFiniteSamples,
                             TooFewSamples)


__all__ = ['KernelSpec', 'GramMatrix', 'cross_gram', 'eval_kernel',
           'features', 'gram_matrix', 'mahalanobis_metric',
           'median_heuristic', 'spread_heuristic']


RBF = 'rbf'
LINEAR = 'linear'
MAHALANOBIS = 'mahalanobis'

FAMILIES = (RBF, LINEAR, MAHALANOBIS)

METRIC_TOL = 1e-10


def as_samples(samples, what='samples'):
    """ Coerce to a finite 2-D float array of shape (N, d)

    A 1-D array is read as N scalar samples.

    :raise: NonFiniteSamples
    """

    arr = np.asarray(samples, dtype=float)

    if arr.ndim == 0:
        arr = arr.reshape(1, 1)
    elif arr.ndim == 1:
        arr = arr.reshape(-1, 1)
    elif arr.ndim != 2:
        raise DimensionMismatch('a 2-D sample matrix', '%s-D' % arr.ndim)

    if not np.all(np.isfinite(arr)):
        raise NonFiniteSamples(what)
    return arr


def _frozen(arr):
    """ Read-only float copy of an array """

    arr = np.array(arr, dtype=float)
    arr.setflags(write=False)
    return arr


class KernelSpec(object):
    """ An immutable symmetric positive-definite kernel definition

    :param family:
        one of 'rbf', 'linear' or 'mahalanobis'
    :param bandwidth:
        sigma of the rbf or lambda of the mahalanobis kernel,
        ignored by the linear kernel
    :param metric:
        symmetric PSD matrix M (mahalanobis only)
    :param metric_pinv:
        optional precomputed Moore-Penrose pseudo-inverse of M
    """

    def __init__(self, family, bandwidth=None, metric=None,
                 metric_pinv=None):

        if family not in FAMILIES:
            raise InvalidKernelSpec(detail='Unknown kernel family "%s", '
                                           'expected one of %s.'
                                    % (family, ', '.join(FAMILIES)))

        if family == LINEAR:
            bandwidth = None
        elif bandwidth is None or not np.isfinite(bandwidth) \
                or bandwidth <= 0:
            raise InvalidKernelSpec(detail='The %s kernel requires a '
                                           'finite bandwidth > 0, got %s.'
                                    % (family, bandwidth))

        transform = None
        if family == MAHALANOBIS:
            metric, metric_pinv = self._check_metric(metric, metric_pinv)
            vals, vecs = eigh(metric_pinv)
            transform = _frozen(vecs * np.sqrt(np.clip(vals, 0.0, None)))
        elif metric is not None:
            raise InvalidKernelSpec(detail='Only the mahalanobis kernel '
                                           'takes a metric matrix.')

        self._set('family', family)
        self._set('bandwidth', None if bandwidth is None else float(bandwidth))
        self._set('metric', metric)
        self._set('metric_pinv', metric_pinv)
        self._set('_transform', transform)

    @staticmethod
    def _check_metric(metric, metric_pinv):
        """ Validate M & compute M+ when it isn't given """

        if metric is None:
            raise InvalidKernelSpec(detail='The mahalanobis kernel '
                                           'requires a metric matrix.')

        metric = np.atleast_2d(np.asarray(metric, dtype=float))
        if metric.shape[0] != metric.shape[1]:
            raise InvalidKernelSpec(detail='The metric matrix must be '
                                           'square, got %s.'
                                    % (metric.shape,))
        if not np.all(np.isfinite(metric)):
            raise NonFiniteSamples('metric matrix')

        scale = max(1.0, float(np.max(np.abs(metric))))
        if np.max(np.abs(metric - metric.T)) > METRIC_TOL * scale:
            raise InvalidKernelSpec(detail='The metric matrix must be '
                                           'symmetric.')
        if np.min(eigh(metric, eigvals_only=True)) < -METRIC_TOL * scale:
            raise InvalidKernelSpec(detail='The metric matrix must be '
                                           'positive semi-definite.')

        if metric_pinv is None:
            metric_pinv = pinvh(metric, atol=0.0, rtol=kgsa.config.PINV_RTOL)
        metric_pinv = np.atleast_2d(np.asarray(metric_pinv, dtype=float))

        if metric_pinv.shape != metric.shape:
            raise DimensionMismatch(metric.shape, metric_pinv.shape)
        return _frozen(metric), _frozen(metric_pinv)

    def _set(self, name, value):

        object.__setattr__(self, name, value)

    def __setattr__(self, name, value):

        raise AttributeError('KernelSpec is immutable')

    def __eq__(self, other):

        try:
            return self.family == other.family and \
                self.bandwidth == other.bandwidth and \
                _same(self.metric, other.metric)
        except AttributeError:
            return False

    def __ne__(self, other):

        return not self == other

    def __hash__(self):

        return hash((self.family, self.bandwidth, self.dim))

    def __repr__(self):

        name = self.__class__.__name__

        if self.family == LINEAR:
            return '%s(%r)' % (name, self.family)
        elif self.family == RBF:
            return '%s(%r, bandwidth=%r)' % (name, self.family, self.bandwidth)
        return '%s(%r, bandwidth=%r, dim=%s)' % (name, self.family,
                                                 self.bandwidth, self.dim)

    @classmethod
    def rbf(cls, bandwidth):
        """ Gaussian RBF kernel with the given sigma """

        return cls(RBF, bandwidth=bandwidth)

    @classmethod
    def linear(cls):
        """ Linear (dot product) kernel """

        return cls(LINEAR)

    @classmethod
    def mahalanobis(cls, bandwidth, metric, metric_pinv=None):
        """ Mahalanobis kernel with metric M & bandwidth lambda """

        return cls(MAHALANOBIS, bandwidth=bandwidth, metric=metric,
                   metric_pinv=metric_pinv)

    @classmethod
    def from_dict(cls, data):
        """ Rebuild a spec from the output of to_dict """

        return cls(data['family'], bandwidth=data.get('bandwidth'),
                   metric=data.get('metric'),
                   metric_pinv=data.get('metric_pinv'))

    @property
    def dim(self):
        """ Sample dimension the kernel is bound to, None if any """

        if self.metric is None:
            return None
        return self.metric.shape[0]

    def with_bandwidth(self, bandwidth):
        """ Same kernel, different bandwidth """

        if self.family == MAHALANOBIS:
            return KernelSpec(self.family, bandwidth=bandwidth,
                              metric=self.metric,
                              metric_pinv=self.metric_pinv)
        return KernelSpec(self.family, bandwidth=bandwidth)

    def to_dict(self):
        """ Convert the KernelSpec into a plain dict """

        data = {'family': self.family, 'bandwidth': self.bandwidth}

        if self.metric is not None:
            data['metric'] = self.metric.tolist()
            data['metric_pinv'] = self.metric_pinv.tolist()
        return data


def _same(left, right):

    if left is None or right is None:
        return left is None and right is None
    return left.shape == right.shape and np.array_equal(left, right)


class GramMatrix(object):
    """ Pairwise kernel values between two sample sets

    :param values: (N, M) ndarray, stored read-only
    :param spec: the KernelSpec that produced it
    :param row_ids: sample ids of the rows
    :param col_ids: sample ids of the columns
    """

    def __init__(self, values, spec, row_ids=None, col_ids=None):

        values = np.asarray(values, dtype=float)
        values.setflags(write=False)

        self.values = values
        self.spec = spec
        self.row_ids = np.arange(values.shape[0]) if row_ids is None \
            else np.asarray(row_ids)
        self.col_ids = np.arange(values.shape[1]) if col_ids is None \
            else np.asarray(col_ids)

    def __array__(self, dtype=None, copy=None):

        if dtype is None:
            return self.values
        return self.values.astype(dtype)

    def __repr__(self):

        return 'GramMatrix(%s, %r)' % (self.shape, self.spec)

    @property
    def shape(self):
        """ Shape of the value matrix """

        return self.values.shape

    @property
    def is_square(self):
        """ Boolean of a Gram matrix of a sample with itself """

        return self.values.shape[0] == self.values.shape[1]


def features(spec, samples):
    """ Samples mapped so a Euclidean distance is the kernel's distance

    Identity for the rbf & linear kernels. For the mahalanobis
    kernel the rows are multiplied by T where T T' = M+.

    :return: (N, d) ndarray
    :raise: DimensionMismatch
    """

    arr = as_samples(samples)

    if spec.family != MAHALANOBIS:
        return arr
    if arr.shape[1] != spec.dim:
        raise DimensionMismatch('%s columns' % spec.dim,
                                '%s columns' % arr.shape[1])
    return arr.dot(spec._transform)  # pylint: disable=protected-access


def _values(spec, rows, cols):

    if spec.family == LINEAR:
        return rows.dot(cols.T)

    dist = cdist(features(spec, rows), features(spec, cols), 'sqeuclidean')
    return np.exp(-dist / (2.0 * spec.bandwidth ** 2))


def cross_gram(spec, rows, cols):
    """ Kernel values of every row sample against every col sample

    :param spec: KernelSpec
    :param rows: (N, d) samples
    :param cols: (M, d) samples
    :return: GramMatrix with (N, M) values
    :raise: DimensionMismatch, NonFiniteSamples
    """

    rows = as_samples(rows)
    cols = as_samples(cols)

    if rows.shape[1] != cols.shape[1]:
        raise DimensionMismatch('%s columns' % rows.shape[1],
                                '%s columns' % cols.shape[1])

    return GramMatrix(_values(spec, rows, cols), spec)


def gram_matrix(spec, samples):
    """ Square Gram matrix of a sample with itself

    :param spec: KernelSpec
    :param samples: (N, d) samples, N >= 1
    :return: GramMatrix with symmetric (N, N) values
    :raise: TooFewSamples, NonFiniteSamples
    """

    samples = as_samples(samples)

    if samples.shape[0] < 1:
        raise TooFewSamples(1, 0)

    values = _values(spec, samples, samples)
    if spec.family == LINEAR:
        values = 0.5 * (values + values.T)
    return GramMatrix(values, spec)


def eval_kernel(spec, a, b):
    """ Kernel value of two single samples

    :param spec: KernelSpec
    :param a: sample vector
    :param b: sample vector of the same dimension
    :return: float
    :raise: DimensionMismatch, NonFiniteSamples
    """

    a = np.atleast_1d(np.asarray(a, dtype=float))
    b = np.atleast_1d(np.asarray(b, dtype=float))

    if a.ndim != 1 or b.ndim != 1 or a.shape != b.shape:
        raise DimensionMismatch(a.shape, b.shape)

    return float(cross_gram(spec, a[None, :], b[None, :]).values[0, 0])


def median_heuristic(samples, max_pairs=None, seed=0):
    """ Median of the pairwise Euclidean distances of the samples

    Exact when the sample has at most max_pairs distinct pairs,
    otherwise max_pairs pairs of distinct rows are drawn with a
    generator seeded by `seed`.

    :param samples: (N, d) samples, N >= 2
    :param max_pairs: int, defaults to config.MEDIAN_MAX_PAIRS
    :param seed: int
    :return: float bandwidth
    :raise: TooFewSamples, DegenerateSample
    """

    samples = as_samples(samples)
    count = samples.shape[0]
    max_pairs = max_pairs or kgsa.config.MEDIAN_MAX_PAIRS

    if count < 2:
        raise TooFewSamples(2, count)

    if count * (count - 1) // 2 <= max_pairs:
        dists = pdist(samples)
    else:
        rng = np.random.default_rng(seed)
        left = rng.integers(0, count, size=max_pairs)
        right = rng.integers(0, count - 1, size=max_pairs)
        right = right + (right >= left)
        diff = samples[left] - samples[right]
        dists = np.sqrt(np.sum(diff * diff, axis=1))

    median = float(np.median(dists))
    if median <= 0.0:
        raise DegenerateSample()
    return median


def spread_heuristic(samples):
    """ Square root of the trace of the sample covariance

    For scalar outputs this is the sample standard deviation.

    :param samples: (N, m) samples, N >= 2
    :return: float bandwidth
    :raise: TooFewSamples, DegenerateSample
    """

    samples = as_samples(samples)

    if samples.shape[0] < 2:
        raise TooFewSamples(2, samples.shape[0])

    cov = np.atleast_2d(np.cov(samples, rowvar=False))
    spread = float(np.sqrt(np.trace(cov)))

    if spread <= 0.0:
        raise DegenerateSample(detail='degenerate sample, zero spread')
    return spread


def mahalanobis_metric(samples, tol=None):
    """ Sample covariance M of the inputs & its pseudo-inverse M+

    Eigenvalues of M below tol times the largest one are treated
    as zero when forming M+, so exactly collinear inputs are fine.

    :param samples: (N, d) samples, N >= 2
    :param tol: relative truncation, defaults to config.PINV_RTOL
    :return: tuple of (M, M+) as (d, d) ndarrays
    :raise: TooFewSamples, NonFiniteSamples
    """

    samples = as_samples(samples)
    tol = kgsa.config.PINV_RTOL if tol is None else tol

    if samples.shape[0] < 2:
        raise TooFewSamples(2, samples.shape[0])

    metric = np.atleast_2d(np.cov(samples, rowvar=False))
    return metric, pinvh(metric, atol=0.0, rtol=tol)
