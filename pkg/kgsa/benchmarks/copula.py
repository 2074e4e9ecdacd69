"""
    benchmarks.copula
    ~~~~~~~~~~~~~~~~~

    Gaussian copula sampling of correlated inputs with arbitrary
    marginals. A correlated standard normal draw is mapped
    through the standard normal CDF & then through the inverse
    CDF of each marginal.
"""

import logging

import numpy as np

from scipy import stats
from scipy.linalg import eigh

from kgsa.benchmarks.affine import check_covariance, sample_mvn
from kgsa.exceptions import InvalidConfig


LOG = logging.getLogger(__name__)

NORMAL = 'normal'
UNIFORM = 'uniform'

UNIT_TOL = 1e-10
EIGEN_TOL = 1e-8
CDF_CLIP = 1e-16


class Marginal(object):
    """ A univariate marginal, Normal(mu, sigma) or Uniform(a, b)

    Backed by a frozen scipy.stats distribution.
    """

    def __init__(self, kind, first, second):

        first, second = float(first), float(second)

        if kind == NORMAL:
            if not second > 0:
                raise InvalidConfig('marginals', detail='A normal marginal '
                                                        'needs sigma > 0.')
            self.dist = stats.norm(loc=first, scale=second)
        elif kind == UNIFORM:
            if not second > first:
                raise InvalidConfig('marginals', detail='A uniform marginal '
                                                        'needs a < b.')
            self.dist = stats.uniform(loc=first, scale=second - first)
        else:
            raise InvalidConfig('marginals', detail='Unknown marginal "%s".'
                                % kind)

        self.kind = kind
        self.params = (first, second)

    def __repr__(self):

        return '%s(%r, %r)' % (self.kind.capitalize(), self.params[0],
                               self.params[1])

    @classmethod
    def normal(cls, mu, sigma):
        """ Normal(mu, sigma) """

        return cls(NORMAL, mu, sigma)

    @classmethod
    def uniform(cls, lower, upper):
        """ Uniform(lower, upper) """

        return cls(UNIFORM, lower, upper)

    def ppf(self, probs):
        """ Inverse CDF """

        return self.dist.ppf(probs)

    def cdf(self, values):
        """ CDF """

        return self.dist.cdf(values)

    def to_dict(self):
        """ Convert into a plain dict """

        return {'kind': self.kind, 'params': list(self.params)}


def nearest_psd(matrix, tol=1e-10):
    """ Repair a correlation matrix that isn't PSD

    PSD input is returned symmetrized but otherwise unchanged.
    Otherwise the eigenvalues are floored at tol & the unit
    diagonal is restored by rescaling.

    :param matrix: square symmetric matrix
    :param tol: eigenvalue floor
    :return: (d, d) ndarray
    """

    matrix = check_covariance(matrix)
    matrix = 0.5 * (matrix + matrix.T)

    vals, vecs = eigh(matrix)
    if vals.min() >= -tol:
        return matrix

    vals = np.maximum(vals, tol)
    fixed = (vecs * vals).dot(vecs.T)

    scale = np.sqrt(np.diag(fixed))
    fixed = fixed / np.outer(scale, scale)
    fixed = 0.5 * (fixed + fixed.T)
    np.fill_diagonal(fixed, 1.0)

    return fixed


class CopulaSpec(object):
    """ Marginals coupled through a Gaussian copula

    :param marginals: list of Marginal
    :param correlation: (d, d) correlation matrix of the latent
        normal, repaired with nearest_psd when it isn't PSD
    """

    def __init__(self, marginals, correlation):

        corr = check_covariance(correlation)

        if corr.shape[0] != len(marginals):
            raise InvalidConfig('correlation', detail='The correlation '
                                                      'matrix must be %sx%s.'
                                % (len(marginals), len(marginals)))
        if np.max(np.abs(np.diag(corr) - 1.0)) > UNIT_TOL:
            raise InvalidConfig('correlation', detail='The correlation '
                                                      'matrix needs a unit '
                                                      'diagonal.')
        if np.max(np.abs(corr)) > 1.0 + UNIT_TOL:
            raise InvalidConfig('correlation', detail='Correlations must lie '
                                                      'in [-1, 1].')

        low = float(eigh(corr, eigvals_only=True).min())
        if low < -EIGEN_TOL:
            LOG.warning('The copula correlation matrix has a negative '
                        'eigenvalue of %.3g, using its nearest PSD repair',
                        low)

        self.marginals = list(marginals)
        self.correlation = corr
        self.repaired = nearest_psd(corr)

    def __len__(self):

        return len(self.marginals)

    def to_dict(self):
        """ Convert into a plain dict """

        return {
            'marginals': [marginal.to_dict() for marginal in self.marginals],
            'correlation': self.correlation.tolist(),
        }


def sample_gaussian_copula(spec, n, seed):
    """ n draws of the copula distribution

    :param spec: CopulaSpec
    :param n: number of draws
    :param seed: int
    :return: (n, d) ndarray
    """

    latent = sample_mvn(np.zeros(len(spec)), spec.repaired, n, seed)
    probs = np.clip(stats.norm.cdf(latent), CDF_CLIP, 1.0 - CDF_CLIP)

    return np.column_stack([marginal.ppf(probs[:, i])
                            for i, marginal in enumerate(spec.marginals)])


def symmetric_from_upper(upper):
    """ Symmetric matrix from its upper triangle rows

    Row i holds the entries right of the diagonal, which is 1.
    """

    size = len(upper) + 1
    matrix = np.eye(size)

    for i, row in enumerate(upper):
        matrix[i, i + 1:] = row
        matrix[i + 1:, i] = row
    return matrix
