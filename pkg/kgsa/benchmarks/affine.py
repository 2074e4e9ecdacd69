"""
    benchmarks.affine
    ~~~~~~~~~~~~~~~~~

    Affine maps Y = c'X of jointly Gaussian inputs. Every beta
    of these systems is known in closed form, for the linear
    output kernel through the variance of E[Y | X_R] & for the
    Gaussian RBF output kernel through Gaussian integrals, so
    they serve as oracles for the estimators.
"""

import numpy as np

from scipy.linalg import eigh, pinvh

import kgsa

from kgsa.data import DataSet
from kgsa.embedding import IsfCurve
from kgsa.exceptions import (DegenerateDenominator, DimensionMismatch,
                             InvalidConfig, NonFiniteSamples)
from kgsa.kernels import as_samples
from kgsa.utils import subset_helpers


SYMMETRY_TOL = 1e-10


class AffineSystem(object):
    """ Y = c'X with X ~ N(mean, cov)

    :param coefficients: (n,) vector c
    :param mean: (n,) input mean
    :param cov: (n, n) symmetric PSD input covariance
    :param name: optional name
    """

    def __init__(self, coefficients, mean, cov, name=None):

        self.coefficients = np.asarray(coefficients, dtype=float)
        self.mean = np.asarray(mean, dtype=float)
        self.cov = check_covariance(cov)
        self.name = name

        size = len(self.coefficients)
        if self.mean.shape != (size,) or self.cov.shape != (size, size):
            raise DimensionMismatch('%s inputs' % size, '%s mean & %s cov'
                                    % (self.mean.shape, self.cov.shape))

    def __repr__(self):

        return 'AffineSystem(%s, n=%s)' % (self.name, self.n_inputs)

    @property
    def n_inputs(self):
        """ Number of inputs n """

        return len(self.coefficients)

    @property
    def variance(self):
        """ Var[Y] = c' cov c """

        return float(self.coefficients.dot(self.cov).dot(self.coefficients))

    def explained_variance(self, subset):
        """ Var[E[Y | X_R]] by Gaussian conditioning

        E[Y | X_R] = c'mean + c' cov[:, R] cov[R, R]^+ (x_R - mean_R)
        """

        cols = subset_helpers.to_indices(subset)
        if not cols:
            return 0.0

        cross = self.cov[:, cols].T.dot(self.coefficients)
        block = self.cov[np.ix_(cols, cols)]
        return float(cross.dot(pinvh(block)).dot(cross))

    def conditional_mean(self, subset, points):
        """ E[Y | X_R = x_R] for every row of points """

        cols = subset_helpers.to_indices(subset)
        points = as_samples(points)

        if points.shape[1] != len(cols):
            raise DimensionMismatch('%s columns' % len(cols), points.shape[1])

        cross = self.cov[:, cols].T.dot(self.coefficients)
        gain = pinvh(self.cov[np.ix_(cols, cols)]).dot(cross)
        centered = points - self.mean[cols]

        return self.coefficients.dot(self.mean) + centered.dot(gain)


def check_covariance(cov):
    """ Ensure a covariance matrix is square, finite & symmetric

    :raise: InvalidConfig, NonFiniteSamples
    """

    cov = np.atleast_2d(np.asarray(cov, dtype=float))

    if cov.ndim != 2 or cov.shape[0] != cov.shape[1]:
        raise InvalidConfig('cov', detail='The covariance matrix must be '
                                          'square, got %s.' % (cov.shape,))
    if not np.all(np.isfinite(cov)):
        raise NonFiniteSamples('covariance entries')

    scale = max(1.0, float(np.max(np.abs(cov))))
    if np.max(np.abs(cov - cov.T)) > SYMMETRY_TOL * scale:
        raise InvalidConfig('cov', detail='The covariance matrix must be '
                                          'symmetric.')
    return cov


def example1():
    """ Y = 3 X1 + 2.1 X2 + 1.9 X3 with corr(X2, X3) = 0.8 """

    return AffineSystem([3.0, 2.1, 1.9], np.zeros(3),
                        [[1.0, 0.0, 0.0],
                         [0.0, 1.0, 0.8],
                         [0.0, 0.8, 1.0]], name='example1')


def example2():
    """ Y = X1 + X2 + 2 X3, X4 only enters through its correlation """

    return AffineSystem([1.0, 1.0, 2.0, 0.0], np.zeros(4),
                        [[1.0, 0.1, 0.0, 0.0],
                         [0.1, 1.0, 0.3, 0.0],
                         [0.0, 0.3, 1.0, 0.9],
                         [0.0, 0.0, 0.9, 1.0]], name='example2')


def eval_affine(system, x):
    """ c'x for one sample or every row of a sample matrix

    :return: float for a single sample, (N,) ndarray otherwise
    :raise: DimensionMismatch
    """

    x = np.asarray(x, dtype=float)

    if x.shape[-1] != system.n_inputs or x.ndim > 2:
        raise DimensionMismatch('%s inputs' % system.n_inputs, x.shape)

    ret = x.dot(system.coefficients)
    return float(ret) if x.ndim == 1 else ret


def analytic_variance_beta(system, subset):
    """ Exact beta under the linear output kernel

    Var[E[Y | X_R]] / Var[Y], the first order Sobol index of
    the subset.

    :raise: DegenerateDenominator
    """

    variance = system.variance

    if not variance > 0:
        raise DegenerateDenominator(variance)
    return system.explained_variance(subset) / variance


def _rbf_parts(system, subset, bandwidth):
    """ Total & residual variance plus ||mu_Y||^2 of the RBF kernel """

    variance = system.variance

    if not variance > 0:
        raise DegenerateDenominator(variance)

    residual = max(variance - system.explained_variance(subset), 0.0)
    sig2 = bandwidth ** 2
    mean_norm = bandwidth / np.sqrt(sig2 + 2.0 * variance)

    return variance, residual, mean_norm


def analytic_rbf_beta(system, subset, bandwidth):
    """ Exact beta under the Gaussian RBF output kernel

    With Y ~ N(mu, v) & Y | X_R ~ N(m(x_R), s^2) the expected
    kernel value of two independent normals with variances p &
    q is sigma / sqrt(sigma^2 + p + q) times a Gaussian factor of
    their mean gap, so

        beta = (sigma / sqrt(sigma^2 + 2 s^2) - a) / (1 - a)
        a    = sigma / sqrt(sigma^2 + 2 v)

    :param bandwidth: sigma of the output kernel
    :raise: DegenerateDenominator
    """

    _, residual, mean_norm = _rbf_parts(system, subset, bandwidth)
    cond_norm = bandwidth / np.sqrt(bandwidth ** 2 + 2.0 * residual)

    return float((cond_norm - mean_norm) / (1.0 - mean_norm))


def analytic_isf(system, subset, bandwidth, points):
    """ Exact ISFs under the Gaussian RBF output kernel

    gamma_N is constant since the conditional variance doesn't
    depend on x_R. gamma_D is smallest where the conditional
    mean meets the unconditional one.

    :param points: (Q, |R|) query points
    :return: IsfCurve
    """

    variance, residual, mean_norm = _rbf_parts(system, subset, bandwidth)
    sig2 = bandwidth ** 2

    points = as_samples(points)
    gap = system.conditional_mean(subset, points) - \
        system.coefficients.dot(system.mean)

    cond_norm = bandwidth / np.sqrt(sig2 + 2.0 * residual)
    spread = sig2 + residual + variance
    cross = bandwidth / np.sqrt(spread) * np.exp(-gap ** 2 / (2.0 * spread))

    denom = 1.0 - mean_norm
    gamma_n = np.full(points.shape[0], (cond_norm - mean_norm) / denom)
    gamma_d = (cond_norm + mean_norm - 2.0 * cross) / denom

    return IsfCurve(subset, points, gamma_n, gamma_d,
                    np.zeros(points.shape[0], dtype=bool))


def sample_mvn(mean, cov, n, seed):
    """ n draws of N(mean, cov) for a possibly singular cov

    The square root of cov comes from its eigendecomposition with
    eigenvalues below config.PINV_RTOL of the largest set to 0,
    so exactly degenerate directions carry no noise at all.

    :return: (n, d) ndarray
    :raise: InvalidConfig
    """

    cov = check_covariance(cov)
    mean = np.broadcast_to(np.asarray(mean, dtype=float), (cov.shape[0],))

    vals, vecs = eigh(cov)
    top = max(float(vals.max()), 0.0)
    vals = np.where(vals > kgsa.config.PINV_RTOL * top, vals, 0.0)

    rng = np.random.default_rng(seed)
    draws = rng.standard_normal((n, cov.shape[0]))

    return mean + draws.dot((vecs * np.sqrt(vals)).T)


def affine_dataset(system, n, seed):
    """ DataSet of n draws of the system's inputs & outputs """

    inputs = sample_mvn(system.mean, system.cov, n, seed)
    return DataSet(inputs, eval_affine(system, inputs))
