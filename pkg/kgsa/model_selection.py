"""
    model_selection
    ~~~~~~~~~~~~~~~

    K-fold cross-validation loss of a CME fit & the simplex
    search tuning its input bandwidth & regularizer.

    The held-out loss of a query (x_j, y_j) is the squared RKHS
    distance between k(., y_j) & the embedding predicted at x_j,

        k(y_j, y_j) - 2 a' K_{., j} + a' K_train a

    with a = W Gamma(x_j) from the training folds. The
    regularization term of the fitting loss is left out.
"""

import logging

import numpy as np

from scipy.linalg import cho_solve
from scipy.optimize import minimize

import kgsa

from kgsa import signals
from kgsa.embedding import factorize
from kgsa.exceptions import (InvalidConfig, NonFiniteObjective,
                             TooFewSamples)
from kgsa.kernels import (KernelSpec, MAHALANOBIS, RBF, features, gram_matrix,
                          mahalanobis_metric, median_heuristic)
from kgsa.models.cv import JOINT, Model as CvConfig
from kgsa.utils import subset_helpers
from kgsa.utils.str_helpers import derive_seed


LOG = logging.getLogger(__name__)


class TuneResult(object):
    """ Tuned hyperparameters of a subset & their CV loss

    Unpacks into (input_kernel, lam).
    """

    def __init__(self, subset, input_kernel, lam, loss, evaluations):

        self.subset = subset
        self.input_kernel = input_kernel
        self.lam = float(lam)
        self.loss = float(loss)
        self.evaluations = evaluations

    def __iter__(self):

        return iter((self.input_kernel, self.lam))

    def __repr__(self):

        return 'TuneResult(%s, %r, lam=%r, loss=%r)' % (
            subset_helpers.fmt(self.subset), self.input_kernel, self.lam,
            self.loss)

    def to_dict(self):
        """ Convert into a plain dict """

        return {
            'subset': subset_helpers.to_labels(self.subset),
            'input_kernel': self.input_kernel.to_dict(),
            'lambda': self.lam,
            'loss': self.loss,
            'evaluations': self.evaluations,
        }


def _cv_config(cfg):

    if cfg is None:
        return CvConfig()
    elif isinstance(cfg, dict):
        return CvConfig.load(cfg)
    return cfg


def fold_partition(count, folds, seed):
    """ Shuffle 0..count-1 & split it into folds

    Fold sizes differ by at most one & together they cover every
    row exactly once.

    :return: list of sorted int ndarrays
    :raise: InvalidConfig
    """

    if folds < 2 or folds > count:
        raise InvalidConfig('folds', detail='The number of folds must be in '
                                            '2..%s, got %s.' % (count, folds))

    order = np.random.default_rng(seed).permutation(count)
    return [np.sort(fold) for fold in np.array_split(order, folds)]


def cv_loss(data, subset, input_kernel, output_kernel, lam, cfg=None,
            folds=None, output_gram=None):
    """ Mean held-out loss of the CME over K folds

    :param data: DataSet
    :param subset: non-empty InputSubset bitmask
    :param input_kernel: KernelSpec over the subset's columns
    :param output_kernel: KernelSpec over the outputs
    :param lam: regularizer > 0
    :param cfg: CvConfig, fold count & shuffle seed are used
    :param folds:
        optional explicit list of held-out row id arrays,
        overriding the seeded partition
    :param output_gram: optional precomputed output Gram matrix
    :return: float
    :raise: TooFewSamples, FactorizationFailure
    """

    cfg = _cv_config(cfg)
    count = data.n_samples

    if folds is None:
        folds = fold_partition(count, cfg.folds, cfg.seed)

    if output_gram is None:
        output_gram = gram_matrix(output_kernel, data.outputs)
    out = np.asarray(getattr(output_gram, 'values', output_gram))
    gram = gram_matrix(input_kernel, data.select(subset)).values

    losses = []

    for held in folds:
        held = np.asarray(held, dtype=int)
        train = np.setdiff1d(np.arange(count), held)

        if len(held) < 1 or len(train) < 1:
            raise TooFewSamples(1, 0, detail='Every fold & its complement '
                                             'needs at least one sample.')

        factor, _ = factorize(gram[np.ix_(train, train)], lam)
        coefs = cho_solve(factor, gram[np.ix_(train, held)],
                          check_finite=False)

        quad = np.sum(coefs * out[np.ix_(train, train)].dot(coefs), axis=0)
        cross = np.sum(coefs * out[np.ix_(train, held)], axis=0)
        diag = out[held, held]

        losses.append(np.mean(diag - 2.0 * cross + quad))

    loss = float(np.mean(losses))

    signals.cv_evaluated.send(subset, input_kernel=input_kernel, lam=lam,
                              loss=loss)
    return loss


def nelder_mead(objective, init, budget=None, xatol=None, step=None):
    """ Derivative-free simplex minimization

    The initial simplex is the init point plus one vertex per
    coordinate moved by `step`. The search stops when every
    vertex is within xatol of the best one, per coordinate, or
    after `budget` objective evaluations. Non-finite values met
    along the way count as +inf.

    :param objective: callable of a 1-D ndarray returning a float
    :param init: initial point
    :param budget: max evaluations, defaults to config
    :param xatol: simplex size tolerance, defaults to config
    :param step: initial simplex edge, defaults to config
    :return: tuple of (argmin ndarray, min value float)
    :raise: NonFiniteObjective
    """

    cfg = kgsa.config
    init = np.atleast_1d(np.asarray(init, dtype=float))
    budget = budget or cfg.SIMPLEX_MAX_EVALS
    xatol = xatol or cfg.SIMPLEX_XATOL
    step = step or cfg.SIMPLEX_STEP

    start = float(objective(init))
    if not np.isfinite(start):
        raise NonFiniteObjective(start, init.tolist())

    def wrapped(point):

        val = float(objective(point))
        return val if np.isfinite(val) else np.inf

    simplex = np.vstack([init] + [init + step * row
                                  for row in np.eye(len(init))])

    res = minimize(wrapped, init, method='Nelder-Mead', options={
        'initial_simplex': simplex,
        'maxfev': budget,
        'xatol': xatol,
        'fatol': np.inf,
    })

    if not res.fun <= start:
        return init, start
    return np.asarray(res.x, dtype=float), float(res.fun)


def base_kernel(data, subset, family):
    """ Input kernel with a unit bandwidth & its median heuristic """

    inputs = data.select(subset)

    if family == MAHALANOBIS:
        metric, pinv = mahalanobis_metric(inputs)
        base = KernelSpec.mahalanobis(1.0, metric, pinv)
    elif family == RBF:
        base = KernelSpec.rbf(1.0)
    else:
        raise InvalidConfig('input_kernel', detail='Input kernels must be '
                                                   'rbf or mahalanobis, got '
                                                   '%s.' % family)

    return base, median_heuristic(features(base, inputs))


def tune_cme(data, subset, output_kernel, cfg=None, family=RBF,
             bandwidth=None, output_gram=None):
    """ Tune the input bandwidth & lambda by cross-validation

    Both are searched in log space, clipped to their bounds,
    starting from the median heuristic & config.LAMBDA_INIT.
    The folds are drawn once so every evaluation compares the
    same partition.

    :param data: DataSet
    :param subset: non-empty InputSubset bitmask
    :param output_kernel: KernelSpec over the outputs
    :param cfg: CvConfig
    :param family: input kernel family, rbf or mahalanobis
    :param bandwidth:
        fixed input bandwidth used when cfg.mode is lambda only,
        defaults to the median heuristic
    :param output_gram: optional precomputed output Gram matrix
    :return: TuneResult
    """

    cfg = _cv_config(cfg)
    data.check_subset(subset)

    base, median = base_kernel(data, subset, family)
    folds = fold_partition(data.n_samples, cfg.folds, cfg.seed)

    if output_gram is None:
        output_gram = gram_matrix(output_kernel, data.outputs)

    lam_lo, lam_hi = np.log(cfg.lambda_bounds)
    bw_lo, bw_hi = np.log(np.asarray(cfg.bandwidth_bounds) * median)
    joint = cfg.mode == JOINT
    fixed = bandwidth or median

    def unpack(point):

        if joint:
            return (np.exp(np.clip(point[0], bw_lo, bw_hi)),
                    np.exp(np.clip(point[1], lam_lo, lam_hi)))
        return fixed, np.exp(np.clip(point[0], lam_lo, lam_hi))

    calls = []

    def objective(point):

        calls.append(point)
        width, lam = unpack(point)
        return cv_loss(data, subset, base.with_bandwidth(width),
                       output_kernel, lam, folds=folds,
                       output_gram=output_gram)

    init = [np.log(cfg.lambda_init)]
    if joint:
        init = [np.log(median)] + init

    point, loss = nelder_mead(objective, init, budget=cfg.max_evals,
                              xatol=cfg.xatol)
    width, lam = unpack(point)

    result = TuneResult(subset, base.with_bandwidth(width), lam, loss,
                        len(calls))

    LOG.info('Tuned subset %s: bandwidth %.4g, lambda %.4g, CV loss %.6g',
             subset_helpers.fmt(subset), width, lam, loss)
    signals.post_tune.send(subset, result=result)
    return result


def tune_cme_replicates(data, subset, output_kernel, cfg=None, family=RBF,
                        replicates=30, subsample=800, seed=0):
    """ Tune on shuffled sub-samples & aggregate the results

    Replicate r tunes on `subsample` rows drawn without
    replacement with the seed derived from (seed, r). The
    aggregate bandwidth & lambda are the geometric means.

    :return: tuple of (aggregate TuneResult, list of TuneResult)
    """

    cfg = _cv_config(cfg)
    size = min(subsample, data.n_samples)

    if size < cfg.folds:
        raise TooFewSamples(cfg.folds, size)

    results = []

    for rep in range(replicates):
        rep_seed = derive_seed(seed, rep)
        rows = np.random.default_rng(rep_seed).permutation(
            data.n_samples)[:size]

        rep_cfg = CvConfig(dict(cfg.to_primitive(), seed=rep_seed))
        results.append(tune_cme(data.take(np.sort(rows)), subset,
                                output_kernel, cfg=rep_cfg, family=family))

    width = float(np.exp(np.mean([np.log(res.input_kernel.bandwidth)
                                  for res in results])))
    lam = float(np.exp(np.mean([np.log(res.lam) for res in results])))
    loss = float(np.mean([res.loss for res in results]))

    base, _ = base_kernel(data, subset, family)
    aggregate = TuneResult(subset, base.with_bandwidth(width), lam, loss,
                           sum(res.evaluations for res in results))
    return aggregate, results
