"""
    knn
    ~~~

    Nearest neighbor beta estimators, the baseline the CME
    estimators are compared against.

    The output of every sample is paired with the output of the
    sample whose subset inputs are nearest to it (its 2nd
    nearest neighbor, the 1st being itself). For a large data
    set the paired outputs behave like two draws from the same
    conditional distribution so the mean of k(y_i, y_j*(i))
    estimates E[k(Y, Y') | X_R] averaged over X_R.

    Searches are exact & brute force with ties going to the
    smallest row id.
"""

import numpy as np

from scipy.spatial.distance import cdist

from kgsa import signals
from kgsa.embedding import IndexEstimate, normalization_stats
from kgsa.exceptions import InvalidConfig, TooFewSamples
from kgsa.kernels import as_samples, gram_matrix


NN_F = 'NN-F'
NN_S = 'NN-S'

BLOCK_ROWS = 1024


class NeighborIndex(object):
    """ Exact Euclidean neighbor ranks over a set of points

    Distances are computed a block of query rows at a time. A
    point is always its own 1st neighbor, even when duplicates
    of it exist.

    :param points: (N, d) subset projected input rows
    """

    def __init__(self, points):

        self.points = as_samples(points)

    def __len__(self):

        return self.points.shape[0]

    def _distances(self, rows):

        dist = cdist(self.points[rows], self.points, 'sqeuclidean')
        dist[np.arange(len(rows)), rows] = -1.0
        return dist

    def neighbors(self, rows, rank):
        """ Row ids of the rank-th nearest neighbor of each row

        :param rows: int array of 0-based query row ids
        :param rank: 1-based neighbor rank, 1 <= rank <= N
        :return: int ndarray
        :raise: InvalidConfig
        """

        rows = np.asarray(rows, dtype=int).reshape(-1)
        count = len(self)

        if rank < 1 or rank > count:
            raise InvalidConfig('rank', detail='The neighbor rank must be in '
                                               '1..%s, got %s.'
                                % (count, rank))
        if rank == 1:
            return rows.copy()

        ret = np.empty(len(rows), dtype=int)

        for start in range(0, len(rows), BLOCK_ROWS):
            block = rows[start:start + BLOCK_ROWS]
            dist = self._distances(block)

            if rank == 2:
                dist[np.arange(len(block)), block] = np.inf
                ret[start:start + len(block)] = np.argmin(dist, axis=1)
            else:
                order = np.argsort(dist, axis=1, kind='stable')
                ret[start:start + len(block)] = order[:, rank - 1]
        return ret


def nearest_neighbor(index, row, rank):
    """ Row id of the rank-th nearest neighbor of a single row

    :param index: NeighborIndex
    :param row: 0-based row id
    :param rank: 1-based rank, rank 1 is the row itself
    :return: int
    """

    if row < 0 or row >= len(index):
        raise InvalidConfig('row', detail='Row %s is outside of 0..%s.'
                                          % (row, len(index) - 1))
    return int(index.neighbors([row], rank)[0])


def _output_values(data, output_kernel, output_gram):

    if output_gram is None:
        output_gram = gram_matrix(output_kernel, data.outputs)
    return np.asarray(getattr(output_gram, 'values', output_gram))


def _estimate(tag, data, subset, gram, rows, seed, extra):

    stats = normalization_stats(gram)
    denom = stats.check()

    partners = NeighborIndex(data.select(subset)).neighbors(rows, 2)
    paired = gram[rows, partners].mean()

    hyperparameters = {'output_kernel': extra.pop('output_kernel')}
    hyperparameters.update(extra)

    return IndexEstimate(subset, (paired - stats.c_yy) / denom, tag,
                         data.n_samples, seed=seed,
                         hyperparameters=hyperparameters)


def beta_nn_full(data, subset, output_kernel, output_gram=None, seed=None):
    """ Nearest neighbor beta pairing every sample with its neighbor

    :param data: DataSet, N >= 2
    :param subset: non-empty InputSubset bitmask
    :param output_kernel: KernelSpec over the outputs
    :param output_gram: optional precomputed output Gram matrix
    :param seed: optional seed recorded with the estimate
    :return: IndexEstimate
    :raise: DegenerateDenominator
    """

    data.check_subset(subset)
    gram = _output_values(data, output_kernel, output_gram)
    rows = np.arange(data.n_samples)

    estimate = _estimate(NN_F, data, subset, gram, rows, seed,
                         {'output_kernel': output_kernel.to_dict()})

    signals.post_estimate.send(NN_F, subset=subset, estimate=estimate)
    return estimate


def beta_nn_subsample(data, subset, output_kernel, n_a, seed,
                      output_gram=None):
    """ Nearest neighbor beta over n_a randomly drawn samples

    The rows are drawn uniformly with replacement from a
    generator seeded by `seed`.

    :param n_a: number of draws, 1 <= n_a <= N
    :param seed: int
    :return: IndexEstimate
    :raise: TooFewSamples, DegenerateDenominator
    """

    data.check_subset(subset)

    if n_a is None or n_a < 1 or n_a > data.n_samples:
        raise TooFewSamples(n_a, data.n_samples,
                            detail='The sub-sample size must be in 1..%s, '
                                   'got %s.' % (data.n_samples, n_a))

    gram = _output_values(data, output_kernel, output_gram)
    rng = np.random.default_rng(seed)
    rows = rng.integers(0, data.n_samples, size=n_a)

    estimate = _estimate(NN_S, data, subset, gram, rows, seed,
                         {'output_kernel': output_kernel.to_dict(),
                          'n_a': int(n_a)})

    signals.post_estimate.send(NN_S, subset=subset, estimate=estimate)
    return estimate
