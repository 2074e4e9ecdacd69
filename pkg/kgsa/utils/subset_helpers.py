"""
    utils.subset_helpers
    ~~~~~~~~~~~~~~~~~~~~

    An input subset is a plain int bitmask where bit i - 1
    stands for the input labeled i. These helpers convert &
    enumerate them.
"""

from kgsa.exceptions import InvalidSubset


MAX_INPUTS = 64


def popcount(mask):
    """ Number of inputs in the subset """

    return bin(mask).count('1')


def from_labels(labels, n_inputs=None):
    """ Build a subset bitmask from 1-based input labels

    :param labels: iterable of int
    :param n_inputs: optional int to range check against
    :return: int
    :raise: InvalidSubset
    """

    limit = n_inputs or MAX_INPUTS
    mask = 0

    for label in labels:
        label = int(label)
        if label < 1 or label > limit:
            raise InvalidSubset(detail='Input label %s is outside of '
                                       '1..%s.' % (label, limit))
        mask |= 1 << (label - 1)
    return mask


def to_labels(mask):
    """ Sorted 1-based labels of the subset """

    return [i + 1 for i in range(mask.bit_length()) if mask >> i & 1]


def to_indices(mask):
    """ Sorted 0-based column indices of the subset """

    return [i for i in range(mask.bit_length()) if mask >> i & 1]


def full(n_inputs):
    """ The subset holding every one of n_inputs inputs """

    if n_inputs < 1 or n_inputs > MAX_INPUTS:
        raise InvalidSubset(detail='The number of inputs must be in '
                                   '1..%s, got %s.' % (MAX_INPUTS, n_inputs))
    return (1 << n_inputs) - 1


def fmt(mask):
    """ Human readable subset like "(1,3)" or "2" """

    labels = to_labels(mask)
    if len(labels) == 1:
        return str(labels[0])
    return '(%s)' % ','.join(str(label) for label in labels)


def iter_subsets(universe, include_empty=True):
    """ Yield every subset of the universe in ascending bitmask order """

    sub = 0

    while True:
        if sub or include_empty:
            yield sub
        if sub == universe:
            break
        sub = (sub - universe) & universe


def subsets_up_to(universe, order):
    """ Non-empty subsets of the universe with at most `order` inputs

    Ordered by size first & bitmask second.
    """

    subs = [s for s in iter_subsets(universe, include_empty=False)
            if popcount(s) <= order]
    return sorted(subs, key=lambda s: (popcount(s), s))


def compress(universe):
    """ Index arrays mapping the 2^k local subsets of a universe

    The universe's k labels are renumbered 0..k-1 so dense numpy
    arrays can be used for transforms over all of its subsets.

    :return: tuple of (list of labels, list of global bitmasks
        indexed by local bitmask)
    """

    labels = to_labels(universe)
    glob = []

    for local in range(1 << len(labels)):
        glob.append(sum(1 << (label - 1) for pos, label in enumerate(labels)
                        if local >> pos & 1))
    return labels, glob
