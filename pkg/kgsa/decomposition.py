"""
    decomposition
    ~~~~~~~~~~~~~

    Conditional indices, the optimal learning sequence (OLS),
    kernel ANOVA effects & Shapley effects.

    Everything here is pure arithmetic over an IndexTable, a map
    of input subsets to beta values, so any estimator (CME,
    nearest neighbor or analytic) feeds the same code & exact
    tables can be used as direct oracles.
"""

import logging
import threading

import numpy as np

from scipy.special import comb

import kgsa

from kgsa.exceptions import (InvalidSubset, MissingIndices,
                             OverlappingSubsets)
from kgsa.utils import subset_helpers
from kgsa.utils.subset_helpers import fmt, popcount


LOG = logging.getLogger(__name__)


class IndexTable(object):
    """ Beta values keyed by InputSubset bitmask

    beta of the empty subset is always 0. A table may carry a
    `source`, a callable taking a list of bitmasks & returning a
    dict of bitmask to beta value, which is used to fill in the
    missing entries a decomposition asks for. OLS chains then
    only estimate the subsets along the greedy path.

    :param n_inputs: number of inputs n of the data set
    :param values: optional dict of bitmask to beta
    :param source: optional callable filling missing entries
    :param estimator: estimator tag of the values
    :param seeds: seeds of the replicates behind the values
    """

    def __init__(self, n_inputs, values=None, source=None, estimator=None,
                 seeds=None):

        self.n_inputs = n_inputs
        self.source = source
        self.estimator = estimator
        self.seeds = list(seeds or [])

        self._lock = threading.Lock()
        self._values = {0: 0.0}

        for mask, value in (values or {}).items():
            self.set(mask, value)

    def __contains__(self, mask):

        return mask in self._values

    def __getitem__(self, mask):

        self.require([mask])
        return self._values[mask]

    def __len__(self):

        return len(self._values) - 1

    def __repr__(self):

        return 'IndexTable(n=%s, entries=%s, estimator=%s)' % (
            self.n_inputs, len(self), self.estimator)

    @classmethod
    def from_labels(cls, n_inputs, values, **kwargs):
        """ Build a table from a dict keyed by tuples of labels

        :param values: dict like {(1,): 0.384, (1, 2): 0.944}
        """

        return cls(n_inputs, {subset_helpers.from_labels(key, n_inputs): val
                              for key, val in values.items()}, **kwargs)

    @property
    def universe(self):
        """ Subset bitmask of every input """

        return subset_helpers.full(self.n_inputs)

    def items(self):
        """ Sorted (bitmask, beta) pairs of the non-empty subsets """

        return sorted(((mask, val) for mask, val in self._values.items()
                       if mask), key=lambda item: (popcount(item[0]),
                                                   item[0]))

    def set(self, mask, value):
        """ Store a beta value """

        if mask < 0 or mask >> self.n_inputs:
            raise InvalidSubset(detail='Subset %s is outside of the %s '
                                       'inputs.' % (fmt(mask), self.n_inputs))
        if mask == 0:
            return

        self._values[mask] = float(value)

    def require(self, masks):
        """ Ensure the table holds every one of the subsets

        Missing entries are computed with the source if there is
        one.

        :raise: MissingIndices
        """

        missing = sorted(set(m for m in masks if m not in self._values))

        if missing and self.source:
            with self._lock:
                missing = [m for m in missing if m not in self._values]
                if missing:
                    for mask, value in self.source(missing).items():
                        self.set(mask, value)
                missing = [m for m in missing if m not in self._values]

        if missing:
            raise MissingIndices([fmt(m) for m in missing])

    def monotonicity_violations(self, tol=None):
        """ Pairs S subset of S + {i} where beta decreases

        Only held entries are compared. The property is exact
        analytically, estimates may violate it a little.

        :return: list of (S, R, beta_S - beta_R) tuples
        """

        tol = kgsa.config.MONOTONE_TOL if tol is None else tol
        ret = []

        for mask, value in self.items():
            for label in subset_helpers.to_labels(mask):
                smaller = mask & ~(1 << (label - 1))
                if smaller in self._values and \
                        self._values[smaller] > value + tol:
                    ret.append((smaller, mask, self._values[smaller] - value))
        return ret

    def warn_monotonicity(self, tol=None):
        """ Log every monotonicity violation as a warning """

        violations = self.monotonicity_violations(tol)

        for smaller, larger, diff in violations:
            LOG.warning('beta%s exceeds beta%s by %.3g, estimates are not '
                        'monotone', fmt(smaller), fmt(larger), diff)
        return violations

    def to_dict(self):
        """ Convert into a plain dict """

        return {
            'n_inputs': self.n_inputs,
            'estimator': self.estimator,
            'seeds': self.seeds,
            'values': [{'subset': subset_helpers.to_labels(mask),
                        'value': val} for mask, val in self.items()],
        }

    @classmethod
    def from_dict(cls, data):
        """ Rebuild a table from the output of to_dict """

        values = {}
        for item in data['values']:
            mask = subset_helpers.from_labels(item['subset'], data['n_inputs'])
            values[mask] = item['value']

        return cls(data['n_inputs'], values, estimator=data.get('estimator'),
                   seeds=data.get('seeds'))


def _check_universe(table, universe):

    if universe <= 0 or universe >> table.n_inputs:
        raise InvalidSubset(detail='The universe must be a non-empty subset '
                                   'of the %s inputs.' % table.n_inputs)
    return universe


def conditional_index(table, r, s):
    """ beta of R given S, exactly beta(S u R) - beta(S)

    :param table: IndexTable
    :param r: non-empty InputSubset bitmask
    :param s: InputSubset bitmask disjoint from r, may be empty
    :return: float
    :raise: OverlappingSubsets, MissingIndices
    """

    if r <= 0:
        raise InvalidSubset(detail='The conditioned subset must not be '
                                   'empty.')
    if r & s:
        raise OverlappingSubsets(fmt(r), fmt(s) if s else '()')

    table.require([r | s, s])
    return table[r | s] - table[s]


"""
    Optimal learning sequence
    ~~~~~~~~~~~~~~~~~~~~~~~~~
"""


class OlsStep(object):
    """ One greedy step of an optimal learning sequence

    :param label: the chosen input label
    :param value: its conditional index given the previous labels
    :param cumulative: beta of all labels chosen so far
    :param ties: other labels within the tie tolerance
    :param candidates: dict of label to conditional index
    """

    def __init__(self, label, value, cumulative, ties, candidates):

        self.label = label
        self.value = value
        self.cumulative = cumulative
        self.ties = list(ties)
        self.candidates = dict(candidates)

    @property
    def negative(self):
        """ Boolean of an (analytically impossible) negative value """

        return self.value < 0.0

    def to_dict(self):
        """ Convert into a plain dict """

        return {
            'label': self.label,
            'value': self.value,
            'cumulative': self.cumulative,
            'ties': self.ties,
            'negative': self.negative,
            'candidates': {str(k): v for k, v in
                           sorted(self.candidates.items())},
        }

    @classmethod
    def from_dict(cls, data):
        """ Rebuild a step from the output of to_dict """

        return cls(data['label'], data['value'], data['cumulative'],
                   data['ties'], {int(k): v for k, v in
                                  data['candidates'].items()})


class OlsResult(object):
    """ An ordered sequence of OlsStep's over a universe """

    def __init__(self, universe, steps):

        self.universe = universe
        self.steps = list(steps)

    def __len__(self):

        return len(self.steps)

    def __repr__(self):

        return 'OlsResult(order=%s)' % (self.order,)

    @property
    def order(self):
        """ Tuple of the labels in learning order """

        return tuple(step.label for step in self.steps)

    @property
    def values(self):
        """ Tuple of the per step conditional indices """

        return tuple(step.value for step in self.steps)

    @property
    def cumulative(self):
        """ Tuple of the step-wise cumulative sums """

        return tuple(step.cumulative for step in self.steps)

    @property
    def has_ties(self):
        """ Boolean if any step had tied candidates """

        return any(step.ties for step in self.steps)

    def to_dict(self):
        """ Convert into a plain dict """

        return {
            'universe': subset_helpers.to_labels(self.universe),
            'steps': [step.to_dict() for step in self.steps],
        }

    @classmethod
    def from_dict(cls, data):
        """ Rebuild a result from the output of to_dict """

        return cls(subset_helpers.from_labels(data['universe']),
                   [OlsStep.from_dict(step) for step in data['steps']])


def _ols_candidates(table, universe, chosen, tie_tol):
    """ Conditional index of every remaining label given `chosen`

    :return: tuple of (dict label to value, sorted tied labels
        with the exact argmax first)
    """

    remaining = subset_helpers.to_labels(universe & ~chosen)
    table.require([chosen] + [chosen | 1 << (label - 1)
                              for label in remaining])

    candidates = {label: conditional_index(table, 1 << (label - 1), chosen)
                  for label in remaining}

    best = max(remaining, key=lambda label: (candidates[label], -label))
    ties = sorted(label for label in remaining if label != best and
                  candidates[best] - candidates[label] <= tie_tol)

    return candidates, [best] + ties


def _ols_step(table, chosen, label, candidates, tied):

    mask = chosen | 1 << (label - 1)
    step = OlsStep(label, candidates[label], table[mask],
                   [other for other in tied if other != label], candidates)

    if step.negative:
        LOG.warning('Negative conditional index %.3g for input %s given %s',
                    step.value, label, fmt(chosen) if chosen else '()')
    if step.ties:
        LOG.warning('OLS step %d is tied between inputs %s', popcount(mask),
                    ', '.join(str(i) for i in sorted(tied)))
    return step, mask


def ols_decomposition(table, universe, tie_tol=None):
    """ Greedy optimal learning sequence over a universe

    At every step the remaining label with the largest
    conditional index given the labels chosen so far is taken,
    the smallest label winning exact ties. Labels within
    tie_tol of the maximum are flagged as ties. The cumulative
    value of a step is the table's beta of the chosen prefix so
    the sequence telescopes exactly.

    :param table: IndexTable, missing entries are pulled from
        its source along the greedy path
    :param universe: InputSubset bitmask
    :param tie_tol: defaults to config.TIE_TOL
    :return: OlsResult
    :raise: MissingIndices
    """

    _check_universe(table, universe)
    tie_tol = kgsa.config.TIE_TOL if tie_tol is None else tie_tol

    chosen = 0
    steps = []

    while chosen != universe:
        candidates, tied = _ols_candidates(table, universe, chosen, tie_tol)
        step, chosen = _ols_step(table, chosen, tied[0], candidates, tied)
        steps.append(step)

    table.warn_monotonicity()
    return OlsResult(universe, steps)


def ols_alternatives(table, universe, tie_tol=None, limit=64):
    """ Every sequence obtainable by branching on flagged ties

    The first sequence returned is the ols_decomposition one.

    :param limit: stop after this many sequences
    :return: list of OlsResult
    :raise: MissingIndices
    """

    _check_universe(table, universe)
    tie_tol = kgsa.config.TIE_TOL if tie_tol is None else tie_tol

    results = []
    pending = [(0, [])]

    while pending and len(results) < limit:
        chosen, steps = pending.pop()

        if chosen == universe:
            results.append(OlsResult(universe, steps))
            continue

        candidates, tied = _ols_candidates(table, universe, chosen, tie_tol)
        branches = []

        for label in tied:
            step, mask = _ols_step(table, chosen, label, candidates, tied)
            branches.append((mask, steps + [step]))

        pending.extend(reversed(branches))

    return results


"""
    ANOVA & Shapley effects
    ~~~~~~~~~~~~~~~~~~~~~~~
"""


class AnovaTable(object):
    """ Kernel ANOVA effects S_R keyed by InputSubset bitmask """

    def __init__(self, universe, effects):

        self.universe = universe
        self.effects = dict(effects)

    def __contains__(self, mask):

        return mask in self.effects

    def __getitem__(self, mask):

        return self.effects[mask]

    def __len__(self):

        return len(self.effects)

    def items(self):
        """ Sorted (bitmask, effect) pairs """

        return sorted(self.effects.items(),
                      key=lambda item: (popcount(item[0]), item[0]))

    @property
    def total(self):
        """ Sum of all the effects """

        return float(sum(self.effects.values()))

    def to_dict(self):
        """ Convert into a plain dict """

        return {
            'universe': subset_helpers.to_labels(self.universe),
            'effects': [{'subset': subset_helpers.to_labels(mask),
                         'value': val} for mask, val in self.items()],
        }

    @classmethod
    def from_dict(cls, data):
        """ Rebuild a table from the output of to_dict """

        return cls(subset_helpers.from_labels(data['universe']),
                   {subset_helpers.from_labels(item['subset']): item['value']
                    for item in data['effects']})


class ShapleyTable(object):
    """ Per input Shapley effects over a universe """

    def __init__(self, universe, effects):

        self.universe = universe
        self.effects = dict(effects)

    def __getitem__(self, label):

        return self.effects[label]

    def __len__(self):

        return len(self.effects)

    @property
    def labels(self):
        """ Sorted input labels """

        return sorted(self.effects)

    @property
    def total(self):
        """ Sum of the effects, beta of the universe """

        return float(sum(self.effects.values()))

    def to_dict(self):
        """ Convert into a plain dict """

        return {
            'universe': subset_helpers.to_labels(self.universe),
            'effects': [{'label': label, 'value': self.effects[label]}
                        for label in self.labels],
        }

    @classmethod
    def from_dict(cls, data):
        """ Rebuild a table from the output of to_dict """

        return cls(subset_helpers.from_labels(data['universe']),
                   {item['label']: item['value'] for item in data['effects']})


def _dense(table, universe):
    """ beta of every subset of the universe as a dense array

    :return: tuple of (labels, global bitmasks, beta ndarray) all
        indexed by the local bitmask over the universe's labels
    """

    labels, glob = subset_helpers.compress(universe)
    table.require(glob)

    return labels, glob, np.array([table[mask] for mask in glob])


def anova_effects(table, universe):
    """ Kernel ANOVA effects by inclusion-exclusion

        S_R = sum over U in R of (-1)^(|R| - |U|) beta_U

    The effects are only meaningful for independent inputs,
    it's up to the caller to vouch for that.

    :param table: IndexTable holding every subset of universe
    :param universe: InputSubset bitmask
    :return: AnovaTable of every non-empty subset
    :raise: MissingIndices
    """

    _check_universe(table, universe)
    _, glob, effects = _dense(table, universe)

    local = np.arange(len(glob))

    for pos in range(len(glob).bit_length() - 1):
        bit = 1 << pos
        has = (local & bit) != 0
        effects[has] -= effects[local[has] ^ bit]

    table.warn_monotonicity()
    return AnovaTable(universe, {glob[i]: float(effects[i])
                                 for i in local if i})


def shapley_effects(table, universe):
    """ Shapley effects of every label of the universe

        Sh_i = 1/k sum over A in U - {i} of
               C(k - 1, |A|)^-1 (beta(A + i) - beta(A))

    with k the size of the universe. The effects sum to the
    beta of the universe whether or not the inputs are
    independent.

    :param table: IndexTable holding every subset of universe
    :param universe: InputSubset bitmask
    :return: ShapleyTable
    :raise: MissingIndices
    """

    _check_universe(table, universe)

    size = popcount(universe)
    if size > kgsa.config.SHAPLEY_WARN_INPUTS:
        LOG.warning('Exact Shapley effects over %d inputs enumerate %d '
                    'subsets, this will be slow', size, 2 ** size)

    labels, _, betas = _dense(table, universe)

    local = np.arange(len(betas))
    sizes = np.array([popcount(int(i)) for i in local])
    effects = {}

    for pos, label in enumerate(labels):
        bit = 1 << pos
        without = local[(local & bit) == 0]
        weights = 1.0 / (size * comb(size - 1, sizes[without]))
        gains = betas[without | bit] - betas[without]
        effects[label] = float(np.sum(weights * gains))

    table.warn_monotonicity()
    return ShapleyTable(universe, effects)


def conditional_anova_check(table, anova, label, a):
    """ beta(i | A) minus the sum of S(U + i) over U in A

    Zero for exact tables of independent inputs.

    :param table: IndexTable
    :param anova: AnovaTable covering A + {i}
    :param label: input label i
    :param a: InputSubset bitmask not holding i, may be empty
    :return: float residual
    :raise: OverlappingSubsets, MissingIndices
    """

    bit = 1 << (label - 1)
    value = conditional_index(table, bit, a)

    needed = [sub | bit for sub in subset_helpers.iter_subsets(a)]
    missing = [fmt(mask) for mask in needed if mask not in anova]

    if missing:
        raise MissingIndices(missing)

    return value - sum(anova[mask] for mask in needed)


def screen_inputs(table, universe, threshold):
    """ Inputs whose first order beta exceeds a threshold

    Used to narrow the universe of OLS & Shapley down to the
    significant inputs.

    :return: InputSubset bitmask, possibly empty
    :raise: MissingIndices
    """

    _check_universe(table, universe)

    bits = [1 << (label - 1) for label in subset_helpers.to_labels(universe)]
    table.require(bits)

    kept = 0
    for bit in bits:
        if table[bit] > threshold:
            kept |= bit

    LOG.info('Screening at %g kept inputs %s', threshold,
             fmt(kept) if kept else '()')
    return kept
