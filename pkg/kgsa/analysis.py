"""
    analysis
    ~~~~~~~~

    The analysis driver turning an AnalysisConfig into a
    SensitivityReport.

    The data is loaded from a CSV file or drawn from a benchmark,
    once per replicate with the replicate's derived seed. The
    output kernel bandwidth rule is applied once on the first
    replicate & reused so every replicate estimates the same
    index. Each requested subset is estimated on every replicate
    in a thread pool & the replicate means form the one
    IndexTable every decomposition is assembled from. OLS chains
    pull their subsets lazily through the table's source.
"""

import logging
import threading
import time

from concurrent.futures import ThreadPoolExecutor
from contextlib import contextmanager

import numpy as np

import kgsa

from kgsa import signals
from kgsa.benchmarks import (affine_system, analytic_isf, analytic_rbf_beta,
                             analytic_variance_beta, generate_benchmark)
from kgsa.decomposition import (AnovaTable, IndexTable, OlsResult,
                                ShapleyTable, anova_effects, ols_alternatives,
                                ols_decomposition, screen_inputs,
                                shapley_effects)
from kgsa.deserializers import load_dataset
from kgsa.embedding import (IndexEstimate, IsfCurve, beta_cme, fit_cme,
                            isf_profile)
from kgsa.exceptions import InvalidConfig, KgsaException, MissingIndices
from kgsa.kernels import (KernelSpec, LINEAR, gram_matrix, median_heuristic,
                          spread_heuristic)
from kgsa.knn import NN_F, NN_S, beta_nn_full, beta_nn_subsample
from kgsa.model_selection import base_kernel, tune_cme
from kgsa.models.analysis import Model as AnalysisConfig
from kgsa.utils import subset_helpers
from kgsa.utils.error_helpers import annotate
from kgsa.utils.str_helpers import derive_seed


LOG = logging.getLogger(__name__)

ANALYTIC = 'analytic'
GRID_QUANTILE = 0.01


@contextmanager
def stage(name, subset=None):
    """ Annotate any kgsa error escaping the block """

    try:
        yield
    except KgsaException as exc:
        raise annotate(exc, stage=name,
                       subset=subset_helpers.fmt(subset) if subset else None)


def load_data(cfg, seed=None):
    """ DataSet of the config's data source

    :param cfg: AnalysisConfig
    :param seed: benchmark seed, defaults to the master seed
    :return: DataSet
    """

    if cfg.data:
        return load_dataset(cfg.data)
    return generate_benchmark(cfg.benchmark, cfg.n,
                              cfg.seed if seed is None else seed)


def output_kernel_for(cfg, data):
    """ Output kernel of the config with its bandwidth rule applied

    :param cfg: AnalysisConfig
    :param data: DataSet the rule is applied to
    :return: KernelSpec
    """

    if cfg.output_kernel == LINEAR:
        return KernelSpec.linear()

    if cfg.bandwidth_rule == 'explicit':
        width = cfg.bandwidth
    elif cfg.bandwidth_rule == 'median':
        width = median_heuristic(data.outputs)
    else:
        width = spread_heuristic(data.outputs)

    LOG.info('Output kernel bandwidth %.6g from the %s rule', width,
             cfg.bandwidth_rule)
    return KernelSpec.rbf(width)


class IndexSummary(object):
    """ Replicate statistics of one subset's estimates

    With `clamp` every replicate value is clamped into [0, 1]
    before the statistics are taken, `raw_mean` keeps the mean
    of the unclamped values.
    """

    def __init__(self, subset, estimates, clamp=False):

        self.subset = subset
        self.clamp = clamp
        self.estimates = sorted(estimates, key=lambda est: (
            -1 if est.seed is None else est.seed))

        raw = np.array([est.value for est in self.estimates])
        vals = np.clip(raw, 0.0, 1.0) if clamp else raw

        self.raw_mean = float(raw.mean())
        self.mean = float(vals.mean())
        self.minimum = float(vals.min())
        self.maximum = float(vals.max())

    def __repr__(self):

        return 'IndexSummary(%s, mean=%.4f, min=%.4f, max=%.4f)' % (
            subset_helpers.fmt(self.subset), self.mean, self.minimum,
            self.maximum)

    @property
    def values(self):
        """ Raw replicate values in seed order """

        return [est.value for est in self.estimates]

    def to_dict(self):
        """ Convert into a plain dict """

        return {
            'subset': subset_helpers.to_labels(self.subset),
            'mean': self.mean,
            'min': self.minimum,
            'max': self.maximum,
            'raw_mean': self.raw_mean,
            'clamped': self.clamp,
            'estimates': [est.to_dict() for est in self.estimates],
        }

    @classmethod
    def from_dict(cls, data):
        """ Rebuild a summary from the output of to_dict """

        return cls(subset_helpers.from_labels(data['subset']),
                   [IndexEstimate.from_dict(est) for est in data['estimates']],
                   clamp=data.get('clamped', False))


class SensitivityReport(object):
    """ Everything a run_analysis call produced

    :param config: the AnalysisConfig as a primitive dict
    :param output_kernel: KernelSpec every estimate used
    :param summaries: dict of bitmask to IndexSummary for every
        subset that was estimated, requested or not
    :param requested: bitmasks explicitly asked for
    :param universe: bitmask the decompositions are taken over
    :param n_inputs: number of inputs of the data
    """

    def __init__(self, config, output_kernel, summaries, requested, universe,
                 n_inputs, ols=None, alternatives=None, shapley=None,
                 anova=None, isf=None, tuning=None, diagnostics=None,
                 schema_version=None):

        self.config = config
        self.output_kernel = output_kernel
        self.summaries = dict(summaries)
        self.requested = list(requested)
        self.universe = universe
        self.n_inputs = n_inputs
        self.ols = ols
        self.alternatives = list(alternatives or [])
        self.shapley = shapley
        self.anova = anova
        self.isf = list(isf or [])
        self.tuning = list(tuning or [])
        self.diagnostics = dict(diagnostics or {})
        self.schema_version = schema_version or kgsa.config.SCHEMA_VERSION

    def __repr__(self):

        return 'SensitivityReport(estimator=%s, subsets=%s)' % (
            self.estimator, len(self.summaries))

    @property
    def estimator(self):
        """ Estimator tag of the config """

        return self.config.get('estimator')

    @property
    def indices(self):
        """ IndexSummary of every requested subset """

        return [self.summaries[mask] for mask in self.requested]

    def table(self):
        """ IndexTable of the replicate means """

        return IndexTable(self.n_inputs, {mask: summ.mean for mask, summ
                                          in self.summaries.items()},
                          estimator=self.estimator)

    def to_dict(self):
        """ Convert into a plain dict ready for JSON """

        def _opt(item):
            return item.to_dict() if item is not None else None

        ordered = sorted(self.summaries, key=lambda mask: (
            subset_helpers.popcount(mask), mask))

        return {
            'schema_version': self.schema_version,
            'config': self.config,
            'output_kernel': self.output_kernel.to_dict(),
            'universe': subset_helpers.to_labels(self.universe),
            'n_inputs': self.n_inputs,
            'requested': [subset_helpers.to_labels(mask)
                          for mask in self.requested],
            'indices': [self.summaries[mask].to_dict() for mask in ordered],
            'ols': _opt(self.ols),
            'ols_alternatives': [alt.to_dict() for alt in self.alternatives],
            'shapley': _opt(self.shapley),
            'anova': _opt(self.anova),
            'isf': [curve.to_dict() for curve in self.isf],
            'tuning': self.tuning,
            'diagnostics': self.diagnostics,
        }

    @classmethod
    def from_dict(cls, data):
        """ Rebuild a report from the output of to_dict """

        def _opt(klass, item):
            return klass.from_dict(item) if item is not None else None

        summaries = {}
        for item in data['indices']:
            summ = IndexSummary.from_dict(item)
            summaries[summ.subset] = summ

        return cls(
            data['config'],
            KernelSpec.from_dict(data['output_kernel']),
            summaries,
            [subset_helpers.from_labels(labels)
             for labels in data['requested']],
            subset_helpers.from_labels(data['universe']),
            data['n_inputs'],
            ols=_opt(OlsResult, data.get('ols')),
            alternatives=[OlsResult.from_dict(alt)
                          for alt in data.get('ols_alternatives', [])],
            shapley=_opt(ShapleyTable, data.get('shapley')),
            anova=_opt(AnovaTable, data.get('anova')),
            isf=[IsfCurve.from_dict(curve) for curve in data.get('isf', [])],
            tuning=data.get('tuning'),
            diagnostics=data.get('diagnostics'),
            schema_version=data.get('schema_version'),
        )


class Analysis(object):
    """ State of a single run_analysis call

    :param cfg: a checked AnalysisConfig
    """

    def __init__(self, cfg):

        self.cfg = cfg
        self.seeds = [derive_seed(cfg.seed, rep)
                      for rep in range(cfg.replicates)]
        self.summaries = {}
        self.tuned = {}

        self._lock = threading.Lock()
        self._tune_locks = {}
        self._grams = {}

        with stage('data'):
            self.datasets = self._datasets()
            self.output_kernel = output_kernel_for(cfg, self.datasets[0])
            self.system = affine_system(cfg.benchmark) \
                if self.analytic else None

    @property
    def analytic(self):
        """ Boolean if the closed form oracle was asked for """

        return self.cfg.estimator == ANALYTIC

    @property
    def n_inputs(self):
        """ Number of inputs of the data """

        return self.datasets[0].n_inputs

    def _datasets(self):
        """ One DataSet per replicate

        CSV data is shared by every replicate, the seeds then only
        drive the sub-sampling & cross-validation.
        """

        cfg = self.cfg

        if cfg.data:
            return [load_data(cfg)] * len(self.seeds)

        count = 1 if self.analytic else len(self.seeds)
        datasets = []

        for rep, seed in enumerate(self.seeds[:count]):
            signals.replicate_started.send(rep, seed=seed)
            datasets.append(load_data(cfg, seed))
        return datasets

    def output_gram(self, rep):
        """ Output Gram matrix of a replicate, built once

        Every subset & every tuning step of a replicate shares the
        same outputs so the matrix is cached under the replicate
        index, CSV data under 0 as all replicates share it.
        """

        if self.cfg.data:
            rep = 0

        with self._lock:
            if rep not in self._grams:
                self._grams[rep] = gram_matrix(self.output_kernel,
                                               self.datasets[rep].outputs)
            return self._grams[rep]

    def _tuned(self, mask, rep):
        """ TuneResult of a subset, tuned at most once per key """

        if self.cfg.tune_scope == 'once':
            rep = 0

        key = (mask, rep)

        with self._lock:
            lock = self._tune_locks.setdefault(key, threading.Lock())

        with lock:
            if key not in self.tuned:
                cv_cfg = self.cfg.cv
                if rep:
                    cv_cfg = cv_cfg.merge({'seed': self.seeds[rep]})

                with stage('tune', mask):
                    self.tuned[key] = tune_cme(
                        self.datasets[rep], mask, self.output_kernel,
                        cfg=cv_cfg, family=self.cfg.input_kernel,
                        bandwidth=self.cfg.input_bandwidth,
                        output_gram=self.output_gram(rep))
        return self.tuned[key]

    def hyperparameters(self, mask, rep):
        """ Input kernel & lambda of a CME fit

        :return: tuple of (KernelSpec, lam)
        :raise: InvalidConfig
        """

        cfg = self.cfg

        if cfg.tune:
            return tuple(self._tuned(mask, rep))
        elif not cfg.lam:
            raise InvalidConfig('lambda', detail='CME fits need either a '
                                                 'lambda or tuning.')

        base, median = base_kernel(self.datasets[rep], mask, cfg.input_kernel)
        return base.with_bandwidth(cfg.input_bandwidth or median), cfg.lam

    def _analytic(self, mask):

        if self.output_kernel.family == LINEAR:
            value = analytic_variance_beta(self.system, mask)
        else:
            value = analytic_rbf_beta(self.system, mask,
                                      self.output_kernel.bandwidth)

        return IndexEstimate(mask, value, ANALYTIC, self.cfg.n,
                             hyperparameters={
                                 'output_kernel':
                                     self.output_kernel.to_dict()})

    def estimate(self, mask, rep):
        """ IndexEstimate of one subset on one replicate """

        cfg = self.cfg
        data = self.datasets[rep]
        seed = self.seeds[rep]

        with stage('estimate', mask):
            data.check_subset(mask)

            if self.analytic:
                return self._analytic(mask)

            output_gram = self.output_gram(rep)

            if cfg.estimator == NN_F:
                return beta_nn_full(data, mask, self.output_kernel,
                                    output_gram=output_gram, seed=seed)
            elif cfg.estimator == NN_S:
                return beta_nn_subsample(data, mask, self.output_kernel,
                                         cfg.n_a or data.n_samples, seed,
                                         output_gram=output_gram)

            kernel, lam = self.hyperparameters(mask, rep)
            model = fit_cme(data, mask, kernel, self.output_kernel, lam,
                            output_gram=output_gram)
            return beta_cme(model, data, variant=cfg.estimator[-1],
                            seed=seed)

    def estimate_subsets(self, masks):
        """ Estimate every subset on every replicate

        Already estimated subsets are skipped. The results are
        merged by subset then seed whatever order the pool
        finished them in.

        :return: dict of bitmask to replicate mean
        """

        masks = sorted(set(int(mask) for mask in masks if mask))
        todo = [mask for mask in masks if mask not in self.summaries]
        reps = 1 if self.analytic else len(self.seeds)
        jobs = [(mask, rep) for mask in todo for rep in range(reps)]

        if jobs:
            LOG.debug('Estimating %d subsets over %d replicates', len(todo),
                      reps)

            with ThreadPoolExecutor(max_workers=self.cfg.threads) as pool:
                results = list(pool.map(lambda job: self.estimate(*job),
                                        jobs))

            grouped = {}
            for (mask, _), est in zip(jobs, results):
                grouped.setdefault(mask, []).append(est)

            for mask in todo:
                self.summaries[mask] = IndexSummary(mask, grouped[mask],
                                                    clamp=self.cfg.clamp)

        return {mask: self.summaries[mask].mean for mask in masks}

    def isf_grid(self, mask):
        """ Common ISF query grid over the first replicate's inputs

        Each axis spans the central quantiles of its input, a
        line for one input & a full mesh for two.
        """

        cols = self.datasets[0].select(mask)
        count = self.cfg.isf_points or kgsa.config.ISF_GRID_POINTS

        if cols.shape[1] > 2:
            raise InvalidConfig('isf_subsets', detail='ISF grids are built '
                                                      'for at most 2 inputs.')

        axes = [np.linspace(np.quantile(col, GRID_QUANTILE),
                            np.quantile(col, 1.0 - GRID_QUANTILE), count)
                for col in cols.T]
        mesh = np.meshgrid(*axes, indexing='ij')

        return np.column_stack([axis.ravel() for axis in mesh])

    def isf_curve(self, mask):
        """ ISF curves averaged over the replicates on one grid """

        with stage('isf', mask):
            self.datasets[0].check_subset(mask)
            grid = self.isf_grid(mask)

            if self.analytic:
                if self.output_kernel.family == LINEAR:
                    raise InvalidConfig('output_kernel', detail='Analytic '
                                        'ISFs need the rbf output kernel.')
                return analytic_isf(self.system, mask,
                                    self.output_kernel.bandwidth, grid)

            def _profile(rep):

                data = self.datasets[rep]
                kernel, lam = self.hyperparameters(mask, rep)
                model = fit_cme(data, mask, kernel, self.output_kernel, lam,
                                output_gram=self.output_gram(rep))
                return isf_profile(model, grid)

            with ThreadPoolExecutor(max_workers=self.cfg.threads) as pool:
                curves = list(pool.map(_profile, range(len(self.seeds))))

        return IsfCurve(mask, grid,
                        np.mean([curve.gamma_n for curve in curves], axis=0),
                        np.mean([curve.gamma_d for curve in curves], axis=0),
                        np.any([curve.outside_hull for curve in curves],
                               axis=0))

    def requested(self, universe):
        """ Explicit subsets plus every subset up to `order` """

        masks = list(self.cfg.subsets)
        if self.cfg.order:
            masks.extend(subset_helpers.subsets_up_to(universe,
                                                      self.cfg.order))

        ret = []
        for mask in masks:
            if mask not in ret:
                ret.append(mask)
        return sorted(ret, key=lambda mask: (subset_helpers.popcount(mask),
                                             mask))

    def run(self):
        """ Estimate, decompose & assemble the report """

        cfg = self.cfg
        started = time.time()
        universe = cfg.universe or subset_helpers.full(self.n_inputs)

        with stage('estimate'):
            self.datasets[0].check_subset(universe)
            requested = self.requested(universe)
            for mask in requested:
                self.datasets[0].check_subset(mask)
            self.estimate_subsets(requested)

        table = IndexTable(self.n_inputs, source=self.estimate_subsets,
                           estimator=cfg.estimator, seeds=self.seeds)
        for mask, summ in self.summaries.items():
            table.set(mask, summ.mean)

        if cfg.screen is not None and cfg.wants_decomposition:
            with stage('screen'):
                universe = screen_inputs(table, universe, cfg.screen)

        parts = {}

        if universe and cfg.wants_decomposition:
            if 'ols' in cfg.targets:
                with stage('ols', universe):
                    parts['ols'] = ols_decomposition(table, universe,
                                                     cfg.tie_tol)
                    if parts['ols'].has_ties:
                        parts['alternatives'] = ols_alternatives(
                            table, universe, cfg.tie_tol)
            if 'shapley' in cfg.targets:
                with stage('shapley', universe):
                    parts['shapley'] = shapley_effects(table, universe)
            if 'anova' in cfg.targets:
                with stage('anova', universe):
                    parts['anova'] = anova_effects(table, universe)
        elif cfg.wants_decomposition:
            LOG.warning('No input passed the screening threshold of %g, '
                        'skipping the decompositions', cfg.screen)

        if 'isf' in cfg.targets:
            parts['isf'] = [self.isf_curve(mask) for mask in cfg.isf_subsets]

        for rep, seed in enumerate(self.seeds):
            signals.replicate_finished.send(rep, seed=seed)

        return SensitivityReport(
            cfg.to_primitive(), self.output_kernel, self.summaries,
            requested, universe, self.n_inputs, tuning=self._tuning(),
            diagnostics=self._diagnostics(table, started), **parts)

    def _tuning(self):

        ret = []
        for (mask, rep), result in sorted(self.tuned.items()):
            item = result.to_dict()
            item['replicate'] = rep
            ret.append(item)
        return ret

    def _diagnostics(self, table, started):

        jitters = [est.hyperparameters.get('jitter') or 0.0
                   for summ in self.summaries.values()
                   for est in summ.estimates]

        return {
            'wall_clock': time.time() - started,
            'replicates': len(self.seeds),
            'seeds': self.seeds,
            'threads': self.cfg.threads,
            'subsets_estimated': len(self.summaries),
            'max_jitter': max(jitters or [0.0]),
            'cv_evaluations': sum(res.evaluations
                                  for res in self.tuned.values()),
            'monotonicity_violations': len(table.monotonicity_violations()),
        }


def run_analysis(cfg):
    """ Run a complete sensitivity analysis

    Deterministic given the master seed, only the wall clock
    diagnostic differs between identical runs.

    :param cfg: AnalysisConfig or a dict of one
    :return: SensitivityReport
    :raise: any KgsaException annotated with the failing stage
    """

    if isinstance(cfg, dict):
        cfg = AnalysisConfig.load(cfg)
    else:
        cfg.check()

    return Analysis(cfg).run()


def _replicate_values(entry):

    entry = getattr(entry, 'estimates', entry)
    return np.array([getattr(val, 'value', val) for val in entry],
                    dtype=float)


def summed_mse(estimates, truth):
    """ Mean squared error over the replicates summed over subsets

    :param estimates: dict of bitmask to replicate values, either
        floats, IndexEstimate's or an IndexSummary
    :param truth: dict of bitmask to the exact beta
    :return: float
    :raise: MissingIndices
    """

    missing = [subset_helpers.fmt(mask) for mask in truth
               if mask not in estimates]
    if missing:
        raise MissingIndices(missing)

    return float(sum(np.mean((_replicate_values(estimates[mask]) - value) ** 2)
                     for mask, value in truth.items()))
