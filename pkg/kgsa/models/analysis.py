"""
    models.analysis
    ~~~~~~~~~~~~~~~

    The AnalysisConfig model, everything run_analysis needs to
    know. It's loaded from a JSON config file & overridden by
    command line flags.
"""

from schematics.types import (BooleanType, FloatType, IntType, ListType,
                              ModelType, StringType)

from kgsa.benchmarks import AFFINE_BENCHMARKS, BENCHMARKS
from kgsa.exceptions import (AnovaNotAttested, InvalidConfig,
                             MissingDataSource, MultipleDataSources)
from kgsa.models.base import Model as BaseModel
from kgsa.models.cv import Model as CvConfig
from kgsa.types import PositiveFloatType, SubsetType
from kgsa.validators import validate_nonnegative


ESTIMATORS = ('CME-N', 'CME-D', 'NN-F', 'NN-S', 'analytic')
BANDWIDTH_RULES = ('explicit', 'median', 'spread')
TARGETS = ('indices', 'ols', 'shapley', 'anova', 'isf')
FORMATS = ('json', 'csv-tables', 'plot-data')
TUNE_SCOPES = ('once', 'replicate')


class Model(BaseModel):
    """ AnalysisConfig

    The subsets estimated are the union of `subsets`, every
    subset up to `order` inputs & whatever the requested
    decompositions over `universe` need. `tune_scope` decides
    whether hyperparameters are tuned on the first replicate &
    reused (`once`) or tuned on every replicate.
    """

    data = StringType()
    benchmark = StringType(choices=list(BENCHMARKS))
    n = IntType(default=1000, min_value=2)
    seed = IntType(default=0, min_value=0)
    independent = BooleanType(default=False)

    output_kernel = StringType(default='rbf', choices=['rbf', 'linear'])
    bandwidth_rule = StringType(default='spread',
                                choices=list(BANDWIDTH_RULES))
    bandwidth = PositiveFloatType()

    input_kernel = StringType(default='rbf', choices=['rbf', 'mahalanobis'])
    input_bandwidth = PositiveFloatType()

    estimator = StringType(default='CME-N', choices=list(ESTIMATORS))
    n_a = IntType(min_value=1)
    lam = PositiveFloatType(serialized_name='lambda',
                            deserialize_from=['lambda', 'lam'])
    tune = BooleanType(default=False)
    tune_scope = StringType(default='once', choices=list(TUNE_SCOPES))
    cv = ModelType(CvConfig, default=CvConfig)

    subsets = ListType(SubsetType(), default=list)
    order = IntType(min_value=1)
    universe = SubsetType()
    targets = ListType(StringType(choices=list(TARGETS)),
                       default=lambda: ['indices'])
    screen = FloatType(validators=[validate_nonnegative])
    tie_tol = FloatType(validators=[validate_nonnegative])
    isf_subsets = ListType(SubsetType(), default=list)
    isf_points = IntType(min_value=1)

    replicates = IntType(default=1, min_value=1)
    threads = IntType(default=1, min_value=1)
    clamp = BooleanType(default=False)

    out = StringType()
    format = StringType(default='json', choices=list(FORMATS))

    def check(self):
        """ Schematics validation plus the cross-field guards

        :raise:
            InvalidConfig, MultipleDataSources, MissingDataSource,
            AnovaNotAttested
        """

        super(Model, self).check()

        if self.data and self.benchmark:
            raise MultipleDataSources
        elif not self.data and not self.benchmark:
            raise MissingDataSource

        if 'anova' in self.targets and not self.independent:
            raise AnovaNotAttested

        if self.bandwidth_rule == 'explicit' and not self.bandwidth:
            raise InvalidConfig('bandwidth', detail='The explicit bandwidth '
                                                    'rule needs a bandwidth.')

        if self.estimator == 'analytic' and \
                self.benchmark not in AFFINE_BENCHMARKS:
            raise InvalidConfig('estimator', detail='The analytic estimator '
                                                    'is only available for '
                                                    'the %s benchmarks.'
                                % ' & '.join(AFFINE_BENCHMARKS))

        if self.estimator in ('CME-N', 'CME-D') and not self.tune \
                and not self.lam:
            raise InvalidConfig('lambda', detail='The CME estimators need '
                                                 'either a lambda or tuning.')

        if 'isf' in self.targets and not self.isf_subsets:
            raise InvalidConfig('isf_subsets', detail='ISF profiles need at '
                                                      'least one subset.')
        return self

    @property
    def wants_decomposition(self):
        """ Boolean if OLS, Shapley or ANOVA were requested """

        return bool(set(self.targets) & set(['ols', 'shapley', 'anova']))
