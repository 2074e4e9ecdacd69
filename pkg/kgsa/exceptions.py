"""
    exceptions
    ~~~~~~~~~~

    Custom error classes raised throughout the library. Each
    error carries a machine readable code, a human readable
    title & detail, & the exit code the command line interface
    terminates with when the error escapes to it.
"""


class KgsaException(Exception):
    """ Base exception class for every kgsa error

    The attributes passed in as kwargs are stored in a data
    dict & exposed as attributes. `stage` & `subset` may be
    attached later on by the analysis driver to point at the
    failing step.
    """

    EXIT_CODE = 1

    def __init__(self, **kwargs):

        kwargs['detail'] = kwargs.get('detail', '')
        kwargs['exit_code'] = kwargs.get('exit_code', self.EXIT_CODE)

        self.data = kwargs

        super(KgsaException, self).__init__(kwargs['detail'])

    def __call__(self):

        return self

    def __getattr__(self, key):

        if key == 'data' or key.startswith('_'):
            raise AttributeError(key)

        try:
            return self.data[key]
        except KeyError:
            raise AttributeError(key)

    def __setattr__(self, name, value):

        if name == 'data' or name.startswith('_'):
            super(KgsaException, self).__setattr__(name, value)
        else:
            self.data[name] = value

    def __str__(self):

        detail = self.data.get('detail', '')
        where = []

        if self.data.get('stage'):
            where.append('stage=%s' % self.data['stage'])
        if self.data.get('subset'):
            where.append('subset=%s' % self.data['subset'])

        if where:
            return '%s [%s]' % (detail, ', '.join(where))
        return detail

    def to_dict(self):
        """ Convenience function to get the exception as a dict """

        return dict(self.data)


"""
    1 Configuration errors
    ~~~~~~~~~~~~~~~~~~~~~~
"""


class ConfigurationError(KgsaException):
    """ Umbrella class for anything wrong with what was asked for """

    EXIT_CODE = 1


class InvalidConfig(ConfigurationError):
    """ An analysis or cross-validation config failed validation

    This exception supports a detail override & requires the
    name of the offending field as `source`.
    """

    DETAIL = 'The configuration is invalid. Please fix it & retry.'

    def __init__(self, source, **kwargs):
        super(InvalidConfig, self).__init__(**{
            'code': 'invalid_config',
            'detail': kwargs.get('detail', self.DETAIL),
            'source': source,
            'title': 'Invalid configuration',
        })


class MultipleDataSources(ConfigurationError):
    """ Both a data file & a benchmark were requested """

    DETAIL = 'Exactly one data source may be given: either a CSV ' \
             'data file or a built-in benchmark, not both.'

    def __init__(self, **kwargs):
        super(MultipleDataSources, self).__init__(**{
            'code': 'multiple_data_sources',
            'detail': self.DETAIL,
            'source': 'data',
            'title': 'More than one data source',
        })


class MissingDataSource(ConfigurationError):
    """ Neither a data file nor a benchmark were requested """

    DETAIL = 'No data source was given. Pass a CSV data file or ' \
             'the name of a built-in benchmark.'

    def __init__(self, **kwargs):
        super(MissingDataSource, self).__init__(**{
            'code': 'missing_data_source',
            'detail': self.DETAIL,
            'source': 'data',
            'title': 'No data source',
        })


class AnovaNotAttested(ConfigurationError):
    """ ANOVA effects were requested without attesting independence """

    DETAIL = 'Kernel ANOVA effects are only valid for independent ' \
             'inputs. Set the independence attestation flag if the ' \
             'inputs of your data are independent.'

    def __init__(self, **kwargs):
        super(AnovaNotAttested, self).__init__(**{
            'code': 'anova_not_attested',
            'detail': self.DETAIL,
            'source': 'independent',
            'title': 'Independence not attested',
        })


class UnknownBenchmark(ConfigurationError):
    """ The benchmark name isn't one we ship """

    DETAIL = 'Unknown benchmark "{0}". Supported benchmarks are: {1}.'

    def __init__(self, name, choices, **kwargs):

        choices = ', '.join('"{0}"'.format(c) for c in choices)
        super(UnknownBenchmark, self).__init__(**{
            'code': 'unknown_benchmark',
            'detail': self.DETAIL.format(name, choices),
            'source': 'benchmark',
            'title': 'Unknown benchmark',
        })


class InvalidKernelSpec(ConfigurationError):
    """ A kernel definition violates its invariants

    This exception supports a detail override.
    """

    DETAIL = 'The kernel definition is invalid.'

    def __init__(self, **kwargs):
        super(InvalidKernelSpec, self).__init__(**{
            'code': 'invalid_kernel_spec',
            'detail': kwargs.get('detail', self.DETAIL),
            'title': 'Invalid kernel definition',
        })


class InvalidSubset(ConfigurationError):
    """ An input subset is empty, malformed or out of range

    This exception supports a detail override.
    """

    DETAIL = 'The input subset is invalid.'

    def __init__(self, **kwargs):
        super(InvalidSubset, self).__init__(**{
            'code': 'invalid_subset',
            'detail': kwargs.get('detail', self.DETAIL),
            'title': 'Invalid input subset',
        })


class OverlappingSubsets(ConfigurationError):
    """ A conditional index was asked for with overlapping sets """

    DETAIL = 'The conditioned subset {0} and the conditioning ' \
             'subset {1} must be disjoint.'

    def __init__(self, r, s, **kwargs):
        super(OverlappingSubsets, self).__init__(**{
            'code': 'overlapping_subsets',
            'detail': self.DETAIL.format(r, s),
            'title': 'Overlapping subsets',
        })


class MissingIndices(ConfigurationError):
    """ A decomposition needs indices the table doesn't hold """

    DETAIL = 'The index table is missing entries for the subsets: {0}.'

    def __init__(self, subsets, **kwargs):
        super(MissingIndices, self).__init__(**{
            'code': 'missing_indices',
            'detail': self.DETAIL.format(', '.join(subsets)),
            'missing': list(subsets),
            'title': 'Missing index table entries',
        })


"""
    2 Data errors
    ~~~~~~~~~~~~~
"""


class DataError(KgsaException):
    """ Umbrella class for anything wrong with the numbers given """

    EXIT_CODE = 2


class InvalidCsv(DataError):
    """ The CSV data file is invalid

    This exception supports a detail override & optional
    `row` & `column` diagnostics.
    """

    DETAIL = 'The CSV data file is invalid or corrupt.'

    def __init__(self, **kwargs):
        super(InvalidCsv, self).__init__(**{
            'code': 'invalid_csv',
            'column': kwargs.get('column'),
            'detail': kwargs.get('detail', self.DETAIL),
            'row': kwargs.get('row'),
            'title': 'Invalid or corrupt CSV data',
        })


class MissingColumns(DataError):
    """ The data has no input or no output columns """

    DETAIL = 'The data must hold at least one input column ' \
             '(prefixed "x") & one output column (prefixed "y"). ' \
             'No {0} columns were found.'

    def __init__(self, kind, **kwargs):
        super(MissingColumns, self).__init__(**{
            'code': 'missing_columns',
            'detail': self.DETAIL.format(kind),
            'title': 'Missing input or output columns',
        })


class TooFewSamples(DataError):
    """ Not enough rows for the requested statistic """

    DETAIL = 'At least {0} samples are required, got {1}.'

    def __init__(self, need, got, **kwargs):
        super(TooFewSamples, self).__init__(**{
            'code': 'too_few_samples',
            'detail': kwargs.get('detail', self.DETAIL.format(need, got)),
            'title': 'Too few samples',
        })


class DimensionMismatch(DataError):
    """ Two arrays that must agree in shape don't """

    DETAIL = 'Dimension mismatch: expected {0}, got {1}.'

    def __init__(self, expected, got, **kwargs):
        super(DimensionMismatch, self).__init__(**{
            'code': 'dimension_mismatch',
            'detail': self.DETAIL.format(expected, got),
            'title': 'Dimension mismatch',
        })


class NonFiniteSamples(DataError):
    """ NaN or infinite entries where finite numbers are required """

    DETAIL = 'The {0} contain NaN or infinite entries.'

    def __init__(self, what='samples', **kwargs):
        super(NonFiniteSamples, self).__init__(**{
            'code': 'non_finite_samples',
            'detail': self.DETAIL.format(what),
            'title': 'Non-finite samples',
        })


class DegenerateSample(DataError):
    """ The samples have no spread to derive a bandwidth from

    This exception supports a detail override.
    """

    DETAIL = 'degenerate sample, zero median distance'

    def __init__(self, **kwargs):
        super(DegenerateSample, self).__init__(**{
            'code': 'degenerate_sample',
            'detail': kwargs.get('detail', self.DETAIL),
            'title': 'Degenerate sample',
        })


"""
    3 Numerical failures
    ~~~~~~~~~~~~~~~~~~~~
"""


class NumericalFailure(KgsaException):
    """ Umbrella class for solver & integrator breakdowns """

    EXIT_CODE = 3


class FactorizationFailure(NumericalFailure):
    """ The regularized Gram matrix could not be Cholesky factored """

    DETAIL = 'Cholesky factorization of the regularized input Gram ' \
             'matrix failed even after adding a diagonal jitter of {0}.'

    def __init__(self, jitter, **kwargs):
        super(FactorizationFailure, self).__init__(**{
            'code': 'factorization_failure',
            'detail': self.DETAIL.format(jitter),
            'title': 'Factorization failure',
        })


class DegenerateDenominator(NumericalFailure):
    """ The output kernel statistics can't normalize an index """

    DETAIL = 'The normalization denominator C_Y - C_YY = {0} is not ' \
             'positive; the output kernel cannot separate the output ' \
             'samples.'

    def __init__(self, value, **kwargs):
        super(DegenerateDenominator, self).__init__(**{
            'code': 'degenerate_denominator',
            'detail': self.DETAIL.format(value),
            'title': 'Degenerate normalization',
        })


class IntegratorStepError(NumericalFailure):
    """ The reactor integration did not self-converge """

    DETAIL = 'Doubling the step count from {0} changed the final ' \
             'concentration of D by {1:.3e} M, above the {2:.1e} M ' \
             'tolerance.'

    def __init__(self, steps, change, tol, **kwargs):
        super(IntegratorStepError, self).__init__(**{
            'code': 'integrator_step_error',
            'detail': self.DETAIL.format(steps, change, tol),
            'title': 'Integrator did not converge',
        })


class NonFiniteObjective(NumericalFailure):
    """ The simplex objective is not finite at the initial point """

    DETAIL = 'The objective evaluated to {0} at the initial point {1}.'

    def __init__(self, value, point, **kwargs):
        super(NonFiniteObjective, self).__init__(**{
            'code': 'non_finite_objective',
            'detail': self.DETAIL.format(value, point),
            'title': 'Non-finite objective',
        })
