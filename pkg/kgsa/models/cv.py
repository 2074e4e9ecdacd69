"""
    models.cv
    ~~~~~~~~~

    Cross-validation & simplex search settings used to tune
    the CME hyperparameters.
"""

import kgsa
import kgsa.validators as validators

from schematics.exceptions import ValidationError
from schematics.types import FloatType, IntType, ListType, StringType

from kgsa.models.base import Model as BaseModel
from kgsa.types import PositiveFloatType


JOINT = 'joint'
LAMBDA_ONLY = 'lambda'


class Model(BaseModel):
    """ CvConfig

    `mode` picks the optimized hyperparameters: `joint` tunes
    the input bandwidth & lambda together, `lambda` only the
    regularizer with the bandwidth left at the median heuristic.
    Bounds of the bandwidth are factors of that heuristic.
    """

    folds = IntType(default=lambda: kgsa.config.CV_FOLDS, min_value=2)
    seed = IntType(default=0, min_value=0)
    mode = StringType(default=JOINT, choices=[JOINT, LAMBDA_ONLY])

    lambda_init = PositiveFloatType(default=lambda: kgsa.config.LAMBDA_INIT)
    lambda_bounds = ListType(
        FloatType(), min_size=2, max_size=2,
        default=lambda: list(kgsa.config.LAMBDA_BOUNDS),
        validators=[validators.validate_bounds],
    )
    bandwidth_bounds = ListType(
        FloatType(), min_size=2, max_size=2,
        default=lambda: list(kgsa.config.BANDWIDTH_FACTOR_BOUNDS),
        validators=[validators.validate_bounds],
    )

    max_evals = IntType(default=lambda: kgsa.config.SIMPLEX_MAX_EVALS,
                        min_value=1)
    xatol = PositiveFloatType(default=lambda: kgsa.config.SIMPLEX_XATOL)

    def validate_lambda_init(self, data, value):
        """ The initial lambda must lie within its bounds """

        bounds = data.get('lambda_bounds')

        if value and bounds and not bounds[0] <= value <= bounds[1]:
            raise ValidationError('must lie within lambda_bounds')
        return value
