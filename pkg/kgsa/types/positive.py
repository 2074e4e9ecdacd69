"""
    types.positive
    ~~~~~~~~~~~~~~

    schematics strictly positive & finite float type
"""

import math

from schematics.exceptions import ValidationError
from schematics.types import FloatType


class Type(FloatType):
    """ Float field for bandwidths, regularizers & the like """

    MESSAGES = {
        'positive': 'must be a finite number > 0',
    }

    def validate_positive(self, value):
        """ Schematics validator """

        if not math.isfinite(value) or value <= 0:
            raise ValidationError(self.messages['positive'])
        return value
