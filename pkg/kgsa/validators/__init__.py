"""
    validators
    ~~~~~~~~~~

    Adhoc custom schematics validators to be shared across any
    models or types.
"""

import math

from schematics.exceptions import ValidationError


def validate_bounds(value):
    """ A finite (lower, upper) pair of positive numbers """

    if value is None:
        return value

    try:
        lower, upper = [float(val) for val in value]
    except (TypeError, ValueError):
        raise ValidationError('bounds must be a pair of numbers')

    if not (math.isfinite(lower) and math.isfinite(upper)):
        raise ValidationError('bounds must be finite')
    if lower <= 0 or lower >= upper:
        raise ValidationError('bounds must satisfy 0 < lower < upper')
    return value


def validate_nonnegative(value):
    """ Non-negative number validator """

    if value is not None and value < 0:
        raise ValidationError('must not be negative')
    return value
