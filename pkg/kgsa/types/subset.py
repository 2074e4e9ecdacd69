"""
    types.subset
    ~~~~~~~~~~~~

    schematics input subset type

    Natively a subset is an int bitmask. From the outside it is
    given as a list of 1-based input labels or a string like
    "(1,3)" & it's serialized back into a list of labels.
"""

from schematics.exceptions import ConversionError, ValidationError
from schematics.types import BaseType

from kgsa.exceptions import InvalidSubset
from kgsa.utils import subset_helpers
from kgsa.utils.str_helpers import str_to_labels


class Type(BaseType):
    """ Input subset field with validation """

    MESSAGES = {
        'convert': 'not a valid input subset, use labels like (1,3)',
        'empty': 'the input subset must not be empty',
    }

    def __init__(self, allow_empty=False, **kwargs):

        self.allow_empty = allow_empty

        super(Type, self).__init__(**kwargs)

    def to_native(self, value, context=None):
        """ Schematics deserializer override

        :return: int bitmask
        """

        if isinstance(value, bool):
            raise ConversionError(self.messages['convert'])

        if isinstance(value, int):
            if value < 0 or value >> subset_helpers.MAX_INPUTS:
                raise ConversionError(self.messages['convert'])
            return value

        try:
            if isinstance(value, str):
                labels = str_to_labels(value)
            else:
                labels = list(value)
            return subset_helpers.from_labels(labels)
        except (InvalidSubset, TypeError, ValueError):
            raise ConversionError(self.messages['convert'])

    def to_primitive(self, value, context=None):
        """ Schematics serializer override

        :return: list of int labels
        """

        return subset_helpers.to_labels(value)

    def validate_subset(self, value):
        """ Schematics validator """

        if not value and not self.allow_empty:
            raise ValidationError(self.messages['empty'])
        return value
