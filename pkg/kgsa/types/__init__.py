"""
    types
    ~~~~~

    All of our custom schematics model types.
"""

from ..types.positive import Type as PositiveFloatType
from ..types.subset import Type as SubsetType
