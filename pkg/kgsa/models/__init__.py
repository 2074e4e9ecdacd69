"""
    models
    ~~~~~~

    Module containing all of our schematics configuration
    models.
"""

from ..models.base import Model as BaseModel
from ..models.cv import Model as CvConfig
from ..models.analysis import Model as AnalysisConfig
