"""
    deserializers
    ~~~~~~~~~~~~~

    All file formats we read
"""

from ..deserializers.base import Deserializer as BaseDeserializer
from ..deserializers.comma_sep import (Deserializer as CsvDeserializer,
                                       load_dataset)
from ..deserializers.json_7159 import (Deserializer as JsonDeserializer,
                                       load_config, load_report)
