"""
    deserializers.json_7159
    ~~~~~~~~~~~~~~~~~~~~~~~

    Deserializer that is compliant with RFC 7159 (JSON spec).
    It reads back analysis configs & emitted reports.

    To avoid name collisions with the python json module we
    name ours json_7159.
"""

import json

import kgsa

from kgsa.exceptions import InvalidConfig
from kgsa.models.analysis import Model as AnalysisConfig
from kgsa.utils.error_helpers import abort

from ..deserializers.base import Deserializer as BaseDeserializer


class Deserializer(BaseDeserializer):
    """ JSON compliant deserializer """

    EXTENSION = '.json'

    def deserialize(self):
        """ Invoke the RFC 7159 spec compliant parser

        :return: the parsed JSON document as a dict
        :raise: InvalidConfig
        """

        with self.read() as handle:
            try:
                data = json.load(handle)
            except UnicodeDecodeError:
                abort(InvalidConfig('path', detail='"%s" is not UTF-8 '
                                                   'encoded JSON.'
                                    % self.path))
            except ValueError as exc:
                abort(InvalidConfig('path', detail='"%s" is malformed JSON: '
                                                   '%s' % (self.path, exc)))

        if not isinstance(data, dict):
            abort(InvalidConfig('path', detail='"%s" must hold a JSON object.'
                                % self.path))
        return data


def load_config(path):
    """ AnalysisConfig from a JSON config file

    The config isn't checked yet so command line flags can
    still be merged in.

    :return: AnalysisConfig
    """

    return AnalysisConfig(Deserializer(path).deserialize())


def load_report(path):
    """ SensitivityReport from a JSON report file

    :return: SensitivityReport
    :raise: InvalidConfig
    """

    from kgsa.analysis import SensitivityReport

    data = Deserializer(path).deserialize()
    version = data.get('schema_version')

    if version != kgsa.config.SCHEMA_VERSION:
        abort(InvalidConfig('schema_version', detail='Unsupported report '
                                                     'schema version %s.'
                            % version))
    return SensitivityReport.from_dict(data)
