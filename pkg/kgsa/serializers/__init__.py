"""
    serializers
    ~~~~~~~~~~~

    Location of the report formats we write
"""

from ..serializers.base import Serializer as BaseSerializer
from ..serializers.comma_sep import Serializer as CsvSerializer, dataset_csv
from ..serializers.json_7159 import Serializer as JsonSerializer
from ..serializers.plot_data import Serializer as PlotDataSerializer

from kgsa.exceptions import InvalidConfig


SERIALIZERS = {
    CsvSerializer.FORMAT: CsvSerializer,
    JsonSerializer.FORMAT: JsonSerializer,
    PlotDataSerializer.FORMAT: PlotDataSerializer,
}


def emit_report(report, fmt, out):
    """ Write a report in one of the supported formats

    :param report: SensitivityReport
    :param fmt: 'json', 'csv-tables' or 'plot-data'
    :param out: output directory
    :return: list of str paths written
    :raise: InvalidConfig
    """

    try:
        serializer = SERIALIZERS[fmt](out)
    except KeyError:
        raise InvalidConfig('format', detail='Unknown report format "%s", '
                                             'expected one of %s.'
                            % (fmt, ', '.join(sorted(SERIALIZERS))))
    return serializer.serialize(report)
