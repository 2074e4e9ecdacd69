"""
    deserializers.comma_sep
    ~~~~~~~~~~~~~~~~~~~~~~~

    Deserializer of RFC 4180 CSV data files into a DataSet.

    The header row names the columns. Columns prefixed `x` are
    the inputs & columns prefixed `y` the outputs, both in
    header order. Any other column is ignored with a warning.
"""

import csv
import logging

import numpy as np

from kgsa.data import DataSet
from kgsa.exceptions import InvalidCsv, MissingColumns, TooFewSamples
from kgsa.utils.error_helpers import abort

from ..deserializers.base import Deserializer as BaseDeserializer


LOG = logging.getLogger(__name__)


class Parser(object):
    """ The CSV row parser """

    @staticmethod
    def parse_header(header):
        """ Split the field headers into input & output columns

        :param header: list of str
        :return: tuple of (input column positions, output column
            positions)
        """

        if not header or not any(field.strip() for field in header):
            abort(InvalidCsv(detail='The CSV data has no header row.',
                             row=1))

        inputs, outputs, ignored = [], [], []

        for pos, field in enumerate(header):
            name = field.strip().lower()

            if name.startswith('x'):
                inputs.append(pos)
            elif name.startswith('y'):
                outputs.append(pos)
            else:
                ignored.append(field)

        if ignored:
            LOG.warning('Ignoring CSV columns %s, only x* & y* columns are '
                        'read', ', '.join(ignored))

        if not inputs:
            abort(MissingColumns('input'))
        elif not outputs:
            abort(MissingColumns('output'))

        return inputs, outputs

    @staticmethod
    def parse_row(row, header, line_num, keep):
        """ Turn the kept cells of a single CSV record into floats

        Cells of ignored columns are never converted.

        :param row: list of str
        :param header: list of str field headers
        :param line_num: int line number for the diagnostics
        :param keep: list of column positions to convert
        :return: list of float in `keep` order
        """

        if len(row) != len(header):
            abort(InvalidCsv(detail='Row {} has {} fields but the header '
                                    'has {}.'.format(line_num, len(row),
                                                     len(header)),
                             row=line_num))

        ret = []

        for pos in keep:
            field, cell = header[pos], row[pos]

            try:
                val = float(cell)
            except ValueError:
                abort(InvalidCsv(detail='Row {} column {} is not a number: '
                                        '"{}".'.format(line_num, field, cell),
                                 row=line_num, column=field))

            if not np.isfinite(val):
                abort(InvalidCsv(detail='Row {} column {} is not finite: '
                                        '{}.'.format(line_num, field, cell),
                                 row=line_num, column=field))
            ret.append(val)
        return ret


class Deserializer(BaseDeserializer):
    """ CSV deserializer """

    EXTENSION = '.csv'

    def deserialize(self):
        """ Invoke the deserializer

        Blank lines are skipped.

        :return: DataSet
        :raise: InvalidCsv, MissingColumns, TooFewSamples
        """

        rows = []

        with self.read() as handle:
            try:
                reader = csv.reader(handle)
                header = next(reader, None)
                inputs, outputs = Parser.parse_header(header)

                for row in reader:
                    if not any(cell.strip() for cell in row):
                        continue
                    rows.append(Parser.parse_row(row, header,
                                                 reader.line_num,
                                                 inputs + outputs))
            except csv.Error as exc:
                abort(InvalidCsv(detail='Malformed CSV data: %s' % exc))
            except UnicodeDecodeError:
                abort(InvalidCsv(detail='"%s" is not UTF-8 encoded CSV.'
                                 % self.path))

        if len(rows) < 2:
            abort(TooFewSamples(2, len(rows)))

        values = np.array(rows)
        names = [field.strip() for field in header]
        split = len(inputs)

        return DataSet(values[:, :split], values[:, split:],
                       labels=[names[pos] for pos in inputs],
                       output_labels=[names[pos] for pos in outputs])


def load_dataset(path):
    """ DataSet from a CSV file with x* & y* columns

    :param path: str
    :return: DataSet
    """

    return Deserializer(path).deserialize()
