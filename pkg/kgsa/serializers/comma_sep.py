"""
    serializers.comma_sep
    ~~~~~~~~~~~~~~~~~~~~~

    Serializer writing the report tables as RFC 4180 CSV files,
    one file per table. Subsets are written like "(1,3)".
"""

import csv
import io

import numpy as np

from kgsa.utils import subset_helpers

from ..serializers.base import Serializer as BaseSerializer


def _fmt(mask):

    return subset_helpers.fmt(mask) if mask else '()'


def to_csv(header, rows):
    """ A header & rows as CSV text """

    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator='\n')
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


class Serializer(BaseSerializer):
    """ CSV tables serializer """

    FORMAT = 'csv-tables'

    def serialize(self, report):
        """ Write indices.csv & whatever decompositions there are

        indices.csv always exists, holding only a header when no
        subset was requested.
        """

        paths = [self.write('indices.csv', self.indices(report))]

        if report.ols is not None:
            paths.append(self.write('ols.csv', self.ols(report)))
        if report.shapley is not None:
            paths.append(self.write('shapley.csv', self.shapley(report)))
        if report.anova is not None:
            paths.append(self.write('anova.csv', self.anova(report)))

        return self.emitted(report, paths)

    @staticmethod
    def indices(report):
        """ One row per requested subset with replicate stats """

        rows = [(_fmt(summ.subset), repr(summ.mean), repr(summ.minimum),
                 repr(summ.maximum), len(summ.estimates))
                for summ in report.indices]

        return to_csv(('subset', 'mean', 'min', 'max', 'replicates'), rows)

    @staticmethod
    def ols(report):
        """ One row per greedy step """

        rows = [(step.label, repr(step.value), repr(step.cumulative),
                 ' '.join(str(label) for label in step.ties))
                for step in report.ols.steps]

        return to_csv(('label', 'value', 'cumulative', 'ties'), rows)

    @staticmethod
    def shapley(report):
        """ One row per input label """

        rows = [(label, repr(report.shapley[label]))
                for label in report.shapley.labels]

        return to_csv(('label', 'value'), rows)

    @staticmethod
    def anova(report):
        """ One row per non-empty subset of the universe """

        rows = [(_fmt(mask), repr(value))
                for mask, value in report.anova.items()]

        return to_csv(('subset', 'value'), rows)


def dataset_csv(data):
    """ A DataSet as CSV text with x1..xn & y1..ym headers

    The output reads back with load_dataset.
    """

    header = ['x%s' % (i + 1) for i in range(data.n_inputs)]
    header += ['y%s' % (j + 1) for j in range(data.n_outputs)]

    rows = [[repr(float(val)) for val in row]
            for row in np.hstack([data.inputs, data.outputs])]
    return to_csv(header, rows)
