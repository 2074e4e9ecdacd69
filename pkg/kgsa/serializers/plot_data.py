"""
    serializers.plot_data
    ~~~~~~~~~~~~~~~~~~~~~

    Serializer writing every ISF curve as CSV columns ready for
    external plotting, one file per curve named after its
    subset like isf_1_3.csv.
"""

from kgsa.utils import subset_helpers

from ..serializers.base import Serializer as BaseSerializer
from ..serializers.comma_sep import to_csv


class Serializer(BaseSerializer):
    """ ISF plot data serializer """

    FORMAT = 'plot-data'

    @staticmethod
    def name(curve):
        """ File name of a curve """

        labels = subset_helpers.to_labels(curve.subset)
        return 'isf_%s.csv' % '_'.join(str(label) for label in labels)

    @staticmethod
    def rows(curve):
        """ The curve as a header & rows

        Each row holds the query coordinates, gamma_n, gamma_d &
        the outside hull flag.
        """

        header = ['x%s' % label
                  for label in subset_helpers.to_labels(curve.subset)]
        header += ['gamma_n', 'gamma_d', 'outside_hull']

        rows = []
        for point, g_n, g_d, out in zip(curve.points, curve.gamma_n,
                                        curve.gamma_d, curve.outside_hull):
            rows.append([repr(float(val)) for val in point] +
                        [repr(float(g_n)), repr(float(g_d)), int(out)])
        return header, rows

    def serialize(self, report):
        """ Write one file per ISF curve """

        paths = [self.write(self.name(curve), to_csv(*self.rows(curve)))
                 for curve in report.isf]

        return self.emitted(report, paths)
