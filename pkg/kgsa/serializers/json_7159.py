"""
    serializers.json_7159
    ~~~~~~~~~~~~~~~~~~~~~

    Serializer that is compliant with RFC 7159 (JSON spec). The
    JSON report is the complete record of an analysis. To avoid
    name collisions with the python json module we name ours
    json_7159.
"""

import json

from ..serializers.base import Serializer as BaseSerializer


class Serializer(BaseSerializer):
    """ JSON compliant serializer """

    FORMAT = 'json'
    NAME = 'report.json'

    @staticmethod
    def dumps(report):
        """ The report as a JSON string with sorted keys """

        return json.dumps(report.to_dict(), sort_keys=True, indent=2) + '\n'

    def serialize(self, report):
        """ Call json.dumps & let it rip """

        return self.emitted(report, [self.write(self.NAME,
                                                self.dumps(report))])
