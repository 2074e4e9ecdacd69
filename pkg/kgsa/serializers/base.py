"""
    serializers.base
    ~~~~~~~~~~~~~~~~

    Our base serializer to be sub-classed by the other
    serializers.
"""

import io
import os

from kgsa import signals
from kgsa.exceptions import InvalidConfig
from kgsa.utils.error_helpers import abort


class Serializer(object):
    """ Our base serializer for sub-classing

    :param out: directory the files are written into, created
        when missing
    """

    FORMAT = ''

    def __init__(self, out):

        self.out = out

    def path(self, name):
        """ Full path of a file in the output directory """

        return os.path.join(self.out, name)

    def write(self, name, text):
        """ Write a text file in the output directory

        I/O failures are configuration errors naming the path.

        :return: str path written
        """

        path = self.path(name)

        try:
            if not os.path.isdir(self.out):
                os.makedirs(self.out)
            with io.open(path, 'w', encoding='utf-8', newline='') as handle:
                handle.write(text)
        except (IOError, OSError) as exc:
            abort(InvalidConfig('out', detail='Unable to write "%s": %s'
                                % (path, exc)))
        return path

    def serialize(self, report):
        """ Invoke the serializer

        Sub-classes write their files & return the paths, this
        announces them on the report_emitted signal.

        :return: list of str paths
        """

        raise NotImplementedError

    def emitted(self, report, paths):
        """ Send the report_emitted signal & pass the paths on """

        signals.report_emitted.send(self.FORMAT, report=report, paths=paths)
        return paths
