"""
    deserializers.base
    ~~~~~~~~~~~~~~~~~~

    Our base deserializer to be inherited by all other
    deserializers.

    Each deserializer that sub-classes this object should
    set a class constant of EXTENSION so the deserializer can
    be picked by the file name.
"""

import io

from kgsa.exceptions import InvalidConfig
from kgsa.utils.error_helpers import abort


class Deserializer(object):
    """ Our base deserializer for sub-classing

    :param path: str path of the file to read
    """

    EXTENSION = ''

    def __init__(self, path):

        self.path = path

    def read(self):
        """ Open the file as text

        A missing or unreadable file is a configuration error
        naming the path.

        :return: file object
        """

        try:
            return io.open(self.path, encoding='utf-8', newline='')
        except (IOError, OSError) as exc:
            abort(InvalidConfig('path', detail='Unable to read "%s": %s'
                                % (self.path, exc)))

    def deserialize(self):
        """ Invoke the deserializer

        Sub-classes parse & vet the file contents.
        """

        raise NotImplementedError
