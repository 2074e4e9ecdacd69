"""
    models.base
    ~~~~~~~~~~~

    Our schematics sub-classed model required by all of the
    configuration models.

    Schematics errors never escape these models, they're
    converted into InvalidConfig exceptions naming the
    offending field.
"""

from schematics.exceptions import DataError
from schematics.models import Model as _SchematicsModel

from kgsa.exceptions import InvalidConfig
from kgsa.utils.error_helpers import abort


class Model(_SchematicsModel):
    """ Our schematics sub-classed model """

    def __init__(self, data=None, **kwargs):

        kwargs.setdefault('strict', False)

        try:
            super(Model, self).__init__(data, **kwargs)
        except DataError as errors:
            abort(self.to_exceptions(errors.to_primitive())[0])

    @classmethod
    def to_exceptions(cls, errors, prefix=''):
        """ Convert the validation errors into InvalidConfig exc's

        Nested model errors are flattened into dotted field
        names like `cv.folds`.

        :param errors:
            dict of errors in schematics primitive format
        :return:
            list of InvalidConfig exception objects
        """

        ret = []

        for key, val in sorted(errors.items()):
            source = '%s%s' % (prefix, key)

            if isinstance(val, dict):
                ret.extend(cls.to_exceptions(val, prefix=source + '.'))
                continue
            elif not isinstance(val, (list, tuple)):
                val = [val]

            for error in val:
                ret.append(InvalidConfig(source, detail='%s: %s'
                                         % (source, error)))
        return ret

    @classmethod
    def load(cls, data):
        """ Build & fully validate a model from a dict

        :return: model instance
        :raise: InvalidConfig
        """

        model = cls(data)
        model.check()
        return model

    def check(self):
        """ Run the schematics validation & any custom checks

        Sub-classes extend this with checks that must raise a
        specific exception rather than InvalidConfig.

        :raise: InvalidConfig
        """

        try:
            self.validate()
        except DataError as errors:
            abort(self.to_exceptions(errors.to_primitive())[0])

    def merge(self, data):
        """ Return a new model with the dict's values overriding ours

        Keys whose value is None are ignored so unset command
        line flags never clobber a config file.
        """

        merged = self.to_primitive()
        merged.update({key: val for key, val in data.items()
                       if val is not None})
        return self.__class__(merged)
