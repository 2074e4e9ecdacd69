"""
    utils.error_helpers
    ~~~~~~~~~~~~~~~~~~~

    Convenient interfaces for aborting on error similar
    to abort() in the Flask micro-web framework.
"""

from kgsa.exceptions import KgsaException


__all__ = ['abort', 'annotate']


def abort(error):
    """ Immediately raise the error

    The error may be an exception class taking no arguments or
    an already built exception instance.
    """

    if isinstance(error, type) and issubclass(error, KgsaException):
        error = error()

    raise error


def annotate(error, stage=None, subset=None):
    """ Attach the failing stage & subset to an error in flight

    Values already present on the error win since they are
    closer to where things went wrong.

    :param error: KgsaException instance
    :param stage: str name of the pipeline stage
    :param subset: str formatted subset
    :return: the same error
    """

    if stage and not error.data.get('stage'):
        error.stage = stage
    if subset and not error.data.get('subset'):
        error.subset = subset
    return error
