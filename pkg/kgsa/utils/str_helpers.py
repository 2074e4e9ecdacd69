"""
    utils.str_helpers
    ~~~~~~~~~~~~~~~~~

    Convient string helpers. That's it.
"""

import hashlib


def derive_seed(master, replicate):
    """ Derive the seed of a replicate from the master seed

    The seed is the leading 32 bits of a sha256 digest of the
    two numbers so replicates never share random streams & the
    mapping is stable across platforms & python versions.

    :param master: int master seed
    :param replicate: int replicate number
    :return: int
    """

    val = '%d:%d' % (master, replicate)
    digest = hashlib.sha256(val.encode('ascii')).hexdigest()
    return int(digest[:8], 16)


def naked(val):
    """ Given a string strip off all white space & quotes """

    return val.strip(' "\'\t')



def str_to_labels(val):
    """ Return a list of int labels from a string like "(1, 3)"

    Parentheses, brackets, quotes & blanks are ignored so both
    "1,3" & "(1,3)" work.

    :param val: str
    :return: list of int
    :raise: ValueError
    """

    val = naked(val).strip('()[]{}')
    if not val.strip():
        return []

    return [int(naked(tok)) for tok in val.split(',')]
