"""Python surface of the conekit numerical toolkit."""

from ._core import *  # noqa: F401,F403
from ._core import __doc__ as __doc__  # noqa: F401

__version__ = "0.1.0"


def gaussian():
    from ._core import make_gaussian_hermite

    return make_gaussian_hermite((0.0, 0.0), 1.0, [(0, 0, 1.0)])


def xi1_gaussian():
    from ._core import make_gaussian_hermite

    return make_gaussian_hermite((0.0, 0.0), 1.0, [(1, 0, 1.0)])


def shifted_gaussian():
    from ._core import make_gaussian_hermite

    return make_gaussian_hermite((1.0, 0.0), 1.0, [(0, 0, 1.0)])
