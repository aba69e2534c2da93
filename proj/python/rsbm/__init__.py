"""Refracted skew Brownian motion: transition densities, exits, fits and sampling."""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
