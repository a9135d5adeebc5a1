"""Comparison geometry on Sasakian model spaces."""

from ._sasaki import *  # noqa: F401,F403
from ._sasaki import __version__  # noqa: F401
