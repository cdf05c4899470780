"""Solvers and simulators for the two-stage order-flow / block auction game."""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
