"""Covert UAV multicast planning (C++ core)."""

from ._covcast import *  # noqa: F401,F403
from ._covcast import __doc__  # noqa: F401

__version__ = "0.1.0"
