"""Gradient-based deployment of airborne base stations.

Thin Python layer over the C++ core: placement, coverage maps, SIR
metrics, orientation/power optimization, drop detection and recovery.
"""

from ._core import *  # noqa: F401,F403
from ._core import __doc__  # noqa: F401

__version__ = "0.1.0"
