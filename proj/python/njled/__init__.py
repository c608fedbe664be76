"""Exact-diagonalization laboratory for the staggered-fermion lattice model.

The heavy lifting lives in the compiled extension; this package re-exports it.
"""

from ._core import *  # noqa: F401,F403
from ._core import continuum  # noqa: F401

__version__ = "0.1.0"
