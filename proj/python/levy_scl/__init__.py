"""Monte Carlo experiments for scalar conservation laws with Levy jump noise."""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
