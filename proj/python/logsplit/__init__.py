"""Split-step Fourier solver for the logarithmic Schroedinger equation
with local energy regularization."""

from ._logsplit import *  # noqa: F401,F403
from ._logsplit import __version__  # noqa: F401
