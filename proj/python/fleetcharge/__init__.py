"""Fleet charging schedule optimization: rollout, heuristics, exact oracle."""

from ._fleetcharge import *  # noqa: F401,F403
from ._fleetcharge import __version__  # noqa: F401
