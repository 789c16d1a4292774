"""AFDM-based integrated sensing and communications toolkit."""

from afdm_isac._core import *  # noqa: F401,F403
from afdm_isac._core import __version__  # noqa: F401
