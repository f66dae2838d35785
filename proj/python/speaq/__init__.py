"""Groupwise query specialization and quality-aware multi-assignment."""

from ._speaq import *  # noqa: F401,F403
from ._speaq import __doc__  # noqa: F401
