"""Finite-dimensional graded modules, induction, heads and irreducibles."""

from .constructions import *  # noqa: F401,F403
from .module import *  # noqa: F401,F403
from .heads import *  # noqa: F401,F403
from .standard import *  # noqa: F401,F403
