"""The basic algebra ``B_n``, complexes of shifted projectives, explicit resolutions and graded Ext."""

from .bn import *  # noqa: F401,F403
from .complex import *  # noqa: F401,F403
from .dimension import *  # noqa: F401,F403
from .resolutions import *  # noqa: F401,F403
