"""Exact computations with weak monads, entwinings and weak bialgebras."""

from .emw_core import *  # noqa: F401,F403
from .entwine_bialg import *  # noqa: F401,F403
from .exact_linalg import *  # noqa: F401,F403
from .lifting import *  # noqa: F401,F403
from .premonad_bridge import *  # noqa: F401,F403
from .report import *  # noqa: F401,F403
from .structures import *  # noqa: F401,F403
from .whisker import *  # noqa: F401,F403
from .cli_io import (FormatError, emit_structure, parse_structure, sample)  # noqa: F401

__version__ = "0.1.0"
