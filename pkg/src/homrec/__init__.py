"""Deciding and realising homomorphism and subgraph counts."""

from .graphs import *  # noqa: F401,F403
from .canon import *  # noqa: F401,F403
from .generate import *  # noqa: F401,F403
from .graph6 import *  # noqa: F401,F403
from .counting import *  # noqa: F401,F403
from .decide import *  # noqa: F401,F403
from .construct import *  # noqa: F401,F403
from .fpt import *  # noqa: F401,F403
from .reductions import *  # noqa: F401,F403
from .gadgets import *  # noqa: F401,F403
from .serialize import *  # noqa: F401,F403

__version__ = "0.1.0"
