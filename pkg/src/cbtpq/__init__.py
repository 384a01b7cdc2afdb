"""Tournament-tree min-priority queues.

``ReducedTournament`` and ``SuperTournament`` use the key array itself as the
bottom layer of the tree; ``MarinTournament`` and ``MarinVSTournament`` are the
classic layouts with a separate leaf layer, kept for comparison.
"""

from .baseline import MarinTournament, MarinVSTournament
from .bitnav import global_parent, global_sister, lssb_position, mssb_position
from .pqcore import (
    KINDS,
    SENTINEL,
    ComparisonCounter,
    OracleQueue,
    QueueEmpty,
    TournamentQueue,
    make_queue,
)
from .reduced import ReducedTournament
from .supercbt import SuperTournament, find_parent_and_sister, sort_in_place

__version__ = "0.1.0"
