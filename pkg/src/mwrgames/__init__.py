"""Multi-weighted reachability games: ensured cost profiles, strategies and permissiveness."""
from .fixpoint import SolveResult, solve
from .game import P1, P2, Game, GameError, validate
from .profiles import INF, Order
from .upset import UpSet

__all__ = ["INF", "P1", "P2", "Game", "GameError", "Order", "SolveResult", "UpSet", "solve", "validate"]
__version__ = "0.1.0"
