"""Quantum penny flip in two formalisms: Cl(3,0) rotors and 2x2 density matrices."""

from .errors import DomainError, PreconditionError
from .game import StrategyParams, meyer_strategy, play, solve_family

__all__ = ["DomainError", "PreconditionError", "StrategyParams", "meyer_strategy", "play", "solve_family"]
