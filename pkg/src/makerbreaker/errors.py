"""Exception hierarchy with stable error codes.

Every failure mode that callers are expected to branch on gets its own
class and a short machine-readable ``code``. The CLI and the replay
validator report these codes verbatim.
"""

from __future__ import annotations


class GameError(Exception):
    """Base class for all package errors."""

    code = "game-error"

    def __init__(self, message: str = "", **context):
        super().__init__(message or self.code)
        self.context = context


class InvalidBoardError(GameError):
    code = "invalid-board"


class OutOfTurnError(GameError):
    code = "out-of-turn"


class DoubleClaimError(GameError):
    code = "double-claim"


class OverBudgetError(GameError):
    code = "over-budget"


class UnderBudgetError(GameError):
    code = "under-budget"


class OrientationError(GameError):
    """Missing or ill-formed orientation for the oriented variant."""

    code = "bad-orientation"


class InvalidEdgeError(GameError):
    code = "invalid-edge"


class OwnerMismatchError(GameError):
    code = "owner-mismatch"


class BoardExhaustedError(GameError):
    code = "board-exhausted"


class ReplayDivergenceError(GameError):
    """A transcript failed validation while being replayed."""

    code = "replay-divergence"

    def __init__(self, move_index: int, message: str = "", **context):
        super().__init__(message or f"replay diverged at move {move_index}", **context)
        self.move_index = move_index


class NotActiveError(GameError):
    code = "not-active"


class InvalidThresholdError(GameError):
    code = "invalid-threshold"


class InsufficientCliqueError(GameError):
    code = "insufficient-clique"

    def __init__(self, achieved: int, target: int, **context):
        super().__init__(f"greedy clique reached {achieved} < target {target}", **context)
        self.achieved = achieved
        self.target = target


class PreconditionError(GameError):
    code = "precondition-violation"


class SingularScheduleError(GameError):
    """Schedule arithmetic evaluated outside its domain (e.g. q <= b(b+1))."""

    code = "singular-schedule"


class InfeasibleScheduleError(GameError):
    code = "infeasible-schedule"


class IndivisibleGoalError(GameError):
    """The clique target is not a multiple of Maker's per-move bias."""

    code = "indivisible-goal"


class StrategyInvariantError(GameError):
    """A guarantee the strategy is supposed to enforce failed at runtime.

    This is an internal assertion: it firing means a bug, not bad input.
    """

    code = "strategy-invariant"


class BoardTooLargeError(GameError):
    code = "board-too-large"


class BadScriptError(GameError):
    code = "bad-script"


class ConfigError(GameError):
    code = "bad-config"
