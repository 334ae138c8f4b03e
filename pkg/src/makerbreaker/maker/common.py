"""Shared plumbing for the move-generating strategies.

A strategy drives its own game: it applies a Maker move, then invokes
the ``opponent`` callable, which performs Breaker's full reply on the
same state and returns the claims it made. :class:`ObservedOpponent`
fans each reply out to the stack of graph views that are currently
alive, so their Breaker-degree caches stay coherent across nested
recursion levels.
"""

from __future__ import annotations

from contextlib import contextmanager
from typing import Callable, Optional, Sequence

from ..engine import (
    EdgeClaim,
    GameState,
    Player,
    Variant,
    claim_edges,
    make_claim,
    pair,
)
from ..errors import StrategyInvariantError
from ..graphview import GraphView

OpponentFn = Callable[[GameState], Sequence[EdgeClaim]]


class ObservedOpponent:
    """Wrap an opponent so every Breaker claim updates the live views."""

    def __init__(self, opponent: OpponentFn):
        self._opponent = opponent
        self._views: list[GraphView] = []

    @property
    def views(self) -> Sequence[GraphView]:
        return tuple(self._views)

    @contextmanager
    def tracking(self, view: GraphView):
        """Track ``view`` for the duration; no-op if already tracked."""
        added = all(existing is not view for existing in self._views)
        if added:
            self._views.append(view)
        try:
            yield self
        finally:
            if added:
                self._views.remove(view)

    def __call__(self, state: GameState) -> Sequence[EdgeClaim]:
        reply = self._opponent(state)
        for claim in reply:
            for view in self._views:
                view.observe_claim(claim.u, claim.v, claim.owner)
        return reply


def as_observed(opponent: OpponentFn) -> ObservedOpponent:
    return opponent if isinstance(opponent, ObservedOpponent) else ObservedOpponent(opponent)


def padding_claims(state: GameState, count: int, anchor: int,
                   avoid: set[int], taken: set[tuple[int, int]],
                   mark_views: Sequence[GraphView] = ()) -> list[EdgeClaim]:
    """Harmless filler claims for the unused part of Maker's budget.

    Preference order: unclaimed edges from ``anchor`` to vertices outside
    ``avoid`` (ascending), then unclaimed edges at ``anchor`` into
    ``avoid``, then the lexicographically first unclaimed pairs anywhere.
    A filler edge that unavoidably lands inside a tracked view is
    logically deleted there so it can never pollute a later round.
    """
    claims: list[EdgeClaim] = []
    oriented = state.variant is Variant.ORIENTED

    def grab(u: int, v: int) -> None:
        key = pair(u, v)
        taken.add(key)
        orientation = key if oriented else None
        claims.append(EdgeClaim(key[0], key[1], Player.MAKER, orientation))
        for view in mark_views:
            if key[0] in view.active and key[1] in view.active:
                view.add_non_edge(key[0], key[1])

    for x in range(state.n):
        if len(claims) == count:
            return claims
        if x == anchor or x in avoid:
            continue
        key = pair(anchor, x)
        if key not in taken and key not in state.claims:
            grab(anchor, x)
    for x in range(state.n):
        if len(claims) == count:
            return claims
        if x == anchor:
            continue
        key = pair(anchor, x)
        if key not in taken and key not in state.claims:
            grab(anchor, x)
    # Last resort: lexicographic scan. Only reachable once the anchor's
    # whole star is claimed, which happens on tiny boards only.
    for u in range(state.n):
        for v in range(u + 1, state.n):
            if len(claims) == count:
                return claims
            if (u, v) not in taken and (u, v) not in state.claims:
                grab(u, v)
    if len(claims) != count:
        raise StrategyInvariantError("board exhausted while padding a move")
    return claims


def maker_move(state: GameState, useful: Sequence[EdgeClaim], phase: str,
               pad_anchor: Optional[int] = None,
               avoid: Optional[set[int]] = None,
               mark_views: Sequence[GraphView] = ()) -> list[EdgeClaim]:
    """Apply one full Maker move: the useful claims plus budget filler."""
    budget = state.move_budget(Player.MAKER)
    if len(useful) > budget:
        raise StrategyInvariantError(
            f"{len(useful)} useful claims exceed the move budget {budget}")
    claims = list(useful)
    if len(claims) < budget:
        if pad_anchor is None:
            pad_anchor = claims[0].u if claims else 0
        taken = {(c.u, c.v) for c in claims}
        claims.extend(padding_claims(state, budget - len(claims), pad_anchor,
                                     avoid if avoid is not None else set(),
                                     taken, mark_views))
    claim_edges(state, Player.MAKER, claims, phase)
    return claims


def maker_claim(state: GameState, u: int, v: int,
                orientation: Optional[tuple[int, int]] = None) -> EdgeClaim:
    if state.variant is Variant.ORIENTED and orientation is None:
        orientation = pair(u, v)
    return make_claim(u, v, Player.MAKER, orientation)


def ensure_maker_to_move(state: GameState, opponent: OpponentFn) -> None:
    """Let Breaker open when the game is configured Breaker-first."""
    if state.to_move is Player.BREAKER and not state.board_exhausted:
        opponent(state)
