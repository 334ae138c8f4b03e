"""Clique building on a small untouched board, at any Breaker bias.

The recursion behind :func:`play_base_clique`: process the lowest
vertex by claiming one edge of its star per move until the star is
exhausted, throw away every vertex whose Breaker degree reached
2b(b+1), keep the survivors Maker-adjacent to the processed vertex,
delete Breaker's edges, and recurse on a greedy clique of what is
left. The board sizes produced by
:func:`~makerbreaker.maker.schedule.base_clique_threshold` make every
level of this succeed against any legal Breaker.

Inside an (m:b) game the recursion only ever needs one useful edge per
move; the rest of Maker's budget is filled with padding edges pointed
away from every live view.
"""

from __future__ import annotations

from typing import Optional

from ..engine import GameState, maker_has_clique
from ..errors import InsufficientCliqueError, PreconditionError, StrategyInvariantError
from ..graphview import GraphView
from .certificates import RoundCertificate
from .common import ObservedOpponent, OpponentFn, as_observed, maker_claim, maker_move
from .schedule import base_clique_threshold


def _star_phase(state: GameState, view: GraphView, v1: int,
                opponent: ObservedOpponent, avoid: set[int], phase: str) -> int:
    """Claim one edge at ``v1`` per move until its star is fully claimed."""
    candidates = sorted(view.active)
    ptr = 0
    moves = 0
    while True:
        while ptr < len(candidates):
            u = candidates[ptr]
            if u != v1 and u in view.active and state.is_unclaimed(v1, u):
                break
            ptr += 1
        else:
            break
        if state.board_exhausted:
            break
        maker_move(state, [maker_claim(state, v1, candidates[ptr])], phase,
                   pad_anchor=v1, avoid=avoid, mark_views=opponent.views)
        moves += 1
        opponent(state)
    return moves


def play_base_clique(view: GraphView, q_target: int, opponent: OpponentFn,
                     avoid: Optional[set[int]] = None,
                     phase: str = "base") -> tuple[list[int], RoundCertificate]:
    """Force a Maker K_{q_target} on an untouched vertex set.

    ``view`` must contain at least ``base_clique_threshold(q_target, b)``
    vertices, carry no non-edges, and every pair inside it must be
    unclaimed. The returned certificate records the clique and the move
    span; failures past the precondition are internal assertions, since
    the threshold makes the strategy unconditionally winning.
    """
    state = view.base
    b = state.bias.breaker_edges
    need = base_clique_threshold(q_target, b)
    if view.size < need:
        raise PreconditionError(
            f"{view.size} vertices, need {need} for a {q_target}-clique at bias {b}")
    if view.non_edge_list():
        raise PreconditionError("base clique board must have no non-edges")
    view.assert_pure()
    if avoid is None:
        avoid = view.active
    observed = as_observed(opponent)
    n0 = view.size
    move_start = len(state.transcript)
    made0 = state.maker_move_count
    threshold = 2 * b * (b + 1)

    verts: list[int] = []
    current = view
    level = q_target
    while level > 1:
        v1 = min(current.active)
        with observed.tracking(current):
            _star_phase(state, current, v1, observed, avoid, phase)
        neighbors = [u for u in sorted(current.active)
                     if u != v1 and state.maker_owns(v1, u)]
        current.restrict_to(neighbors)
        current.prune_high_breaker_degree(threshold)
        current.drop_breaker_edges()
        verts.append(v1)
        level -= 1
        need_next = base_clique_threshold(level, b)
        try:
            core = current.greedy_clique(target_size=need_next)[:need_next]
        except InsufficientCliqueError as exc:
            raise StrategyInvariantError(
                f"survivor clique too small at level {level}: {exc}") from exc
        current = GraphView(state, core)
    verts.append(min(current.active))

    if not maker_has_clique(state, verts):
        raise StrategyInvariantError("base clique build did not produce a Maker clique")
    cert = RoundCertificate(
        kind="biased", anchors=verts, survivors=[], non_edges=[],
        maker_moves=state.maker_move_count - made0,
        move_start=move_start, move_end=len(state.transcript),
        n=n0, d=0, q=q_target, min_survivors=0, max_comp_degree=0,
        breaker_free=True, phase=phase)
    return verts, cert
