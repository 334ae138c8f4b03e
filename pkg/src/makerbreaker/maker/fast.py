"""Move-efficient (1:1) strategy: process one vertex per round.

A fast round spends at most half the window size in moves: it claims
edges at the processed vertex until it owns half of the star, prunes
vertices whose Breaker degree reached q, and deletes Breaker's edges.
Chaining q rounds and finishing with a greedy clique of the final
window yields a Maker clique of q vertices plus r witnesses joined to
all of it, with no Breaker edge among the witnesses; the witness set
then hosts a second, unbiased clique build that extends the clique.
"""

from __future__ import annotations

from math import comb
from typing import Optional

from ..engine import GameState, maker_has_clique
from ..errors import (
    InfeasibleScheduleError,
    PreconditionError,
    SingularScheduleError,
    StrategyInvariantError,
)
from ..graphview import GraphView
from .biased import play_biased_on_view
from .certificates import Constellation, RoundCertificate, require_certificate
from .common import (
    OpponentFn,
    as_observed,
    ensure_maker_to_move,
    maker_claim,
    maker_move,
)
from .schedule import fast_feasible, fast_survivor_floor, max_feasible_q


def _require_unbiased(state: GameState) -> None:
    if state.bias.maker_edges != 1 or state.bias.breaker_edges != 1:
        raise PreconditionError("the fast strategy plays the (1:1) game only")


def play_fast_round(view: GraphView, q: int, opponent: OpponentFn, *,
                    class_d: Optional[int] = None, v1: Optional[int] = None,
                    phase: str = "fast") -> RoundCertificate:
    """Process one vertex in at most ceil(n/2) Maker moves.

    Ends with the view shrunk to a Breaker-free window of at least
    floor((n - 1 - d)/2 - n/q) vertices, all Maker-adjacent to the
    processed vertex, with complementary degrees at most d + q.
    """
    state = view.base
    _require_unbiased(state)
    if q < 3:
        raise SingularScheduleError(f"need q >= 3, got {q}")
    observed = as_observed(opponent)
    with observed.tracking(view):
        entry_pruned = view.prune_breaker_touched() if view.breaker_edges_inside else 0
        view.assert_pure()
        actual_d = view.max_comp_degree()
        d = actual_d if class_d is None else class_d
        if actual_d > d:
            raise PreconditionError(f"complementary degree {actual_d} exceeds class bound {d}")
        n = view.size
        if v1 is None:
            v1 = min(view.active)
        elif v1 not in view.active:
            raise PreconditionError(f"vertex {v1} is not in the view")
        move_start = len(state.transcript)
        made0 = state.maker_move_count

        # Round 1: claim ceil(k/2) star edges, k = surviving star size.
        view.remove_vertices(view.non_neighbors(v1))
        k = view.size - 1
        target = (k + 1) // 2
        candidates = sorted(view.active)
        ptr = 0
        made = 0
        while made < target:
            while ptr < len(candidates):
                u = candidates[ptr]
                if u != v1 and state.is_unclaimed(v1, u):
                    break
                ptr += 1
            else:
                raise StrategyInvariantError("star ran dry before the move quota")
            maker_move(state, [maker_claim(state, v1, candidates[ptr])], phase)
            made += 1
            observed(state)

        # Round 2: keep the new neighbors, drop Breaker hubs and edges.
        neighbors = [u for u in candidates if u != v1 and state.maker_owns(v1, u)]
        view.restrict_to(neighbors)
        view.prune_high_breaker_degree(q)
        view.drop_breaker_edges()
        view.assert_pure()

        cert = RoundCertificate(
            kind="fast", anchors=[v1], survivors=sorted(view.active),
            non_edges=view.non_edge_list(),
            maker_moves=state.maker_move_count - made0,
            move_start=move_start, move_end=len(state.transcript),
            n=n, d=d, q=q,
            min_survivors=fast_survivor_floor(n, d, q),
            max_comp_degree=d + q, breaker_free=True,
            maker_moves_cap=(n + 1) // 2,
            entry_pruned=entry_pruned, phase=phase)
        require_certificate(state, cert)
        return cert


def play_fast_constellation(state: GameState, q: int, r: int,
                            opponent: OpponentFn
                            ) -> tuple[Constellation, int, list[RoundCertificate]]:
    """Build a Maker q-clique plus r common neighbors in at most n moves."""
    _require_unbiased(state)
    if r < 1:
        raise PreconditionError(f"need at least one witness, got r={r}")
    if not fast_feasible(state.n, q, r, q):
        raise InfeasibleScheduleError(
            f"cannot schedule a {q}-clique with {r} witnesses on {state.n} vertices")
    observed = as_observed(opponent)
    view = GraphView(state)
    clique: list[int] = []
    certs: list[RoundCertificate] = []
    with observed.tracking(view):
        ensure_maker_to_move(state, observed)
        d_class = 0
        for level in range(q):
            if not fast_feasible(view.size, q, r, q - level):
                raise StrategyInvariantError(
                    f"round {level + 1} no longer feasible on {view.size} vertices")
            cert = play_fast_round(view, q, observed, class_d=d_class,
                                   phase=f"fast:round{level + 1}")
            clique.extend(cert.anchors)
            certs.append(cert)
            d_class += q
        witnesses = view.greedy_clique(target_size=r)[:r]
    constellation = Constellation(tuple(clique), tuple(witnesses))
    constellation.validate(state)
    moves = sum(c.maker_moves for c in certs)
    if moves > state.n:
        raise StrategyInvariantError(f"spent {moves} moves on {state.n} vertices")
    return constellation, moves, certs


def play_fast_big_clique(state: GameState, q_head: int, r: int,
                         opponent: OpponentFn
                         ) -> tuple[list[int], int, dict]:
    """Constellation first, then a second clique build on the witness set.

    The residual build targets the largest feasible clique on r fresh
    vertices at (1:1); when the exact schedule admits none, a single
    witness still extends the head clique because it is Maker-adjacent
    to every head vertex.
    """
    constellation, head_moves, certs = play_fast_constellation(state, q_head, r, opponent)
    residual_q = max_feasible_q(r, 1, 1)
    made_after_head = state.maker_move_count
    if residual_q >= 1:
        witness_view = GraphView(state, constellation.witnesses)
        tail, tail_certs = play_biased_on_view(witness_view, 1, 1, residual_q,
                                               opponent, phase="fast:residual")
        certs = certs + tail_certs
        clique = list(constellation.clique) + tail
    else:
        clique = list(constellation.clique) + [min(constellation.witnesses)]
    residual_moves = state.maker_move_count - made_after_head
    residual_cap = max(1, comb(r, 2) // 2)
    if residual_moves > residual_cap:
        raise StrategyInvariantError(
            f"residual build spent {residual_moves} moves, cap {residual_cap}")
    if not maker_has_clique(state, clique):
        raise StrategyInvariantError("composition did not produce a Maker clique")
    details = {
        "constellation_moves": head_moves,
        "residual_moves": residual_moves,
        "residual_q_scheduled": residual_q,
        "clique_size": len(clique),
        "certificates": certs,
        "constellation": constellation,
    }
    return clique, head_moves + residual_moves, details
