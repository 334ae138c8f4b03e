"""The biased (m:b) clique strategy: reduction rounds plus a controller.

One reduction round turns a view with n vertices and complementary
degrees at most d into a Maker m-clique fully joined to a Breaker-free
surviving view of at least

    (n - C - m d - 2 b C(C,2)) / (b + 1) - b n / q

vertices whose complementary degree is at most d + q, where C is the
base-clique board size for an m-clique at bias b. The controller
:func:`play_biased_clique` chains q/m - 1 such rounds and finishes with
a base-clique build on a greedy clique of the last surviving view.
"""

from __future__ import annotations

import heapq
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
from .base_clique import play_base_clique
from .certificates import RoundCertificate, require_certificate
from .common import (
    ObservedOpponent,
    OpponentFn,
    as_observed,
    ensure_maker_to_move,
    maker_claim,
    maker_move,
)
from .schedule import (
    ScheduleParams,
    base_clique_threshold,
    biased_feasible,
    biased_survivor_floor,
)


def play_biased_round(view: GraphView, q: int, goal_m: Optional[int],
                      opponent: OpponentFn, *, class_d: Optional[int] = None,
                      phase: str = "biased") -> RoundCertificate:
    """Run one reduction round in place; the view ends as the survivor set.

    ``class_d`` is the promised degree bound of the view's class (the
    actual maximum may be lower); the survivor floor and the degree cap
    in the certificate are computed from it. The round claims the m
    clique vertices as ``anchors`` and shrinks ``view`` to the surviving
    window, which is again pure.
    """
    state = view.base
    bias = state.bias
    b = bias.breaker_edges
    if goal_m is None:
        goal_m = bias.maker_edges
    if not 1 <= goal_m <= bias.maker_edges:
        raise PreconditionError(f"goal_m={goal_m} outside 1..{bias.maker_edges}")
    if q <= b * (b + 1):
        raise SingularScheduleError(f"need q > b(b+1) = {b * (b + 1)}, got {q}")
    observed = as_observed(opponent)
    with observed.tracking(view):
        entry_pruned = view.prune_breaker_touched() if view.breaker_edges_inside else 0
        view.assert_pure()
        actual_d = view.max_comp_degree()
        d = actual_d if class_d is None else class_d
        if actual_d > d:
            raise PreconditionError(f"complementary degree {actual_d} exceeds class bound {d}")
        n = view.size
        big_c = base_clique_threshold(goal_m, b)
        if n < big_c * (d + 1):
            raise PreconditionError(f"{n} vertices, need {big_c}*(d+1) = {big_c * (d + 1)}")
        move_start = len(state.transcript)
        made0 = state.maker_move_count

        # Round 1: grab a clique S of the view and force K_m on it.
        seed_set = view.greedy_clique(target_size=big_c)[:big_c]
        if goal_m == 1:
            clique = [seed_set[0]]
        else:
            sub = GraphView(state, seed_set)
            clique, _ = play_base_clique(sub, goal_m, observed,
                                         avoid=view.active, phase=phase + ":r1")
        if state.maker_move_count - made0 > comb(big_c, 2):
            raise StrategyInvariantError("base build exceeded its move budget")
        clique_set = set(clique)

        # Round 2: discard the rest of S, everything Breaker touched, and
        # everything not fully adjacent to the clique.
        view.remove_vertices(set(seed_set) - clique_set)
        view.prune_breaker_touched(protect=clique)
        nonadj = sorted(u for u in view.active if u not in clique_set
                        and any(view.is_non_edge(u, vi) for vi in clique))
        view.remove_vertices(nonadj)

        # Round 3: connect candidates to the whole clique, one per move.
        candidates = sorted(v for v in view.active if v not in clique_set)
        alive = set(candidates)
        heapq.heapify(candidates)
        connected: list[int] = []
        while candidates:
            u = heapq.heappop(candidates)
            if u not in alive:
                continue
            useful = [maker_claim(state, u, vi) for vi in clique]
            maker_move(state, useful, phase + ":r3", pad_anchor=u,
                       avoid=view.active, mark_views=observed.views)
            alive.discard(u)
            connected.append(u)
            for cl in observed(state):
                if cl.u in clique_set:
                    alive.discard(cl.v)
                elif cl.v in clique_set:
                    alive.discard(cl.u)

        # Round 4: keep the connected vertices, drop Breaker hubs and edges.
        view.restrict_to(connected)
        view.prune_high_breaker_degree(q)
        view.drop_breaker_edges()
        view.assert_pure()

        cert = RoundCertificate(
            kind="biased", anchors=list(clique), survivors=sorted(view.active),
            non_edges=view.non_edge_list(),
            maker_moves=state.maker_move_count - made0,
            move_start=move_start, move_end=len(state.transcript),
            n=n, d=d, q=q,
            min_survivors=biased_survivor_floor(n, d, goal_m, b, q),
            max_comp_degree=d + q, breaker_free=True,
            entry_pruned=entry_pruned, phase=phase)
        require_certificate(state, cert)
        return cert


def play_biased_on_view(view: GraphView, m: int, b: int, q: int,
                        opponent: OpponentFn,
                        phase: str = "biased") -> tuple[list[int], list[RoundCertificate]]:
    """Drive the full reduction chain inside an existing view."""
    state = view.base
    if state.bias.maker_edges != m or state.bias.breaker_edges != b:
        raise PreconditionError(
            f"game bias ({state.bias.maker_edges}:{state.bias.breaker_edges})"
            f" does not match requested ({m}:{b})")
    params = ScheduleParams.for_biased(view.size, m, b, q)
    ok, _margin = biased_feasible(view.size, m, b, q, q // m)
    if not ok:
        raise InfeasibleScheduleError(
            f"cannot schedule a K_{q} at ({m}:{b}) on {view.size} vertices")
    observed = as_observed(opponent)
    clique: list[int] = []
    certs: list[RoundCertificate] = []
    with observed.tracking(view):
        ensure_maker_to_move(state, observed)
        d_class = 0
        for j in range(params.rounds - 1):
            ok, _ = biased_feasible(view.size, m, b, q, params.rounds - j)
            if not ok:
                raise StrategyInvariantError(
                    f"round {j + 1} no longer feasible on {view.size} vertices")
            cert = play_biased_round(view, q, m, observed, class_d=d_class,
                                     phase=f"{phase}:round{j + 1}")
            clique.extend(cert.anchors)
            certs.append(cert)
            d_class += q
        # Base case: a greedy clique of the last window is untouched and
        # large enough for a direct base-clique build.
        if view.breaker_edges_inside:
            view.prune_breaker_touched()
        seed_set = view.greedy_clique(target_size=params.base_board)[:params.base_board]
        sub = GraphView(state, seed_set)
        tail, base_cert = play_base_clique(sub, m, observed, avoid=view.active,
                                           phase=f"{phase}:base")
        clique.extend(tail)
        certs.append(base_cert)
    if not maker_has_clique(state, clique):
        raise StrategyInvariantError("controller finished without a Maker clique")
    return clique, certs


def play_biased_clique(state: GameState, m: int, b: int, q: int,
                       opponent: OpponentFn) -> tuple[list[int], list[RoundCertificate]]:
    """Force a Maker K_q in the (m:b) game on the full board.

    Requires the exact feasibility condition for q/m rounds on n
    vertices; raises ``infeasible-schedule`` otherwise. Every reduction
    round's certificate is returned for audit.
    """
    return play_biased_on_view(GraphView(state), m, b, q, opponent)
