"""The oriented (1:1) strategy that copies a fixed goal tournament.

Candidate sets: the board is split into one set per goal vertex, and
every vertex of set i is still eligible to play goal vertex i. A round
picks the lowest vertex of the first set, claims star edges with the
orientations the goal dictates, and answers each Breaker claim at that
vertex inside candidate set j with another claim into set j (the
pairing rule), so at least half of every set's star survives. High
Breaker-degree vertices are then pruned and Breaker's edges deleted,
which halves the sets but keeps them Breaker-free.
"""

from __future__ import annotations

from itertools import chain
from typing import Optional, Sequence

from ..engine import GameState, Player, Variant, make_claim, maker_has_tournament, pair
from ..errors import (
    InfeasibleScheduleError,
    PreconditionError,
    SingularScheduleError,
    StrategyInvariantError,
)
from ..goals import GoalTournament
from ..graphview import GraphView
from .certificates import RoundCertificate, require_certificate
from .common import OpponentFn, as_observed, ensure_maker_to_move, maker_move
from .schedule import tournament_feasible, tournament_set_floor


def _require_oriented_unbiased(state: GameState) -> None:
    if state.variant is not Variant.ORIENTED:
        raise PreconditionError("the tournament game is played in the oriented variant")
    if state.bias.maker_edges != 1 or state.bias.breaker_edges != 1:
        raise PreconditionError("the tournament strategy plays the (1:1) game only")


def play_tournament_round(view: GraphView, sets: Sequence[Sequence[int]],
                          outward: Sequence[bool], q: int, opponent: OpponentFn, *,
                          class_d: Optional[int] = None,
                          phase: str = "tournament") -> RoundCertificate:
    """Process the head candidate set against the r-1 tail sets.

    ``outward[j]`` says whether the goal arc between the processed goal
    vertex and tail j points away from it; every Maker claim into tail
    j is oriented accordingly. Each surviving tail keeps at least
    floor((n - d)/2 - r n / q^2) vertices, where n is the trimmed
    common set size at entry.
    """
    state = view.base
    _require_oriented_unbiased(state)
    if q < 3:
        raise SingularScheduleError(f"need q >= 3, got {q}")
    if len(outward) != len(sets) - 1:
        raise PreconditionError("need one orientation flag per tail set")
    observed = as_observed(opponent)
    with observed.tracking(view):
        entry_pruned = view.prune_breaker_touched() if view.breaker_edges_inside else 0
        live_sets = [[v for v in group if v in view.active] for group in sets]
        n_lvl = min((len(group) for group in live_sets), default=0)
        if n_lvl < 1:
            raise PreconditionError("a candidate set died before the round")
        # Equalize the sets; the survivor floor is stated per common size.
        live_sets = [sorted(group)[:n_lvl] for group in live_sets]
        view.restrict_to(chain.from_iterable(live_sets))
        view.assert_pure()
        actual_d = view.max_comp_degree()
        d = actual_d if class_d is None else class_d
        if actual_d > d:
            raise PreconditionError(f"complementary degree {actual_d} exceeds class bound {d}")
        r = len(live_sets)
        move_start = len(state.transcript)
        made0 = state.maker_move_count

        # Round 1: pick the head vertex, discard its non-neighbors and the
        # rest of its own candidate set.
        v1 = live_sets[0][0]
        view.remove_vertices(view.non_neighbors(v1))
        view.remove_vertices(v for v in live_sets[0]
                             if v != v1 and v in view.active)
        tails = [[v for v in group if v in view.active] for group in live_sets[1:]]

        # Round 2: claim the star of v1 with goal orientations, answering
        # Breaker's claims at v1 inside the same candidate set.
        tail_of = {v: j for j, tail in enumerate(tails) for v in tail}
        remaining = [len(tail) for tail in tails]
        pointers = [0] * len(tails)
        won: list[list[int]] = [[] for _ in tails]
        total = sum(remaining)
        round_robin = 0
        answer_in: Optional[int] = None

        def next_candidate(j: int) -> int:
            tail = tails[j]
            ptr = pointers[j]
            while ptr < len(tail) and not state.is_unclaimed(v1, tail[ptr]):
                ptr += 1
            pointers[j] = ptr
            if ptr >= len(tail):
                raise StrategyInvariantError(f"tail {j} ran dry with {remaining[j]} booked")
            return tail[ptr]

        while total > 0:
            if answer_in is not None and remaining[answer_in] > 0:
                j = answer_in
            else:
                j = round_robin
                while remaining[j] == 0:
                    j = (j + 1) % len(tails)
                round_robin = (j + 1) % len(tails)
            w = next_candidate(j)
            orientation = (v1, w) if outward[j] else (w, v1)
            maker_move(state, [make_claim(v1, w, Player.MAKER, orientation)],
                       phase + ":pair")
            won[j].append(w)
            remaining[j] -= 1
            total -= 1
            answer_in = None
            for cl in observed(state):
                if v1 in (cl.u, cl.v):
                    other = cl.v if cl.u == v1 else cl.u
                    hit = tail_of.get(other)
                    if hit is not None and state.edge_owner(v1, other) is Player.BREAKER:
                        remaining[hit] -= 1
                        total -= 1
                        answer_in = hit

        # Round 3: prune Breaker hubs at q^2 and delete Breaker's edges.
        view.restrict_to(chain.from_iterable(won))
        view.prune_high_breaker_degree(q * q)
        view.drop_breaker_edges()
        view.assert_pure()
        survivor_sets = [[w for w in group if w in view.active] for group in won]

        cert = RoundCertificate(
            kind="tournament", anchors=[v1], survivors=sorted(view.active),
            non_edges=view.non_edge_list(),
            maker_moves=state.maker_move_count - made0,
            move_start=move_start, move_end=len(state.transcript),
            n=n_lvl, d=d, q=q,
            min_survivors=0,
            max_comp_degree=d + q * q, breaker_free=True,
            survivor_sets=survivor_sets, set_outward=list(outward),
            min_per_set=tournament_set_floor(n_lvl, d, r, q),
            maker_moves_cap=r * n_lvl,
            entry_pruned=entry_pruned, phase=phase)
        require_certificate(state, cert)
        return cert


def _first_unclaimed_pair(state: GameState) -> tuple[int, int]:
    for u in range(state.n):
        for v in range(u + 1, state.n):
            if (u, v) not in state.claims:
                return u, v
    raise StrategyInvariantError("board exhausted")


def play_tournament(state: GameState, goal: GoalTournament,
                    opponent: OpponentFn
                    ) -> tuple[dict[int, int], list[RoundCertificate]]:
    """Realize ``goal`` in Maker's directed graph; returns the embedding.

    Goals on one or two vertices are played directly. Larger goals run
    the candidate-set recursion over q blocks of floor(n/q) vertices and
    require the exact tournament feasibility condition.
    """
    _require_oriented_unbiased(state)
    observed = as_observed(opponent)
    q = goal.q
    certs: list[RoundCertificate] = []
    if q == 1:
        return {0: 0}, certs
    if q == 2:
        ensure_maker_to_move(state, observed)
        u, v = _first_unclaimed_pair(state)
        orientation = (u, v) if goal.arc(0, 1) else (v, u)
        maker_move(state, [make_claim(u, v, Player.MAKER, orientation)],
                   "tournament:direct")
        mapping = {0: u, 1: v}
        if not maker_has_tournament(state, mapping, goal):
            raise StrategyInvariantError("direct two-vertex play failed")
        return mapping, certs

    n_class = state.n // q
    if not tournament_feasible(n_class, q, q):
        raise InfeasibleScheduleError(
            f"cannot schedule a {q}-vertex tournament on {state.n} vertices")
    sets: list[list[int]] = [list(range(k * n_class, (k + 1) * n_class))
                             for k in range(q)]
    view = GraphView(state, list(chain.from_iterable(sets)))
    mapping: dict[int, int] = {}
    with observed.tracking(view):
        ensure_maker_to_move(state, observed)
        remaining_goal = list(range(q))
        d_class = 0
        while len(remaining_goal) > 1:
            live = min(len([v for v in group if v in view.active]) for group in sets)
            if not tournament_feasible(live, q, len(remaining_goal)):
                raise StrategyInvariantError(
                    f"{len(remaining_goal)} rounds left are no longer feasible on sets of {live}")
            head = remaining_goal[0]
            outward = [goal.arc(head, g) for g in remaining_goal[1:]]
            cert = play_tournament_round(view, sets, outward, q, observed,
                                         class_d=d_class,
                                         phase=f"tournament:round{len(mapping) + 1}")
            mapping[head] = cert.anchors[0]
            certs.append(cert)
            sets = [list(group) for group in cert.survivor_sets or []]
            remaining_goal = remaining_goal[1:]
            d_class += q * q
        final_set = [v for v in sets[0] if v in view.active]
        if not final_set:
            raise StrategyInvariantError("final candidate set is empty")
        mapping[remaining_goal[0]] = min(final_set)
    if not maker_has_tournament(state, mapping, goal):
        raise StrategyInvariantError("controller finished without the goal tournament")
    return mapping, certs
