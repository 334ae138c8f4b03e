"""View mechanics: degree caches, pruning bounds, greedy clique."""

from __future__ import annotations

import random
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from makerbreaker.engine import BiasSpec, Player, claim_edges, make_claim, new_game
from makerbreaker.errors import (
    InsufficientCliqueError,
    InvalidThresholdError,
    NotActiveError,
)
from makerbreaker.graphview import GraphView

M, B = Player.MAKER, Player.BREAKER


def fresh_view(n, non_edges=()):
    return GraphView(new_game(n, BiasSpec(1, 1)), non_edges=non_edges)


def breaker_claims(state, pairs):
    """Force Breaker edges onto the board, interleaving Maker throwaways."""
    targets = {(min(u, v), max(u, v)) for u, v in pairs}
    filler = (p for p in ((u, v) for u in range(state.n)
                          for v in range(u + 1, state.n))
              if p not in targets)
    for u, v in pairs:
        while state.to_move is M:
            fu, fv = next(p for p in filler if p not in state.claims)
            claim_edges(state, M, [make_claim(fu, fv, M)])
        claim_edges(state, B, [make_claim(u, v, B)])


class TestCompDegree:
    def test_full_board_has_zero_everywhere(self):
        view = fresh_view(8)
        assert all(view.comp_degree(v) == 0 for v in range(8))

    def test_non_edges_count(self):
        view = fresh_view(8, [(0, 1), (0, 2), (0, 5)])
        assert view.comp_degree(0) == 3
        assert view.comp_degree(1) == 1

    def test_removing_a_non_neighbor_lowers_the_count(self):
        view = fresh_view(8, [(0, 1), (0, 2), (0, 5)])
        view.remove_vertex(5)
        assert view.comp_degree(0) == 2

    def test_inactive_vertex_rejected(self):
        view = fresh_view(5)
        view.remove_vertex(3)
        with pytest.raises(NotActiveError):
            view.comp_degree(3)


class TestPruneBreakerTouched:
    def test_clean_view_deletes_nothing(self):
        view = fresh_view(6)
        assert view.prune_breaker_touched() == 0

    def test_one_inside_edge_deletes_at_most_two(self):
        state = new_game(6, BiasSpec(1, 1))
        breaker_claims(state, [(2, 3)])
        view = GraphView(state, active=[2, 3, 4, 5])
        deleted = view.prune_breaker_touched()
        assert deleted == 2
        assert view.active == {4, 5}

    def test_half_outside_edges_do_not_count(self):
        # A Breaker edge with one endpoint outside the window is not an
        # edge of the window's graph, so it cannot trigger a deletion;
        # the reduction rounds depend on this (stale edges to long-gone
        # vertices must not eat the current window).
        state = new_game(6, BiasSpec(1, 1))
        breaker_claims(state, [(0, 4)])
        view = GraphView(state, active=[1, 2, 3, 4])
        assert view.prune_breaker_touched() == 0
        assert 4 in view.active

    def test_protected_vertices_survive(self):
        state = new_game(6, BiasSpec(1, 1))
        breaker_claims(state, [(1, 2)])
        view = GraphView(state)
        deleted = view.prune_breaker_touched(protect=[1])
        assert deleted == 1
        assert 1 in view.active and 2 not in view.active


class TestPruneHighBreakerDegree:
    def test_no_breaker_edges_deletes_nothing(self):
        view = fresh_view(6)
        assert view.prune_high_breaker_degree(3) == 0

    def test_star_of_five_at_threshold_five(self):
        state = new_game(8, BiasSpec(1, 1))
        breaker_claims(state, [(0, k) for k in range(1, 6)])
        view = GraphView(state)
        assert view.prune_high_breaker_degree(5) == 1
        assert 0 not in view.active

    def test_threshold_below_one_rejected(self):
        with pytest.raises(InvalidThresholdError):
            fresh_view(5).prune_high_breaker_degree(0)

    @settings(max_examples=60, deadline=None)
    @given(n=st.integers(6, 24), threshold=st.integers(1, 6),
           seed=st.integers(0, 10 ** 6))
    def test_charging_bound_on_random_breaker_graphs(self, n, threshold, seed):
        rng = random.Random(seed)
        pairs = list(combinations(range(n), 2))
        picked = rng.sample(pairs, rng.randrange(0, len(pairs) // 2))
        state = new_game(n, BiasSpec(1, 1))
        breaker_claims(state, picked)
        view = GraphView(state)
        edges_before = view.breaker_edges_inside
        deleted = view.prune_high_breaker_degree(threshold)
        assert deleted <= edges_before // threshold
        comp, breaker = view.recount()
        assert all(c < threshold for c in breaker.values())


class TestDropBreakerEdges:
    def test_clean_view_unchanged(self):
        view = fresh_view(5)
        view.drop_breaker_edges()
        assert view.max_comp_degree() == 0

    def test_degrees_shift_from_breaker_to_complementary(self):
        state = new_game(8, BiasSpec(1, 1))
        breaker_claims(state, [(0, k) for k in range(1, 5)])
        view = GraphView(state)
        assert view.breaker_degree(0) == 4
        view.drop_breaker_edges()
        assert view.breaker_edges_inside == 0
        assert view.comp_degree(0) == 4
        assert view.breaker_degree(0) == 0

    def test_resulting_degree_caps_at_sum(self):
        state = new_game(10, BiasSpec(1, 1))
        breaker_claims(state, [(0, 1), (0, 2), (3, 4)])
        view = GraphView(state, non_edges=[(0, 9), (5, 6)])
        d_before = view.max_comp_degree()
        b_max = max(view.breaker_degree(v) for v in view.active)
        view.drop_breaker_edges()
        assert view.max_comp_degree() <= d_before + b_max


class TestGreedyClique:
    def test_full_view_returns_everything(self):
        assert fresh_view(5).greedy_clique() == [0, 1, 2, 3, 4]

    def test_bound_on_a_loose_view(self):
        view = fresh_view(10, [(k, (k + 1) % 10) for k in range(10)])
        clique = view.greedy_clique()
        assert len(clique) >= 2
        for u, v in combinations(clique, 2):
            assert not view.is_non_edge(u, v)

    def test_five_cycle_complement_matches_brute_force(self):
        non_edges = [(k, (k + 1) % 5) for k in range(5)]
        view = fresh_view(5, non_edges)
        clique = view.greedy_clique()
        banned = {(min(u, v), max(u, v)) for u, v in non_edges}
        best = max(size for size in range(1, 6)
                   for sub in combinations(range(5), size)
                   if all((min(a, b), max(a, b)) not in banned
                          for a, b in combinations(sub, 2)))
        assert best == 2
        assert 2 <= len(clique) <= best

    def test_unreachable_target_reports_achieved_size(self):
        view = fresh_view(4, [(0, 1), (2, 3)])
        with pytest.raises(InsufficientCliqueError) as err:
            view.greedy_clique(target_size=4)
        assert err.value.achieved >= 2


def random_view(rng, max_n=60):
    n = rng.randrange(1, max_n + 1)
    pairs = list(combinations(range(n), 2))
    non_edges = rng.sample(pairs, rng.randrange(0, len(pairs) + 1)) if pairs else []
    return GraphView(new_game(max(n, 2), BiasSpec(1, 1)), active=range(n),
                     non_edges=non_edges)


def test_greedy_bound_holds_on_1000_random_views():
    rng = random.Random(20240601)
    for _ in range(1000):
        view = random_view(rng)
        d_max = view.max_comp_degree()
        clique = view.greedy_clique()
        assert len(clique) >= -(-view.size // (d_max + 1))
        for u, v in combinations(clique, 2):
            assert not view.is_non_edge(u, v)


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 10 ** 9))
def test_degree_caches_match_recount_under_mutation(seed):
    rng = random.Random(seed)
    n = rng.randrange(4, 16)
    state = new_game(n, BiasSpec(1, 1))
    pairs = list(combinations(range(n), 2))
    breaker_claims(state, rng.sample(pairs, rng.randrange(0, len(pairs) // 2)))
    view = GraphView(state, non_edges=rng.sample(pairs, rng.randrange(0, 4)))
    for _ in range(rng.randrange(0, 12)):
        op = rng.randrange(4)
        if op == 0 and view.size > 1:
            view.remove_vertex(rng.choice(sorted(view.active)))
        elif op == 1 and view.size > 2:
            u, v = rng.sample(sorted(view.active), 2)
            view.add_non_edge(u, v)
        elif op == 2:
            view.prune_high_breaker_degree(rng.randrange(1, 4))
        else:
            view.drop_breaker_edges()
        comp, breaker = view.recount()
        for v in view.active:
            assert view.comp_degree(v) == comp[v]
            assert view.breaker_degree(v) == breaker[v]
        assert view.breaker_edges_inside == sum(breaker.values()) // 2


def test_json_roundtrip():
    state = new_game(7, BiasSpec(1, 1))
    view = GraphView(state, active=[0, 2, 3, 5], non_edges=[(2, 5), (0, 3)])
    text = view.to_json()
    back = GraphView.from_json(state, text)
    assert back.snapshot() == view.snapshot()
