"""Base-clique builds on untouched boards at various biases."""

from __future__ import annotations

import pytest

from makerbreaker.breaker import CliqueBlocker, GreedySpoiler, RandomBreaker, adversary_opponent
from makerbreaker.engine import BiasSpec, maker_has_clique, new_game
from makerbreaker.errors import PreconditionError
from makerbreaker.graphview import GraphView
from makerbreaker.maker.base_clique import play_base_clique


def test_single_vertex_needs_no_moves():
    state = new_game(5, BiasSpec(1, 1))
    view = GraphView(state)
    verts, cert = play_base_clique(view, 1, adversary_opponent(RandomBreaker(0)))
    assert len(verts) == 1
    assert cert.maker_moves == 0


def test_edge_on_21_untouched_vertices_beats_any_reply():
    state = new_game(21, BiasSpec(1, 1))
    view = GraphView(state)
    verts, cert = play_base_clique(view, 2, adversary_opponent(GreedySpoiler(0)))
    assert maker_has_clique(state, verts)
    assert cert.maker_moves <= 21


@pytest.mark.parametrize("adversary_cls", [RandomBreaker, GreedySpoiler, CliqueBlocker])
@pytest.mark.parametrize("seed", range(0, 50, 10))
def test_edge_build_succeeds_across_seeds(adversary_cls, seed):
    state = new_game(21, BiasSpec(1, 1))
    view = GraphView(state)
    verts, cert = play_base_clique(view, 2, adversary_opponent(adversary_cls(seed)))
    assert maker_has_clique(state, verts)
    assert cert.maker_moves <= 21


def test_random_seeds_full_sweep():
    for seed in range(50):
        state = new_game(21, BiasSpec(1, 1))
        view = GraphView(state)
        verts, cert = play_base_clique(view, 2, adversary_opponent(RandomBreaker(seed)))
        assert maker_has_clique(state, verts)
        assert cert.maker_moves <= 21


def test_triangle_at_bias_one_on_threshold_board():
    state = new_game(20 * 21 + 1, BiasSpec(1, 1))
    view = GraphView(state)
    verts, cert = play_base_clique(view, 3, adversary_opponent(GreedySpoiler(1)))
    assert len(verts) == 3
    assert maker_has_clique(state, verts)


def test_edge_build_inside_biased_game_pads_moves():
    state = new_game(200, BiasSpec(2, 1))
    view = GraphView(state, active=range(21))
    verts, cert = play_base_clique(view, 2, adversary_opponent(RandomBreaker(3)),
                                   avoid=view.active)
    assert maker_has_clique(state, verts)
    for rec in state.transcript:
        assert len(rec.edges) == (2 if rec.player.value == "M" else 1)


def test_small_board_rejected():
    state = new_game(10, BiasSpec(1, 1))
    with pytest.raises(PreconditionError):
        play_base_clique(GraphView(state), 2, adversary_opponent(RandomBreaker(0)))
