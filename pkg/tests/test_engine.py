"""Engine rules: moves, validation, replay, win predicates, traces."""

from __future__ import annotations

import io
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from makerbreaker.engine import (
    BiasSpec,
    EdgeClaim,
    Player,
    Variant,
    claim_edges,
    make_claim,
    maker_has_clique,
    maker_has_tournament,
    new_game,
    pair,
    read_trace,
    replay,
    write_trace,
)
from makerbreaker.errors import (
    BoardExhaustedError,
    DoubleClaimError,
    InvalidBoardError,
    InvalidEdgeError,
    OrientationError,
    OutOfTurnError,
    OverBudgetError,
    ReplayDivergenceError,
    UnderBudgetError,
)
from makerbreaker.goals import GoalTournament

M, B = Player.MAKER, Player.BREAKER


def mc(u, v, orientation=None):
    return make_claim(u, v, M, orientation)


def bc(u, v, orientation=None):
    return make_claim(u, v, B, orientation)


class TestNewGame:
    def test_plain_board_has_all_pairs_unclaimed(self):
        state = new_game(5, BiasSpec(1, 1))
        assert state.unclaimed_count == 10

    def test_bias_sets_first_move_budget(self):
        state = new_game(4, BiasSpec(2, 3))
        assert state.to_move is M
        assert state.move_budget(M) == 2

    def test_oriented_variant_requires_orientation(self):
        state = new_game(6, BiasSpec(1, 1), Variant.ORIENTED)
        with pytest.raises(OrientationError):
            claim_edges(state, M, [mc(1, 2)])
        claim_edges(state, M, [mc(1, 2, (2, 1))])
        assert state.claims[(1, 2)].orientation == (2, 1)

    def test_tiny_board_rejected(self):
        with pytest.raises(InvalidBoardError):
            new_game(1, BiasSpec(1, 1))

    def test_breaker_first_configurable(self):
        state = new_game(4, BiasSpec(1, 1, first_player=B))
        assert state.to_move is B


class TestClaimEdges:
    def test_turn_passes_after_full_move(self):
        state = new_game(4, BiasSpec(1, 1))
        claim_edges(state, M, [mc(1, 2)])
        assert state.to_move is B
        assert state.maker_move_count == 1

    def test_double_claim_rejected(self):
        state = new_game(4, BiasSpec(1, 1))
        claim_edges(state, M, [mc(1, 2)])
        with pytest.raises(DoubleClaimError):
            claim_edges(state, B, [bc(1, 2)])

    def test_short_final_move_is_legal(self):
        state = new_game(3, BiasSpec(2, 1))
        claim_edges(state, M, [mc(0, 1), mc(0, 2)])
        claim_edges(state, B, [bc(1, 2)])
        assert state.board_exhausted
        with pytest.raises(BoardExhaustedError):
            claim_edges(state, M, [])

    def test_short_move_only_when_board_runs_out(self):
        state = new_game(4, BiasSpec(2, 1))
        with pytest.raises(UnderBudgetError):
            claim_edges(state, M, [mc(0, 1)])
        claim_edges(state, M, [mc(0, 1), mc(0, 2)])
        with pytest.raises(OverBudgetError):
            claim_edges(state, B, [bc(1, 2), bc(1, 3)])

    def test_out_of_turn_rejected(self):
        state = new_game(4, BiasSpec(1, 1))
        with pytest.raises(OutOfTurnError):
            claim_edges(state, B, [bc(0, 1)])

    def test_bad_vertex_rejected(self):
        state = new_game(4, BiasSpec(1, 1))
        with pytest.raises(InvalidEdgeError):
            claim_edges(state, M, [mc(0, 7)])

    def test_orientation_in_plain_game_rejected(self):
        state = new_game(4, BiasSpec(1, 1))
        with pytest.raises(OrientationError):
            claim_edges(state, M, [mc(0, 1, (0, 1))])

    def test_ill_formed_orientation_rejected(self):
        state = new_game(4, BiasSpec(1, 1), Variant.ORIENTED)
        with pytest.raises(OrientationError):
            claim_edges(state, M, [EdgeClaim(0, 1, M, (0, 2))])


class TestReplay:
    def test_empty_transcript_gives_fresh_state(self):
        state = replay([], 5, BiasSpec(1, 1))
        assert state.unclaimed_count == 10
        assert state.transcript == []

    def test_full_game_replays_bit_for_bit(self):
        bias = BiasSpec(2, 1)
        state = new_game(5, bias)
        rng = random.Random(7)
        while not state.board_exhausted:
            player = state.to_move
            budget = state.move_budget(player)
            free = sorted(p for p in
                          ((u, v) for u in range(5) for v in range(u + 1, 5))
                          if p not in state.claims)
            picks = rng.sample(free, budget)
            claim_edges(state, player,
                        [make_claim(u, v, player) for u, v in picks])
        again = replay(state.transcript, 5, bias)
        assert again.claims == state.claims
        assert again.same_position(state)

    def test_tampered_owner_diverges_at_index(self):
        state = new_game(4, BiasSpec(1, 1))
        claim_edges(state, M, [mc(0, 1)])
        claim_edges(state, B, [bc(0, 2)])
        bad = list(state.transcript)
        rec = bad[1]
        bad[1] = type(rec)(rec.index, rec.player,
                           (EdgeClaim(0, 2, M, None),), rec.phase)
        with pytest.raises(ReplayDivergenceError) as err:
            replay(bad, 4, BiasSpec(1, 1))
        assert err.value.move_index == 1


class TestWinPredicates:
    def test_clique_true_when_all_pairs_maker(self):
        state = new_game(4, BiasSpec(3, 1))
        claim_edges(state, M, [mc(0, 1), mc(0, 2), mc(1, 2)])
        assert maker_has_clique(state, [0, 1, 2])

    def test_clique_false_on_unclaimed_pair(self):
        state = new_game(4, BiasSpec(2, 1))
        claim_edges(state, M, [mc(0, 1), mc(0, 2)])
        assert not maker_has_clique(state, [0, 1, 2])

    def test_clique_false_on_breaker_pair(self):
        state = new_game(4, BiasSpec(2, 1))
        claim_edges(state, M, [mc(0, 1), mc(0, 2)])
        claim_edges(state, B, [bc(1, 2)])
        assert not maker_has_clique(state, [0, 1, 2])

    def test_single_vertex_goal_always_present(self):
        state = new_game(4, BiasSpec(1, 1), Variant.ORIENTED)
        assert maker_has_tournament(state, {0: 2}, GoalTournament.transitive(1))

    def test_two_vertex_goal_matches_orientation(self):
        goal = GoalTournament.transitive(2)
        state = new_game(4, BiasSpec(1, 1), Variant.ORIENTED)
        claim_edges(state, M, [mc(1, 3, (1, 3))])
        assert maker_has_tournament(state, {0: 1, 1: 3}, goal)
        assert not maker_has_tournament(state, {0: 3, 1: 1}, goal)


class TestTraces:
    def test_ndjson_roundtrip(self):
        state = new_game(5, BiasSpec(1, 2), Variant.ORIENTED)
        claim_edges(state, M, [mc(0, 1, (1, 0))], phase="open")
        claim_edges(state, B, [bc(0, 2, (0, 2)), bc(1, 2, (2, 1))], phase="reply")
        buf = io.StringIO()
        write_trace(buf, state.transcript)
        buf.seek(0)
        back = read_trace(buf)
        assert back == state.transcript
        again = replay(back, 5, BiasSpec(1, 2), Variant.ORIENTED)
        assert again.claims == state.claims

    def test_plain_trace_has_no_dir_field(self):
        state = new_game(4, BiasSpec(1, 1))
        claim_edges(state, M, [mc(0, 1)])
        buf = io.StringIO()
        write_trace(buf, state.transcript)
        assert '"dir"' not in buf.getvalue()


def _random_playout(n, m, b, seed, moves):
    bias = BiasSpec(m, b)
    state = new_game(n, bias)
    rng = random.Random(seed)
    for _ in range(moves):
        if state.board_exhausted:
            break
        player = state.to_move
        budget = state.move_budget(player)
        free = [p for p in ((u, v) for u in range(n) for v in range(u + 1, n))
                if p not in state.claims]
        picks = rng.sample(free, budget)
        claim_edges(state, player, [make_claim(u, v, player) for u, v in picks])
    return state


@settings(max_examples=60, deadline=None)
@given(n=st.integers(3, 8), m=st.integers(1, 3), b=st.integers(1, 3),
       seed=st.integers(0, 10 ** 6), moves=st.integers(0, 12))
def test_claim_ledger_matches_transcript(n, m, b, seed, moves):
    state = _random_playout(n, m, b, seed, moves)
    maker, breaker = state.claim_summary()
    from_records = [0, 0]
    for rec in state.transcript:
        from_records[rec.player is Player.BREAKER] += len(rec.edges)
    assert (maker, breaker) == tuple(from_records)
    assert maker <= m * state.maker_move_count
    assert breaker <= b * state.breaker_move_count


@settings(max_examples=40, deadline=None)
@given(n=st.integers(3, 8), m=st.integers(1, 3), b=st.integers(1, 3),
       seed=st.integers(0, 10 ** 6), moves=st.integers(0, 12))
def test_replay_reproduces_random_games(n, m, b, seed, moves):
    state = _random_playout(n, m, b, seed, moves)
    again = replay(state.transcript, n, BiasSpec(m, b))
    assert again.claims == state.claims


@settings(max_examples=40, deadline=None)
@given(n=st.integers(3, 7), seed=st.integers(0, 10 ** 6))
def test_short_move_fires_only_at_exhaustion(n, seed):
    bias = BiasSpec(2, 3)
    state = new_game(n, bias)
    rng = random.Random(seed)
    while not state.board_exhausted:
        player = state.to_move
        budget = state.move_budget(player)
        full = bias.edges_per_move(player)
        if budget < full:
            assert state.unclaimed_count < full
        free = [p for p in ((u, v) for u in range(n) for v in range(u + 1, n))
                if p not in state.claims]
        picks = rng.sample(free, budget)
        claim_edges(state, player, [make_claim(u, v, player) for u, v in picks])
    for rec in state.transcript[:-1]:
        assert len(rec.edges) == bias.edges_per_move(rec.player)


def test_breaker_orientations_never_affect_tournament_check():
    goal = GoalTournament.cyclic_triangle()
    state = new_game(5, BiasSpec(1, 1), Variant.ORIENTED)
    claim_edges(state, M, [mc(0, 1, (0, 1))])
    claim_edges(state, B, [bc(3, 4, (3, 4))])
    claim_edges(state, M, [mc(1, 2, (1, 2))])
    claim_edges(state, B, [bc(2, 4, (2, 4))])
    claim_edges(state, M, [mc(0, 2, (2, 0))])
    mapping = {0: 0, 1: 1, 2: 2}
    before = maker_has_tournament(state, mapping, goal)
    flipped = replay(state.transcript, 5, BiasSpec(1, 1), Variant.ORIENTED)
    for key, claim in list(flipped.claims.items()):
        if claim.owner is B:
            flipped.claims[key] = EdgeClaim(
                claim.u, claim.v, B, (claim.orientation[1], claim.orientation[0]))
    assert maker_has_tournament(flipped, mapping, goal) == before
    assert before
