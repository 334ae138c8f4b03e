"""Maker/Breaker games on complete graphs: engine, strategies, verification."""

from .engine import (
    BiasSpec,
    EdgeClaim,
    GameState,
    MoveRecord,
    Player,
    Variant,
    claim_edges,
    maker_has_clique,
    maker_has_tournament,
    new_game,
    read_trace,
    replay,
    write_trace,
)
from .goals import GoalTournament
from .graphview import GraphView, ViewStats
from .breaker import (
    Adversary,
    AdversaryConfig,
    CliqueBlocker,
    GreedySpoiler,
    RandomBreaker,
    ScriptedBreaker,
    adversary_opponent,
    clique_blocker,
    greedy_spoiler,
    make_adversary,
    random_breaker,
)
from .maker.certificates import (
    CandidatePartition,
    CheckResult,
    Constellation,
    RoundCertificate,
    verify_certificate,
)
from .maker.schedule import (
    ScheduleParams,
    base_clique_threshold,
    biased_feasible,
    biased_survivor_floor,
    eq_q_biased,
    eq_q_tournament,
    f_formula,
    fast_feasible,
    fast_survivor_floor,
    g_formula,
    max_feasible_q,
    shrink_denominator,
    tournament_feasible,
    tournament_set_floor,
)
from .maker.base_clique import play_base_clique
from .maker.biased import play_biased_clique, play_biased_round
from .maker.fast import play_fast_big_clique, play_fast_constellation, play_fast_round
from .maker.tournament import play_tournament, play_tournament_round
from .oracle import SolvedPosition, solve_clique_game, solve_tournament_game

__version__ = "0.1.0"
