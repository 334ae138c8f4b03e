"""Constructive Maker strategies and their schedule arithmetic."""

from .base_clique import play_base_clique
from .biased import play_biased_clique, play_biased_on_view, play_biased_round
from .certificates import (
    CandidatePartition,
    CheckResult,
    Constellation,
    RoundCertificate,
    require_certificate,
    verify_certificate,
)
from .common import ObservedOpponent, OpponentFn, maker_move
from .fast import play_fast_big_clique, play_fast_constellation, play_fast_round
from .schedule import (
    ScheduleParams,
    base_clique_threshold,
    biased_feasible,
    biased_survivor_floor,
    eq_q_biased,
    eq_q_tournament,
    f_formula,
    fast_feasible,
    fast_ratio,
    fast_survivor_floor,
    g_formula,
    lemma_constants,
    max_feasible_q,
    shrink_denominator,
    tournament_feasible,
    tournament_set_floor,
)
from .tournament import play_tournament, play_tournament_round
