"""Authoritative game state for edge-claiming games on the complete graph.

Two players, Maker and Breaker, alternately claim batches of unclaimed
edges of K_n: Maker takes ``m`` edges per move and Breaker ``b`` (the
``(m:b)`` bias). In the oriented variant each claim additionally fixes a
direction for its edge; Breaker's directions are recorded but never
affect any win condition.

All mutation goes through :func:`claim_edges`, which validates the move
atomically, updates the sparse claim map, maintains per-vertex degree
counters and appends a :class:`MoveRecord` to the transcript. Replaying
a transcript from an empty board reproduces the claim map bit for bit;
the NDJSON trace format (one JSON object per move) is the canonical
serialization of a transcript.

Conventions: vertices are 0-based integers, edges are stored under their
canonical ``(min, max)`` pair, and a move must claim exactly the mover's
bias, or all remaining unclaimed edges when fewer than that remain (the
"short final move" rule).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from math import comb
from typing import IO, Iterable, Mapping, Optional, Sequence

from .errors import (
    BoardExhaustedError,
    DoubleClaimError,
    InvalidBoardError,
    InvalidEdgeError,
    OrientationError,
    OutOfTurnError,
    OverBudgetError,
    OwnerMismatchError,
    ReplayDivergenceError,
    UnderBudgetError,
)
from .goals import GoalTournament


class Player(str, Enum):
    MAKER = "M"
    BREAKER = "B"

    @property
    def opponent(self) -> "Player":
        return Player.BREAKER if self is Player.MAKER else Player.MAKER


class Variant(str, Enum):
    PLAIN = "plain"
    ORIENTED = "oriented"


def pair(u: int, v: int) -> tuple[int, int]:
    """Canonical (min, max) key for an undirected edge."""
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class BiasSpec:
    """The (m:b) bias plus who moves first.

    Maker-first is the default; the accounting of every shipped strategy
    assumes it, but Breaker-first is accepted for robustness runs.
    """

    maker_edges: int = 1
    breaker_edges: int = 1
    first_player: Player = Player.MAKER

    def __post_init__(self):
        if self.maker_edges < 1 or self.breaker_edges < 1:
            raise InvalidBoardError("bias values must be >= 1")

    def edges_per_move(self, player: Player) -> int:
        return self.maker_edges if player is Player.MAKER else self.breaker_edges


@dataclass(frozen=True, slots=True)
class EdgeClaim:
    """One claimed edge: canonical endpoints, owner, optional direction."""

    u: int
    v: int
    owner: Player
    orientation: Optional[tuple[int, int]] = None

    @property
    def endpoints(self) -> tuple[int, int]:
        return (self.u, self.v)


def make_claim(u: int, v: int, owner: Player,
               orientation: Optional[tuple[int, int]] = None) -> EdgeClaim:
    """Build a claim with canonicalized endpoints."""
    a, b = pair(u, v)
    return EdgeClaim(a, b, owner, orientation)


@dataclass(frozen=True, slots=True)
class MoveRecord:
    index: int
    player: Player
    edges: tuple[EdgeClaim, ...]
    phase: str = ""


@dataclass(frozen=True, slots=True)
class Turn:
    """Whose move it is and how many edges that move may still claim."""

    player: Player
    edges_left: int


class GameState:
    """Mutable board state; see module docstring for the rules enforced."""

    def __init__(self, n: int, bias: BiasSpec, variant: Variant = Variant.PLAIN):
        if n < 2:
            raise InvalidBoardError(f"need at least 2 vertices, got {n}")
        self.n = n
        self.bias = bias
        self.variant = variant
        self.claims: dict[tuple[int, int], EdgeClaim] = {}
        self.to_move: Player = bias.first_player
        self.maker_move_count = 0
        self.breaker_move_count = 0
        self.transcript: list[MoveRecord] = []
        self.maker_degree = [0] * n
        self.breaker_degree = [0] * n
        self._maker_adj: dict[int, set[int]] = {}
        self._total_pairs = comb(n, 2)

    # -- queries ---------------------------------------------------------

    @property
    def total_pairs(self) -> int:
        return self._total_pairs

    @property
    def unclaimed_count(self) -> int:
        return self.total_pairs - len(self.claims)

    @property
    def board_exhausted(self) -> bool:
        return self.unclaimed_count == 0

    @property
    def turn(self) -> Turn:
        return Turn(self.to_move, self.move_budget(self.to_move))

    def move_budget(self, player: Player) -> int:
        return min(self.bias.edges_per_move(player), self.unclaimed_count)

    def edge_owner(self, u: int, v: int) -> Optional[Player]:
        claim = self.claims.get(pair(u, v))
        return claim.owner if claim else None

    def is_unclaimed(self, u: int, v: int) -> bool:
        return pair(u, v) not in self.claims

    def maker_adjacency(self, v: int) -> frozenset[int]:
        return frozenset(self._maker_adj.get(v, ()))

    def maker_owns(self, u: int, v: int) -> bool:
        claim = self.claims.get(pair(u, v))
        return claim is not None and claim.owner is Player.MAKER

    # -- mutation --------------------------------------------------------

    def _validate_move(self, player: Player, edges: Sequence[EdgeClaim]) -> None:
        if self.board_exhausted:
            raise BoardExhaustedError("no unclaimed edges remain")
        if player is not self.to_move:
            raise OutOfTurnError(f"{player.value} moved on {self.to_move.value}'s turn")
        required = self.move_budget(player)
        if len(edges) > required:
            raise OverBudgetError(f"move claims {len(edges)} edges, budget is {required}")
        if len(edges) < required:
            raise UnderBudgetError(f"move claims {len(edges)} edges, budget is {required}")
        seen: set[tuple[int, int]] = set()
        for claim in edges:
            if not (0 <= claim.u < claim.v < self.n):
                raise InvalidEdgeError(f"bad edge ({claim.u},{claim.v}) on {self.n} vertices")
            if claim.owner is not player:
                raise OwnerMismatchError(
                    f"claim owned by {claim.owner.value} in {player.value}'s move")
            key = (claim.u, claim.v)
            if key in seen or key in self.claims:
                raise DoubleClaimError(f"edge {key} already claimed")
            seen.add(key)
            if self.variant is Variant.ORIENTED:
                if claim.orientation is None:
                    raise OrientationError(f"edge {key} needs an orientation")
                if set(claim.orientation) != {claim.u, claim.v}:
                    raise OrientationError(
                        f"orientation {claim.orientation} is not a permutation of {key}")
            elif claim.orientation is not None:
                raise OrientationError(f"edge {key} carries an orientation in a plain game")

    def apply_move(self, player: Player, edges: Sequence[EdgeClaim], phase: str = "") -> MoveRecord:
        self._validate_move(player, edges)
        for claim in edges:
            self.claims[(claim.u, claim.v)] = claim
            if player is Player.MAKER:
                self.maker_degree[claim.u] += 1
                self.maker_degree[claim.v] += 1
                self._maker_adj.setdefault(claim.u, set()).add(claim.v)
                self._maker_adj.setdefault(claim.v, set()).add(claim.u)
            else:
                self.breaker_degree[claim.u] += 1
                self.breaker_degree[claim.v] += 1
        record = MoveRecord(len(self.transcript), player, tuple(edges), phase)
        self.transcript.append(record)
        if player is Player.MAKER:
            self.maker_move_count += 1
        else:
            self.breaker_move_count += 1
        self.to_move = player.opponent
        return record

    def claim_summary(self) -> tuple[int, int]:
        """(maker edges, breaker edges) currently on the board."""
        maker = sum(1 for c in self.claims.values() if c.owner is Player.MAKER)
        return maker, len(self.claims) - maker

    def same_position(self, other: "GameState") -> bool:
        return (self.n == other.n and self.variant == other.variant
                and self.bias == other.bias and self.claims == other.claims
                and self.to_move == other.to_move)


def new_game(n: int, bias: BiasSpec, variant: Variant = Variant.PLAIN) -> GameState:
    """Fresh game on K_n with no claimed edges."""
    return GameState(n, bias, variant)


def claim_edges(state: GameState, player: Player, edges: Sequence[EdgeClaim],
                phase: str = "") -> GameState:
    """Apply one full move for ``player``; returns the mutated state."""
    state.apply_move(player, edges, phase)
    return state


def replay(transcript: Sequence[MoveRecord], n: int, bias: BiasSpec,
           variant: Variant = Variant.PLAIN) -> GameState:
    """Rebuild a state from a transcript, validating every move.

    Any validation failure (wrong player, double claim, bad orientation,
    out-of-sequence index) is reported as a replay divergence carrying
    the offending move index.
    """
    state = new_game(n, bias, variant)
    for pos, record in enumerate(transcript):
        if record.index != pos:
            raise ReplayDivergenceError(pos, f"move index {record.index} != {pos}")
        try:
            state.apply_move(record.player, record.edges, record.phase)
        except ReplayDivergenceError:
            raise
        except Exception as exc:  # noqa: BLE001 - rewrap with position info
            raise ReplayDivergenceError(pos, f"move {pos}: {exc}") from exc
    return state


# -- win conditions -------------------------------------------------------

def maker_has_clique(state: GameState, vertices: Sequence[int]) -> bool:
    """True iff every pair among ``vertices`` is Maker-owned."""
    verts = list(vertices)
    if len(set(verts)) != len(verts):
        raise InvalidEdgeError("clique vertices must be distinct")
    for i, u in enumerate(verts):
        for v in verts[i + 1:]:
            claim = state.claims.get(pair(u, v))
            if claim is None or claim.owner is not Player.MAKER:
                return False
    return True


def maker_has_tournament(state: GameState, mapping: Mapping[int, int],
                         goal: GoalTournament) -> bool:
    """True iff Maker's directed graph realizes ``goal`` under ``mapping``.

    ``mapping`` sends goal vertices (0..q-1) to board vertices and must be
    injective. Every goal arc must be matched by a Maker-owned edge whose
    orientation points the same way; Breaker orientations are irrelevant.
    """
    if len(set(mapping.values())) != len(mapping):
        raise InvalidEdgeError("goal mapping must be injective")
    for i, j in goal.arcs():
        a, b = mapping[i], mapping[j]
        claim = state.claims.get(pair(a, b))
        if claim is None or claim.owner is not Player.MAKER:
            return False
        if claim.orientation != (a, b):
            return False
    return True


# -- NDJSON traces --------------------------------------------------------

def record_to_json(record: MoveRecord) -> str:
    obj: dict = {
        "i": record.index,
        "p": record.player.value,
        "edges": [[c.u, c.v] for c in record.edges],
    }
    if any(c.orientation is not None for c in record.edges):
        obj["dir"] = [list(c.orientation) for c in record.edges]
    obj["phase"] = record.phase
    return json.dumps(obj, separators=(",", ":"))


def record_from_json(line: str) -> MoveRecord:
    obj = json.loads(line)
    player = Player(obj["p"])
    dirs = obj.get("dir")
    edges = []
    for k, (u, v) in enumerate(obj["edges"]):
        orientation = tuple(dirs[k]) if dirs is not None else None
        edges.append(EdgeClaim(u, v, player, orientation))
    return MoveRecord(obj["i"], player, tuple(edges), obj.get("phase", ""))


def write_trace(fp: IO[str], transcript: Iterable[MoveRecord]) -> None:
    for record in transcript:
        fp.write(record_to_json(record))
        fp.write("\n")


def read_trace(fp: IO[str]) -> list[MoveRecord]:
    return [record_from_json(line) for line in fp if line.strip()]
