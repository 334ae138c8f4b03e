"""Exhaustive game-tree solver for tiny boards.

Ground truth for the engine and the strategies: full minimax over edge
colorings (unclaimed / Maker / Breaker, plus Maker's orientation in the
tournament variant), memoized on a canonical form that is invariant
under vertex relabeling. Canonicalization refines vertices by the
multiset of their incident edge states and takes the lexicographic
minimum over the permutations that respect the refinement.

Values: the winner under perfect play and, when Maker wins, the minimum
number of Maker moves to a win against a Breaker who maximizes delay.
Boards are capped at 15 edges (6 vertices), tournaments at 5 vertices
with goals on at most 3.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, permutations, product
from math import comb
from typing import Iterable, Optional, Sequence

from .engine import BiasSpec, GameState, Player, Variant
from .errors import BoardTooLargeError, InvalidBoardError
from .goals import GoalTournament

UNCLAIMED = 0
MAKER_LOW_HIGH = 1   # Maker edge oriented min(u,v) -> max(u,v)
MAKER_HIGH_LOW = 2
BREAKER = 3
MAKER_PLAIN = 1


@dataclass(frozen=True)
class SolvedPosition:
    key: str
    winner: Player
    min_maker_moves: Optional[int]
    params: dict

    def to_json_dict(self) -> dict:
        return {"params": self.params, "winner": self.winner.value,
                "min_moves": self.min_maker_moves, "key": self.key}


@lru_cache(maxsize=None)
def _edge_list(n: int) -> tuple[tuple[int, int], ...]:
    return tuple(combinations(range(n), 2))


@lru_cache(maxsize=None)
def _edge_index(n: int) -> dict[tuple[int, int], int]:
    return {e: i for i, e in enumerate(_edge_list(n))}


def _canonical(pos: bytes, n: int, oriented: bool) -> bytes:
    """Lexicographically minimal relabeling of the position."""
    edges = _edge_list(n)
    eidx = _edge_index(n)
    # Per-vertex signature: sorted incident states, seen from the vertex
    # (orientation flips to in/out so the signature is label-free).
    sigs = []
    for v in range(n):
        incident = []
        for u in range(n):
            if u == v:
                continue
            s = pos[eidx[(min(u, v), max(u, v))]]
            if oriented and s in (MAKER_LOW_HIGH, MAKER_HIGH_LOW):
                points_out = (s == MAKER_LOW_HIGH) == (v < u)
                s = 4 if points_out else 5
            incident.append(s)
        sigs.append(tuple(sorted(incident)))
    order = sorted(range(n), key=lambda v: (sigs[v], v))
    groups: list[list[int]] = []
    for v in order:
        if groups and sigs[groups[-1][0]] == sigs[v]:
            groups[-1].append(v)
        else:
            groups.append([v])
    best: Optional[bytes] = None
    for parts in product(*(permutations(g) for g in groups)):
        flat = [v for part in parts for v in part]
        perm = [0] * n  # perm[old] = new
        for new, old in enumerate(flat):
            perm[old] = new
        out = bytearray(len(edges))
        for (u, v), i in eidx.items():
            s = pos[i]
            a, b = perm[u], perm[v]
            if oriented and s in (MAKER_LOW_HIGH, MAKER_HIGH_LOW):
                if (a < b) != (u < v):
                    s = MAKER_LOW_HIGH if s == MAKER_HIGH_LOW else MAKER_HIGH_LOW
            out[eidx[(min(a, b), max(a, b))]] = s
        cand = bytes(out)
        if best is None or cand < best:
            best = cand
    assert best is not None
    return best


def relabel_position(pos: bytes, n: int, perm: Sequence[int], oriented: bool) -> bytes:
    """Apply an explicit vertex permutation; used by invariance tests."""
    eidx = _edge_index(n)
    out = bytearray(len(pos))
    for (u, v), i in eidx.items():
        s = pos[i]
        a, b = perm[u], perm[v]
        if oriented and s in (MAKER_LOW_HIGH, MAKER_HIGH_LOW):
            if (a < b) != (u < v):
                s = MAKER_LOW_HIGH if s == MAKER_HIGH_LOW else MAKER_HIGH_LOW
        out[eidx[(min(a, b), max(a, b))]] = s
    return bytes(out)


def _to_move(pos: bytes, m: int, b: int, first: Player,
             oriented: bool) -> Player:
    maker_edges = sum(1 for s in pos if s in
                      ((MAKER_LOW_HIGH, MAKER_HIGH_LOW) if oriented else (MAKER_PLAIN,)))
    breaker_edges = sum(1 for s in pos if s == BREAKER)
    k_m = -(-maker_edges // m)
    k_b = -(-breaker_edges // b)
    if first is Player.MAKER:
        return Player.MAKER if k_m == k_b else Player.BREAKER
    return Player.BREAKER if k_b == k_m else Player.MAKER


# -- clique game -------------------------------------------------------------


class _CliqueSolver:
    def __init__(self, n: int, q: int, bias: BiasSpec, first: Player):
        if comb(n, 2) > 15:
            raise BoardTooLargeError(f"{n} vertices exceed the 15-edge oracle cap")
        if q < 1 or q > n:
            raise InvalidBoardError(f"goal size {q} out of range for {n} vertices")
        self.n, self.q = n, q
        self.m, self.b = bias.maker_edges, bias.breaker_edges
        self.first = first
        eidx = _edge_index(n)
        self.subsets = [tuple(eidx[e] for e in combinations(sub, 2))
                        for sub in combinations(range(n), q)]
        self.memo: dict[bytes, tuple[Player, Optional[int]]] = {}

    def goal_present(self, pos: bytes) -> bool:
        return any(all(pos[i] == MAKER_PLAIN for i in sub) for sub in self.subsets)

    def _reachable(self, pos: bytes) -> bool:
        return any(all(pos[i] != BREAKER for i in sub) for sub in self.subsets)

    def _win_in_one(self, pos: bytes, budget: int) -> bool:
        for sub in self.subsets:
            open_edges = 0
            dead = False
            for i in sub:
                if pos[i] == BREAKER:
                    dead = True
                    break
                if pos[i] == UNCLAIMED:
                    open_edges += 1
            if not dead and 0 < open_edges <= budget:
                return True
        return False

    def solve(self, pos: bytes) -> tuple[Player, Optional[int]]:
        if self.goal_present(pos):
            return Player.MAKER, 0
        if not self._reachable(pos):
            return Player.BREAKER, None
        unclaimed = [i for i, s in enumerate(pos) if s == UNCLAIMED]
        if not unclaimed:
            return Player.BREAKER, None
        mover = _to_move(pos, self.m, self.b, self.first, oriented=False)
        budget = min(self.m if mover is Player.MAKER else self.b, len(unclaimed))
        if mover is Player.MAKER and self._win_in_one(pos, budget):
            return Player.MAKER, 1
        key = _canonical(pos, self.n, oriented=False)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        fill = MAKER_PLAIN if mover is Player.MAKER else BREAKER
        best: tuple[Player, Optional[int]]
        if mover is Player.MAKER:
            best = (Player.BREAKER, None)
            for move in combinations(unclaimed, budget):
                child = bytearray(pos)
                for i in move:
                    child[i] = fill
                winner, moves = self.solve(bytes(child))
                if winner is Player.MAKER:
                    cand = 1 + (moves or 0)
                    if best[0] is Player.BREAKER or cand < (best[1] or 10 ** 9):
                        best = (Player.MAKER, cand)
                    if cand <= 2:
                        break
        else:
            worst = -1
            best = (Player.MAKER, 0)
            for move in combinations(unclaimed, budget):
                child = bytearray(pos)
                for i in move:
                    child[i] = fill
                winner, moves = self.solve(bytes(child))
                if winner is Player.BREAKER:
                    best = (Player.BREAKER, None)
                    break
                worst = max(worst, moves or 0)
            if best[0] is Player.MAKER:
                best = (Player.MAKER, worst)
        self.memo[key] = best
        return best


def clique_position_from_state(state: GameState) -> bytes:
    if state.variant is not Variant.PLAIN:
        raise InvalidBoardError("clique positions come from plain games")
    eidx = _edge_index(state.n)
    pos = bytearray(comb(state.n, 2))
    for (u, v), claim in state.claims.items():
        pos[eidx[(u, v)]] = MAKER_PLAIN if claim.owner is Player.MAKER else BREAKER
    return bytes(pos)


def solve_clique_game(n: int, q: int, bias: BiasSpec = BiasSpec(),
                      first_player: Player = Player.MAKER,
                      position: Optional[bytes] = None) -> SolvedPosition:
    solver = _CliqueSolver(n, q, bias, first_player)
    pos = position if position is not None else bytes(comb(n, 2))
    winner, moves = solver.solve(pos)
    key = _canonical(pos, n, oriented=False).hex()
    params = {"game": "clique", "n": n, "q": q, "m": bias.maker_edges,
              "b": bias.breaker_edges, "first": first_player.value}
    return SolvedPosition(key, winner, moves, params)


def clique_goal_present(n: int, q: int, pos: bytes) -> bool:
    eidx = _edge_index(n)
    return any(all(pos[eidx[e]] == MAKER_PLAIN for e in combinations(sub, 2))
               for sub in combinations(range(n), q))


# -- tournament game ----------------------------------------------------------


class _TournamentSolver:
    def __init__(self, n: int, goal: GoalTournament, first: Player):
        if n > 5:
            raise BoardTooLargeError(f"{n} vertices exceed the tournament oracle cap")
        if goal.q > 3:
            raise BoardTooLargeError(f"goal on {goal.q} vertices exceeds the cap")
        if goal.q > n:
            raise InvalidBoardError("goal larger than the board")
        self.n = n
        self.goal = goal
        self.first = first
        eidx = _edge_index(n)
        self.embeddings: list[tuple[tuple[int, int, int], ...]] = []
        for image in permutations(range(n), goal.q):
            wanted = []
            for i, j in goal.arcs():
                a, b = image[i], image[j]
                want = MAKER_LOW_HIGH if a < b else MAKER_HIGH_LOW
                wanted.append((eidx[(min(a, b), max(a, b))], want, UNCLAIMED))
            self.embeddings.append(tuple(wanted))
        self.memo: dict[bytes, tuple[Player, Optional[int]]] = {}

    def goal_present(self, pos: bytes) -> bool:
        return any(all(pos[i] == want for i, want, _ in emb)
                   for emb in self.embeddings)

    def _reachable(self, pos: bytes) -> bool:
        return any(all(pos[i] in (want, UNCLAIMED) for i, want, _ in emb)
                   for emb in self.embeddings)

    def _win_in_one(self, pos: bytes) -> bool:
        for emb in self.embeddings:
            missing = 0
            dead = False
            for i, want, _ in emb:
                if pos[i] == want:
                    continue
                if pos[i] == UNCLAIMED:
                    missing += 1
                else:
                    dead = True
                    break
            if not dead and missing == 1:
                return True
        return False

    def solve(self, pos: bytes) -> tuple[Player, Optional[int]]:
        if self.goal_present(pos):
            return Player.MAKER, 0
        if not self._reachable(pos):
            return Player.BREAKER, None
        unclaimed = [i for i, s in enumerate(pos) if s == UNCLAIMED]
        if not unclaimed:
            return Player.BREAKER, None
        mover = _to_move(pos, 1, 1, self.first, oriented=True)
        if mover is Player.MAKER and self._win_in_one(pos):
            return Player.MAKER, 1
        key = _canonical(pos, self.n, oriented=True)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        if mover is Player.MAKER:
            best: tuple[Player, Optional[int]] = (Player.BREAKER, None)
            for i in unclaimed:
                for fill in (MAKER_LOW_HIGH, MAKER_HIGH_LOW):
                    child = bytearray(pos)
                    child[i] = fill
                    winner, moves = self.solve(bytes(child))
                    if winner is Player.MAKER:
                        cand = 1 + (moves or 0)
                        if best[0] is Player.BREAKER or cand < (best[1] or 10 ** 9):
                            best = (Player.MAKER, cand)
                if best[1] == 1:
                    break
        else:
            # Breaker's orientation choice is inert; one child per edge.
            worst = -1
            best = (Player.MAKER, 0)
            for i in unclaimed:
                child = bytearray(pos)
                child[i] = BREAKER
                winner, moves = self.solve(bytes(child))
                if winner is Player.BREAKER:
                    best = (Player.BREAKER, None)
                    break
                worst = max(worst, moves or 0)
            if best[0] is Player.MAKER:
                best = (Player.MAKER, worst)
        self.memo[key] = best
        return best


def tournament_position_from_state(state: GameState) -> bytes:
    if state.variant is not Variant.ORIENTED:
        raise InvalidBoardError("tournament positions come from oriented games")
    eidx = _edge_index(state.n)
    pos = bytearray(comb(state.n, 2))
    for (u, v), claim in state.claims.items():
        if claim.owner is Player.BREAKER:
            pos[eidx[(u, v)]] = BREAKER
        else:
            assert claim.orientation is not None
            lo_hi = claim.orientation == (u, v)
            pos[eidx[(u, v)]] = MAKER_LOW_HIGH if lo_hi else MAKER_HIGH_LOW
    return bytes(pos)


def solve_tournament_game(n: int, goal: GoalTournament,
                          first_player: Player = Player.MAKER,
                          position: Optional[bytes] = None) -> SolvedPosition:
    solver = _TournamentSolver(n, goal, first_player)
    pos = position if position is not None else bytes(comb(n, 2))
    winner, moves = solver.solve(pos)
    key = _canonical(pos, n, oriented=True).hex()
    params = {"game": "tournament", "n": n, "q": goal.q,
              "goal": goal.to_text().replace("\n", "|"),
              "first": first_player.value}
    return SolvedPosition(key, winner, moves, params)


def tournament_goal_present(n: int, goal: GoalTournament, pos: bytes) -> bool:
    eidx = _edge_index(n)
    for image in permutations(range(n), goal.q):
        ok = True
        for i, j in goal.arcs():
            a, b = image[i], image[j]
            want = MAKER_LOW_HIGH if a < b else MAKER_HIGH_LOW
            if pos[eidx[(min(a, b), max(a, b))]] != want:
                ok = False
                break
        if ok:
            return True
    return False
