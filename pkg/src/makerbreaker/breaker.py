"""Breaker adversaries: legal move generators of varying hostility.

These are test probes, not claimed-optimal play. Each adversary returns
exactly ``budget`` distinct unclaimed edges (or every remaining edge on
a nearly full board), and is deterministic given its seed and the call
history, so whole games replay bit for bit.

``greedy_spoiler`` attacks pairs of high Maker-degree vertices;
``clique_blocker`` claims pairs inside the common Maker-neighborhood of
the current maximum-degree vertices, which is exactly where the
strategies collect their survivor windows. The module-level functions
are the pure single-call reference forms; the classes add incremental
caches so per-move cost stays flat on large boards, and they agree
with the reference forms on a fresh instance.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .engine import EdgeClaim, GameState, Player, Variant, claim_edges, pair
from .errors import BadScriptError, ConfigError

Edge = tuple[int, int]


def _prefix_size(budget: int) -> int:
    return max(24, 2 * budget + 2)


def _lowest_unclaimed(state: GameState, taken: set[Edge], count: int) -> list[Edge]:
    """First ``count`` unclaimed pairs in lexicographic order."""
    found: list[Edge] = []
    for u in range(state.n):
        for v in range(u + 1, state.n):
            if len(found) == count:
                return found
            if (u, v) not in state.claims and (u, v) not in taken:
                found.append((u, v))
    return found


class _PairScanner:
    """Monotone lexicographic scan for lowest unclaimed pairs.

    Claims never come back, so pairs skipped as claimed stay claimed and
    the pointer never needs to rewind; pairs handed out are claimed by
    the caller's move, so skipping past them is exact as well.
    """

    def __init__(self):
        self._u = 0
        self._v = 1

    def take(self, state: GameState, taken: set[Edge], count: int) -> list[Edge]:
        out: list[Edge] = []
        u, v, n = self._u, self._v, state.n
        claims = state.claims
        while len(out) < count and u < n - 1:
            if v >= n:
                u += 1
                v = u + 1
                continue
            if (u, v) not in claims and (u, v) not in taken:
                out.append((u, v))
                taken.add((u, v))
            v += 1
        self._u, self._v = u, v
        return out


def random_breaker(state: GameState, budget: int, rng: random.Random) -> list[Edge]:
    """Uniformly random unclaimed edges from the given generator.

    Rejection sampling; the claim map is sparse relative to the board in
    every shipped experiment, so retries are rare. Falls back to exact
    enumeration if the board is nearly full.
    """
    chosen: list[Edge] = []
    taken: set[Edge] = set()
    attempts = 0
    limit = 50 * (budget + 4)
    while len(chosen) < budget and attempts < limit:
        attempts += 1
        u = rng.randrange(state.n)
        v = rng.randrange(state.n)
        if u == v:
            continue
        edge = pair(u, v)
        if edge in state.claims or edge in taken:
            continue
        chosen.append(edge)
        taken.add(edge)
    if len(chosen) < budget:
        remaining = _lowest_unclaimed(state, taken, state.unclaimed_count)
        fill = rng.sample(remaining, min(budget - len(chosen), len(remaining)))
        chosen.extend(sorted(fill))
    return chosen


def _spoiler_pairs(state: GameState, prefix: Sequence[int], budget: int,
                   taken: set[Edge], scanner: Optional[_PairScanner] = None) -> list[Edge]:
    deg = state.maker_degree
    scored: list[tuple[int, Edge]] = []
    for i, u in enumerate(prefix):
        for v in prefix[i + 1:]:
            edge = pair(u, v)
            if edge not in state.claims and edge not in taken:
                scored.append((-(deg[u] + deg[v]), edge))
    scored.sort()
    chosen = [edge for _, edge in scored[:budget]]
    if len(chosen) < budget:
        rest = taken | set(chosen)
        need = budget - len(chosen)
        if scanner is None:
            chosen.extend(_lowest_unclaimed(state, rest, need))
        else:
            chosen.extend(scanner.take(state, rest, need))
    return chosen


def greedy_spoiler(state: GameState, budget: int) -> list[Edge]:
    """Unclaimed pairs with the largest Maker-degree sums, ties lexicographic.

    Candidates come from the prefix of vertices ranked by (degree desc,
    index asc); the prefix size comfortably exceeds the budget, and the
    global lowest-index unclaimed pairs back-fill if the prefix is spent.
    """
    order = sorted(range(state.n), key=lambda v: (-state.maker_degree[v], v))
    return _spoiler_pairs(state, order[:_prefix_size(budget)], budget, set())


def clique_blocker(state: GameState, budget: int) -> list[Edge]:
    """Lowest-index unclaimed pairs inside the common Maker-neighborhood
    of the maximum Maker-degree vertices; greedy_spoiler as fallback."""
    deg = state.maker_degree
    top = max(deg)
    if top == 0:
        return greedy_spoiler(state, budget)
    cap = _prefix_size(budget)
    hubs = [v for v in range(state.n) if deg[v] == top][:cap]
    common: Optional[set[int]] = None
    for h in hubs:
        adj = set(state.maker_adjacency(h))
        common = adj if common is None else common & adj
    common = common or set()
    common -= set(hubs)
    chosen: list[Edge] = []
    members = sorted(common)
    for i, u in enumerate(members):
        if len(chosen) == budget:
            break
        for v in members[i + 1:]:
            if len(chosen) == budget:
                break
            if (u, v) not in state.claims:
                chosen.append((u, v))
    if len(chosen) < budget:
        taken = set(chosen)
        extra = greedy_spoiler_excluding(state, budget - len(chosen), taken)
        chosen.extend(extra)
    return chosen


def greedy_spoiler_excluding(state: GameState, budget: int,
                             taken: set[Edge]) -> list[Edge]:
    order = sorted(range(state.n), key=lambda v: (-state.maker_degree[v], v))
    return _spoiler_pairs(state, order[:_prefix_size(budget)], budget, taken)


# -- incremental adversaries -------------------------------------------------


class Adversary:
    """Base: pick ``budget`` unclaimed edges for Breaker's next move."""

    name = "adversary"

    def choose(self, state: GameState, budget: int) -> list[Edge]:
        raise NotImplementedError


class RandomBreaker(Adversary):
    name = "random"

    def __init__(self, seed: int = 0):
        self._rng = random.Random(seed)

    def choose(self, state: GameState, budget: int) -> list[Edge]:
        return random_breaker(state, budget, self._rng)


class _TopDegreeTracker:
    """Exact top-k vertices under (maker degree desc, index asc).

    Degrees only grow, so membership can only change when a touched
    vertex overtakes the current worst member; the tracker replays the
    transcript delta on each query to stay in sync with the state.
    """

    def __init__(self, state: GameState, k: int):
        self._k = min(k, state.n)
        self._members = set(range(self._k))
        self._synced = 0

    def sync(self, state: GameState) -> None:
        deg = state.maker_degree
        transcript = state.transcript
        while self._synced < len(transcript):
            record = transcript[self._synced]
            self._synced += 1
            if record.player is Player.MAKER:
                for claim in record.edges:
                    self._touch(claim.u, deg)
                    self._touch(claim.v, deg)

    def _touch(self, v: int, deg: Sequence[int]) -> None:
        if v in self._members:
            return
        worst = max(self._members, key=lambda x: (-deg[x], x))
        if (-deg[v], v) < (-deg[worst], worst):
            self._members.discard(worst)
            self._members.add(v)

    def prefix(self, state: GameState, size: int) -> list[int]:
        self.sync(state)
        deg = state.maker_degree
        return sorted(self._members, key=lambda v: (-deg[v], v))[:size]


class GreedySpoiler(Adversary):
    name = "greedy_spoiler"

    def __init__(self, seed: int = 0):
        self._seed = seed  # unused; kept so every adversary takes one
        self._tracker: Optional[_TopDegreeTracker] = None
        self._scanner = _PairScanner()

    def choose(self, state: GameState, budget: int) -> list[Edge]:
        if self._tracker is None:
            self._tracker = _TopDegreeTracker(state, _prefix_size(
                state.bias.breaker_edges))
        prefix = self._tracker.prefix(state, _prefix_size(budget))
        return _spoiler_pairs(state, prefix, budget, set(), self._scanner)


class CliqueBlocker(Adversary):
    """Snapshot-based blocker: iterates lowest-index pairs of the common
    Maker-neighborhood of the current hubs, rebuilding the snapshot when
    the hub set changes (rate limited) or the snapshot runs dry."""

    name = "clique_blocker"
    _REBUILD_EVERY = 32

    def __init__(self, seed: int = 0):
        self._seed = seed
        self._tracker: Optional[_TopDegreeTracker] = None
        self._spoiler = GreedySpoiler(seed)
        self._hubs: tuple[int, ...] = ()
        self._snapshot: list[int] = []
        self._i = 0
        self._j = 1
        self._calls = 0
        self._last_build = -10 ** 9

    def _hubset(self, state: GameState, budget: int) -> tuple[int, ...]:
        assert self._tracker is not None
        prefix = self._tracker.prefix(state, _prefix_size(budget))
        deg = state.maker_degree
        top = deg[prefix[0]] if prefix else 0
        if top == 0:
            return ()
        return tuple(v for v in prefix if deg[v] == top)

    def _rebuild(self, state: GameState, hubs: tuple[int, ...]) -> None:
        common: Optional[set[int]] = None
        for h in hubs:
            adj = set(state.maker_adjacency(h))
            common = adj if common is None else common & adj
        common = common or set()
        common -= set(hubs)
        self._snapshot = sorted(common)
        self._hubs = hubs
        self._i, self._j = 0, 1
        self._last_build = self._calls

    def _next_pairs(self, state: GameState, budget: int,
                    taken: set[Edge]) -> list[Edge]:
        out: list[Edge] = []
        snap = self._snapshot
        while len(out) < budget and self._i < len(snap) - 1:
            u, v = snap[self._i], snap[self._j]
            self._j += 1
            if self._j >= len(snap):
                self._i += 1
                self._j = self._i + 1
            edge = pair(u, v)
            if edge not in state.claims and edge not in taken:
                out.append(edge)
                taken.add(edge)
        return out

    def choose(self, state: GameState, budget: int) -> list[Edge]:
        self._calls += 1
        if self._tracker is None:
            self._tracker = _TopDegreeTracker(state, _prefix_size(
                state.bias.breaker_edges))
        hubs = self._hubset(state, budget)
        if not hubs:
            return self._spoiler.choose(state, budget)
        stale = hubs != self._hubs
        if stale and self._calls - self._last_build >= self._REBUILD_EVERY:
            self._rebuild(state, hubs)
        taken: set[Edge] = set()
        chosen = self._next_pairs(state, budget, taken)
        if len(chosen) < budget and self._calls - self._last_build >= 1:
            self._rebuild(state, hubs)
            chosen.extend(self._next_pairs(state, budget, taken))
        if len(chosen) < budget:
            extra = [e for e in self._spoiler.choose(state, budget)
                     if e not in taken]
            chosen.extend(extra[:budget - len(chosen)])
        return chosen[:budget]


class ScriptedBreaker(Adversary):
    """Replays a fixed list of per-move edge lists; used for regression
    probes. Raises on an illegal scripted edge; once the script ends it
    claims the lowest-index unclaimed pairs."""

    name = "scripted"

    def __init__(self, script: Sequence[Sequence[Edge]]):
        self._script = [list(m) for m in script]
        self._cursor = 0

    def choose(self, state: GameState, budget: int) -> list[Edge]:
        if self._cursor >= len(self._script):
            return _lowest_unclaimed(state, set(), budget)
        move = self._script[self._cursor]
        self._cursor += 1
        if len(move) != budget:
            raise BadScriptError(
                f"scripted move {self._cursor - 1} has {len(move)} edges, budget {budget}")
        seen: set[Edge] = set()
        for u, v in move:
            edge = pair(u, v)
            if edge in state.claims or edge in seen:
                raise BadScriptError(f"scripted edge {edge} is not claimable")
            seen.add(edge)
        return [pair(u, v) for u, v in move]


@dataclass
class AdversaryConfig:
    kind: str = "random"
    seed: int = 0
    script: Optional[list[list[Edge]]] = None

    def __post_init__(self):
        if self.kind == "scripted" and self.script is None:
            raise ConfigError("scripted adversary needs a script")


_KINDS = {
    "random": RandomBreaker,
    "greedy_spoiler": GreedySpoiler,
    "clique_blocker": CliqueBlocker,
}


def make_adversary(config: AdversaryConfig) -> Adversary:
    if config.kind == "scripted":
        return ScriptedBreaker(config.script or [])
    try:
        return _KINDS[config.kind](config.seed)
    except KeyError as exc:
        raise ConfigError(f"unknown adversary kind {config.kind!r}") from exc


def adversary_opponent(adversary: Adversary):
    """Bind an adversary into the opponent callable the strategies drive."""

    def opponent(state: GameState) -> list[EdgeClaim]:
        if state.board_exhausted:
            return []
        budget = state.move_budget(Player.BREAKER)
        oriented = state.variant is Variant.ORIENTED
        claims = [EdgeClaim(u, v, Player.BREAKER, (u, v) if oriented else None)
                  for u, v in adversary.choose(state, budget)]
        claim_edges(state, Player.BREAKER, claims, f"breaker:{adversary.name}")
        return claims

    return opponent
