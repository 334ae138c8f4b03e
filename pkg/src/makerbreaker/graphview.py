"""Active-vertex windows over a game state, with logical non-edges.

A :class:`GraphView` is the "current graph" a recursive strategy works
in: a set of active board vertices plus a set of pairs that have been
logically deleted (non-edges). The view caches, per active vertex, the
complementary degree (number of active non-neighbors) and the Breaker
degree over *live* pairs, where a pair is live when both endpoints are
active and it is not a non-edge.

The class invariant the strategies maintain at round boundaries is view
purity: every live pair is unclaimed on the board. During a round the
players claim edges inside the view; the pruning operations below are
exactly what restores purity before the view is handed to the next
level of a recursion.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from math import ceil
from typing import IO, Iterable, Optional

from .engine import GameState, Player, pair
from .errors import (
    InsufficientCliqueError,
    InvalidThresholdError,
    NotActiveError,
    StrategyInvariantError,
)


@dataclass(frozen=True)
class ViewStats:
    n: int
    d_max: int
    breaker_edges_inside: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("stats need a nonempty view")
        if self.d_max < 0 or self.breaker_edges_inside < 0:
            raise ValueError("negative view statistic")


class GraphView:
    """A window over ``base`` restricted to ``active`` vertices."""

    def __init__(self, base: GameState, active: Optional[Iterable[int]] = None,
                 non_edges: Iterable[tuple[int, int]] = ()):
        self.base = base
        self.active: set[int] = set(range(base.n)) if active is None else set(active)
        for v in self.active:
            if not 0 <= v < base.n:
                raise NotActiveError(f"vertex {v} outside board of size {base.n}")
        self._non_adj: dict[int, set[int]] = {}
        for u, v in non_edges:
            if u not in self.active or v not in self.active or u == v:
                raise NotActiveError(f"non-edge ({u},{v}) not within the active set")
            self._non_adj.setdefault(u, set()).add(v)
            self._non_adj.setdefault(v, set()).add(u)
        # Live Breaker adjacency, built from the sparse claim map.
        self._b_adj: dict[int, set[int]] = {}
        self._b_edges = 0
        for (u, v), claim in base.claims.items():
            if claim.owner is Player.BREAKER and self._is_live(u, v):
                self._b_adj.setdefault(u, set()).add(v)
                self._b_adj.setdefault(v, set()).add(u)
                self._b_edges += 1

    # -- bookkeeping -------------------------------------------------------

    def _is_live(self, u: int, v: int) -> bool:
        return (u in self.active and v in self.active
                and v not in self._non_adj.get(u, ()))

    @property
    def size(self) -> int:
        return len(self.active)

    @property
    def breaker_edges_inside(self) -> int:
        return self._b_edges

    def comp_degree(self, v: int) -> int:
        if v not in self.active:
            raise NotActiveError(f"vertex {v} is not active")
        return len(self._non_adj.get(v, ()))

    def breaker_degree(self, v: int) -> int:
        if v not in self.active:
            raise NotActiveError(f"vertex {v} is not active")
        return len(self._b_adj.get(v, ()))

    def non_neighbors(self, v: int) -> frozenset[int]:
        if v not in self.active:
            raise NotActiveError(f"vertex {v} is not active")
        return frozenset(self._non_adj.get(v, ()))

    def is_non_edge(self, u: int, v: int) -> bool:
        return v in self._non_adj.get(u, ())

    def stats(self) -> ViewStats:
        d_max = max((len(s) for v, s in self._non_adj.items() if v in self.active),
                    default=0)
        return ViewStats(self.size, d_max, self._b_edges)

    def max_comp_degree(self) -> int:
        return max((len(s) for v, s in self._non_adj.items() if v in self.active),
                   default=0)

    def observe_claim(self, u: int, v: int, owner: Player) -> None:
        """Record a fresh board claim; only live Breaker pairs matter here."""
        if owner is Player.BREAKER and self._is_live(u, v):
            self._b_adj.setdefault(u, set()).add(v)
            self._b_adj.setdefault(v, set()).add(u)
            self._b_edges += 1

    def add_non_edge(self, u: int, v: int) -> None:
        """Logically delete a live pair (no-op if already deleted)."""
        if u not in self.active or v not in self.active:
            raise NotActiveError(f"pair ({u},{v}) not within the active set")
        if v in self._non_adj.get(u, ()):
            return
        self._non_adj.setdefault(u, set()).add(v)
        self._non_adj.setdefault(v, set()).add(u)
        if v in self._b_adj.get(u, ()):
            self._b_adj[u].discard(v)
            self._b_adj[v].discard(u)
            self._b_edges -= 1

    def remove_vertex(self, v: int) -> None:
        if v not in self.active:
            raise NotActiveError(f"vertex {v} is not active")
        for u in self._non_adj.pop(v, set()):
            peers = self._non_adj[u]
            peers.discard(v)
            if not peers:
                del self._non_adj[u]
        for u in self._b_adj.pop(v, set()):
            peers = self._b_adj[u]
            peers.discard(v)
            if not peers:
                del self._b_adj[u]
            self._b_edges -= 1
        self.active.discard(v)

    def remove_vertices(self, vertices: Iterable[int]) -> None:
        for v in sorted(set(vertices)):
            self.remove_vertex(v)

    def restrict_to(self, keep: Iterable[int]) -> None:
        keep_set = set(keep)
        self.remove_vertices(v for v in self.active if v not in keep_set)

    # -- pruning -----------------------------------------------------------

    def prune_breaker_touched(self, protect: Iterable[int] = ()) -> int:
        """Delete every unprotected active vertex on a live Breaker pair.

        Each live Breaker edge has two active endpoints, so the deleted
        count is at most twice the number of live Breaker edges before
        the call. Breaker claims whose other endpoint is inactive, or
        that sit on a non-edge, never trigger a deletion.
        """
        shield = set(protect)
        victims = sorted(v for v, peers in self._b_adj.items()
                         if v in self.active and peers and v not in shield)
        for v in victims:
            self.remove_vertex(v)
        return len(victims)

    def prune_high_breaker_degree(self, threshold: int) -> int:
        """Iteratively delete active vertices of live Breaker degree >= threshold.

        Every actual deletion removes at least ``threshold`` live Breaker
        edges from the view, so the number of deletions is bounded by
        (live Breaker edges before the call) / threshold. Degrees only
        drop as vertices leave, so one pass with a recheck at pop time
        reaches a fixpoint.
        """
        if threshold < 1:
            raise InvalidThresholdError(f"threshold must be >= 1, got {threshold}")
        worklist = sorted(v for v, peers in self._b_adj.items()
                          if v in self.active and len(peers) >= threshold)
        deleted = 0
        for v in worklist:
            if v in self.active and len(self._b_adj.get(v, ())) >= threshold:
                self.remove_vertex(v)
                deleted += 1
        return deleted

    def drop_breaker_edges(self) -> "GraphView":
        """Turn every live Breaker pair into a non-edge."""
        pairs = sorted((min(u, v), max(u, v))
                       for u, peers in self._b_adj.items() for v in peers)
        for u, v in pairs:
            self.add_non_edge(u, v)
        if self._b_edges != 0:
            raise StrategyInvariantError("breaker edges remained after drop")
        return self

    # -- clique extraction ---------------------------------------------------

    def greedy_clique(self, target_size: Optional[int] = None) -> list[int]:
        """Greedy clique by ascending index, discarding non-neighbors.

        Each selected vertex consumes itself plus at most d_max
        non-neighbors, so the result has at least ceil(n / (d_max + 1))
        vertices. Deterministic: the lowest-index eligible vertex is
        taken every time.
        """
        if not self.active:
            raise NotActiveError("view is empty")
        d_max = self.max_comp_degree()
        clique: list[int] = []
        banned: set[int] = set()
        for v in sorted(self.active):
            if v in banned:
                continue
            clique.append(v)
            banned.update(self._non_adj.get(v, ()))
        floor = ceil(self.size / (d_max + 1))
        if len(clique) < floor:
            raise StrategyInvariantError(
                f"greedy clique of {len(clique)} beaten by bound {floor}")
        if target_size is not None and len(clique) < target_size:
            raise InsufficientCliqueError(len(clique), target_size)
        return clique

    # -- verification helpers -------------------------------------------------

    def assert_pure(self) -> None:
        """Check that no live pair of this view is claimed on the board."""
        for (u, v), claim in self.base.claims.items():
            if self._is_live(u, v):
                raise StrategyInvariantError(
                    f"live pair ({u},{v}) is claimed by {claim.owner.value}")

    def recount(self) -> tuple[dict[int, int], dict[int, int]]:
        """From-scratch complementary and Breaker degrees, for cache checks."""
        comp = {v: 0 for v in self.active}
        breaker = {v: 0 for v in self.active}
        for v in self.active:
            for u in self._non_adj.get(v, ()):
                if u in self.active:
                    comp[v] += 1
        for (u, v), claim in self.base.claims.items():
            if claim.owner is Player.BREAKER and self._is_live(u, v):
                breaker[u] += 1
                breaker[v] += 1
        return comp, breaker

    # -- serialization ---------------------------------------------------------

    def non_edge_list(self) -> list[tuple[int, int]]:
        return sorted((min(u, v), max(u, v)) for u, peers in self._non_adj.items()
                      for v in peers if u < v)

    def snapshot(self) -> tuple[frozenset[int], frozenset[tuple[int, int]]]:
        return frozenset(self.active), frozenset(self.non_edge_list())

    def to_json(self, fp: Optional[IO[str]] = None) -> str:
        data = {"active": sorted(self.active),
                "non_edges": [list(e) for e in self.non_edge_list()]}
        text = json.dumps(data, separators=(",", ":"))
        if fp is not None:
            fp.write(text)
        return text

    @classmethod
    def from_json(cls, base: GameState, text: str) -> "GraphView":
        data = json.loads(text)
        return cls(base, data["active"], [tuple(e) for e in data["non_edges"]])


def comp_degree(view: GraphView, v: int) -> int:
    return view.comp_degree(v)


def prune_breaker_touched(view: GraphView) -> int:
    return view.prune_breaker_touched()


def prune_high_breaker_degree(view: GraphView, threshold: int) -> int:
    return view.prune_high_breaker_degree(threshold)


def drop_breaker_edges(view: GraphView) -> GraphView:
    return view.drop_breaker_edges()


def greedy_clique(view: GraphView, target_size: Optional[int] = None) -> list[int]:
    return view.greedy_clique(target_size)
