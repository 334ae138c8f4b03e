"""Per-round certificates emitted by the strategies, and their checkers.

A certificate pins down everything a round claims to have achieved:
the anchor vertices it produced, the surviving view (active vertices
plus logical non-edges), numeric floors, degree caps, Breaker-freeness,
adjacency and orientation guarantees, and the transcript span of the
round. Verification never trusts the strategy: it re-derives every
claim from the board (or any replayed copy of it).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from ..engine import GameState, Player, pair
from ..errors import StrategyInvariantError


@dataclass(frozen=True)
class CheckResult:
    name: str
    ok: bool
    detail: str = ""


@dataclass
class RoundCertificate:
    """What one strategy round guarantees about the board it left behind."""

    kind: str                             # "biased" | "fast" | "tournament"
    anchors: list[int]                    # clique vertices, or the processed vertex
    survivors: list[int]                  # surviving view, flattened
    non_edges: list[tuple[int, int]]      # logical non-edges among survivors
    maker_moves: int
    move_start: int                       # transcript index of the round's first move
    move_end: int                         # transcript index one past the round's last move
    n: int                                # view size the floors were computed from
    d: int                                # promised complementary-degree bound at entry
    q: int
    min_survivors: int = 0
    max_comp_degree: int = 0
    breaker_free: bool = True
    survivor_sets: Optional[list[list[int]]] = None   # tournament candidate sets
    set_outward: Optional[list[bool]] = None          # per set: anchor -> survivor arcs?
    min_per_set: int = 0
    maker_moves_cap: Optional[int] = None
    entry_pruned: int = 0
    phase: str = ""

    def to_json_dict(self) -> dict:
        data = {
            "kind": self.kind,
            "anchors": list(self.anchors),
            "survivors": list(self.survivors),
            "non_edges": [list(e) for e in self.non_edges],
            "maker_moves": self.maker_moves,
            "move_start": self.move_start,
            "move_end": self.move_end,
            "n": self.n,
            "d": self.d,
            "q": self.q,
            "min_survivors": self.min_survivors,
            "max_comp_degree": self.max_comp_degree,
            "breaker_free": self.breaker_free,
            "min_per_set": self.min_per_set,
            "entry_pruned": self.entry_pruned,
            "phase": self.phase,
        }
        if self.survivor_sets is not None:
            data["survivor_sets"] = [list(s) for s in self.survivor_sets]
        if self.set_outward is not None:
            data["set_outward"] = list(self.set_outward)
        if self.maker_moves_cap is not None:
            data["maker_moves_cap"] = self.maker_moves_cap
        return data

    @classmethod
    def from_json_dict(cls, data: dict) -> "RoundCertificate":
        return cls(
            kind=data["kind"],
            anchors=list(data["anchors"]),
            survivors=list(data["survivors"]),
            non_edges=[tuple(e) for e in data["non_edges"]],
            maker_moves=data["maker_moves"],
            move_start=data["move_start"],
            move_end=data["move_end"],
            n=data["n"],
            d=data["d"],
            q=data["q"],
            min_survivors=data.get("min_survivors", 0),
            max_comp_degree=data.get("max_comp_degree", 0),
            breaker_free=data.get("breaker_free", True),
            survivor_sets=[list(s) for s in data["survivor_sets"]]
            if "survivor_sets" in data else None,
            set_outward=list(data["set_outward"]) if "set_outward" in data else None,
            min_per_set=data.get("min_per_set", 0),
            maker_moves_cap=data.get("maker_moves_cap"),
            entry_pruned=data.get("entry_pruned", 0),
            phase=data.get("phase", ""),
        )


def verify_certificate(state: GameState, cert: RoundCertificate) -> list[CheckResult]:
    """Re-derive every claim of ``cert`` against ``state``.

    ``state`` must reflect the board at the certificate's checkpoint,
    i.e. after transcript move ``move_end - 1`` (a replayed prefix is
    fine). Each guarantee is reported separately so a single inflated
    claim does not mask the others.
    """
    checks: list[CheckResult] = []
    survivors = set(cert.survivors)
    non_edge_set = {tuple(e) for e in cert.non_edges}

    ok = len(survivors) == len(cert.survivors) >= cert.min_survivors
    checks.append(CheckResult(
        "survivor-count", ok,
        f"{len(cert.survivors)} survivors, floor {cert.min_survivors}"))

    if cert.survivor_sets is not None:
        sizes = [len(s) for s in cert.survivor_sets]
        seen: set[int] = set()
        disjoint = True
        for s in cert.survivor_sets:
            for v in s:
                if v in seen:
                    disjoint = False
                seen.add(v)
        ok = disjoint and all(size >= cert.min_per_set for size in sizes)
        checks.append(CheckResult(
            "per-set-count", ok, f"set sizes {sizes}, floor {cert.min_per_set}"))

    bad_pairs = [e for e in non_edge_set
                 if e[0] not in survivors or e[1] not in survivors]
    checks.append(CheckResult(
        "view-consistency", not bad_pairs,
        f"{len(bad_pairs)} non-edges leave the survivor set"))

    comp: dict[int, int] = {v: 0 for v in survivors}
    for u, v in non_edge_set:
        if u in comp and v in comp:
            comp[u] += 1
            comp[v] += 1
    worst = max(comp.values(), default=0)
    checks.append(CheckResult(
        "comp-degree-cap", worst <= cert.max_comp_degree,
        f"max complementary degree {worst}, cap {cert.max_comp_degree}"))

    if cert.breaker_free:
        # Iterate the sparse claim map instead of all survivor pairs.
        offenders = [key for key, claim in state.claims.items()
                     if claim.owner is Player.BREAKER
                     and key[0] in survivors and key[1] in survivors
                     and key not in non_edge_set]
        checks.append(CheckResult(
            "breaker-free", not offenders,
            f"{len(offenders)} live Breaker edges among survivors"))

    missing = 0
    for a in cert.anchors:
        for w in cert.survivors:
            claim = state.claims.get(pair(a, w))
            if claim is None or claim.owner is not Player.MAKER:
                missing += 1
    for i, a in enumerate(cert.anchors):
        for b in cert.anchors[i + 1:]:
            claim = state.claims.get(pair(a, b))
            if claim is None or claim.owner is not Player.MAKER:
                missing += 1
    checks.append(CheckResult(
        "maker-adjacency", missing == 0,
        f"{missing} anchor edges missing from Maker's graph"))

    if cert.set_outward is not None and cert.survivor_sets is not None:
        v1 = cert.anchors[0]
        wrong = 0
        for outward, group in zip(cert.set_outward, cert.survivor_sets):
            for w in group:
                claim = state.claims.get(pair(v1, w))
                want = (v1, w) if outward else (w, v1)
                if claim is None or claim.owner is not Player.MAKER \
                        or claim.orientation != want:
                    wrong += 1
        checks.append(CheckResult(
            "orientation", wrong == 0, f"{wrong} survivor edges misdirected"))

    span = state.transcript[cert.move_start:cert.move_end]
    made = sum(1 for rec in span if rec.player is Player.MAKER)
    ok = made == cert.maker_moves
    if cert.maker_moves_cap is not None:
        ok = ok and made <= cert.maker_moves_cap
    checks.append(CheckResult(
        "maker-moves", ok,
        f"{made} maker moves in span, declared {cert.maker_moves},"
        f" cap {cert.maker_moves_cap}"))

    return checks


def require_certificate(state: GameState, cert: RoundCertificate) -> None:
    """Raise if any check fails; used as the strategies' live self-check."""
    failed = [c for c in verify_certificate(state, cert) if not c.ok]
    if failed:
        raise StrategyInvariantError(
            "; ".join(f"{c.name}: {c.detail}" for c in failed))


@dataclass(frozen=True)
class Constellation:
    """A Maker clique plus witnesses adjacent to all of it.

    Invariants: every clique-clique and clique-witness edge is
    Maker-owned, and no witness-witness pair is Breaker-owned.
    """

    clique: tuple[int, ...]
    witnesses: tuple[int, ...]

    def validate(self, state: GameState) -> None:
        members = self.clique + self.witnesses
        if len(set(members)) != len(members):
            raise StrategyInvariantError("constellation vertices overlap")
        for i, a in enumerate(self.clique):
            for b in members[i + 1:]:
                if b in self.witnesses and a in self.witnesses:
                    continue
                claim = state.claims.get(pair(a, b))
                if claim is None or claim.owner is not Player.MAKER:
                    raise StrategyInvariantError(
                        f"edge ({a},{b}) not Maker-owned in constellation")
        for i, a in enumerate(self.witnesses):
            for b in self.witnesses[i + 1:]:
                claim = state.claims.get(pair(a, b))
                if claim is not None and claim.owner is Player.BREAKER:
                    raise StrategyInvariantError(
                        f"witness pair ({a},{b}) is Breaker-owned")


@dataclass(frozen=True)
class CandidatePartition:
    """Disjoint candidate sets, each at least ``floor_size`` strong."""

    sets: tuple[tuple[int, ...], ...]
    floor_size: int

    def validate(self) -> None:
        seen: set[int] = set()
        for group in self.sets:
            if len(group) < self.floor_size:
                raise StrategyInvariantError(
                    f"candidate set of {len(group)} below floor {self.floor_size}")
            for v in group:
                if v in seen:
                    raise StrategyInvariantError(f"vertex {v} in two candidate sets")
                seen.add(v)
