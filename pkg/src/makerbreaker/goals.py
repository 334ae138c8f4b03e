"""Goal tournaments: complete antisymmetric orientations of K_q.

The text format (used by the CLI ``--goal`` flag) is: first line ``q``,
then a q-by-q character matrix over ``{0,1,-}`` with ``-`` on the
diagonal and entry (i,j) equal to ``1`` exactly when the arc points
from vertex i to vertex j. Antisymmetry is validated on parse.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

from .errors import ConfigError


@dataclass(frozen=True)
class GoalTournament:
    """A tournament on vertices 0..q-1, stored as a frozenset of arcs."""

    q: int
    arc_set: frozenset[tuple[int, int]]

    def __post_init__(self):
        if self.q < 1:
            raise ConfigError("tournament needs at least one vertex")
        expected = self.q * (self.q - 1) // 2
        if len(self.arc_set) != expected:
            raise ConfigError(f"expected {expected} arcs, got {len(self.arc_set)}")
        for i, j in self.arc_set:
            if not (0 <= i < self.q and 0 <= j < self.q) or i == j:
                raise ConfigError(f"bad arc ({i},{j})")
            if (j, i) in self.arc_set:
                raise ConfigError(f"both orientations present for pair ({i},{j})")

    def arc(self, i: int, j: int) -> bool:
        """True iff the arc between i and j points i -> j."""
        if (i, j) in self.arc_set:
            return True
        if (j, i) in self.arc_set:
            return False
        raise ConfigError(f"pair ({i},{j}) not in tournament")

    def arcs(self) -> Iterator[tuple[int, int]]:
        return iter(sorted(self.arc_set))

    def relabel(self, perm: Sequence[int]) -> "GoalTournament":
        """Apply a vertex permutation: new arc (perm[i], perm[j]) per old (i, j)."""
        return GoalTournament(self.q, frozenset((perm[i], perm[j]) for i, j in self.arc_set))

    def to_text(self) -> str:
        rows = []
        for i in range(self.q):
            row = []
            for j in range(self.q):
                if i == j:
                    row.append("-")
                else:
                    row.append("1" if (i, j) in self.arc_set else "0")
            rows.append("".join(row))
        return "\n".join([str(self.q)] + rows) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "GoalTournament":
        lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
        if not lines:
            raise ConfigError("empty tournament file")
        try:
            q = int(lines[0])
        except ValueError as exc:
            raise ConfigError(f"bad vertex count line: {lines[0]!r}") from exc
        if len(lines) != q + 1:
            raise ConfigError(f"expected {q} matrix rows, got {len(lines) - 1}")
        arcs = set()
        for i, row in enumerate(lines[1:]):
            if len(row) != q:
                raise ConfigError(f"row {i} has length {len(row)}, expected {q}")
            for j, ch in enumerate(row):
                if i == j:
                    if ch != "-":
                        raise ConfigError(f"diagonal entry ({i},{i}) must be '-'")
                elif ch == "1":
                    arcs.add((i, j))
                elif ch != "0":
                    raise ConfigError(f"bad entry {ch!r} at ({i},{j})")
        for i in range(q):
            for j in range(i + 1, q):
                if ((i, j) in arcs) == ((j, i) in arcs):
                    raise ConfigError(f"pair ({i},{j}) must have exactly one arc")
        return cls(q, frozenset(arcs))

    @classmethod
    def transitive(cls, q: int) -> "GoalTournament":
        """The linear order: every arc points from the lower index up."""
        return cls(q, frozenset((i, j) for i in range(q) for j in range(i + 1, q)))

    @classmethod
    def cyclic_triangle(cls) -> "GoalTournament":
        return cls(3, frozenset({(0, 1), (1, 2), (2, 0)}))
