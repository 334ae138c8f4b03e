"""Recursion bookkeeping: thresholds, survivor floors and feasibility.

Every feasibility predicate is evaluated in exact rational arithmetic
(:class:`fractions.Fraction`), so the controllers never rely on hidden
floating-point slack. The asymptotic target-size formulas are also
provided; they are negative at desk scale and are used for reporting
only, while the controllers gate on the exact predicates.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, floor, log2

from ..errors import IndivisibleGoalError, InvalidBoardError, SingularScheduleError


def base_clique_threshold(q: int, b: int) -> int:
    """Board size on which Maker can force a K_q against bias-b replies.

    Recursion: one vertex suffices for q = 1, and each further clique
    vertex multiplies the requirement by 5 b^2 (b+1)^2 (plus one for the
    processed vertex itself). Values grow geometrically.
    """
    if q < 1 or b < 1:
        raise InvalidBoardError(f"need q >= 1 and b >= 1, got q={q} b={b}")
    value = 1
    factor = 5 * b * b * (b + 1) * (b + 1)
    for _ in range(q - 1):
        value = factor * value + 1
    return value


def shrink_denominator(b: int, q: int) -> Fraction:
    """Exact per-round shrink ratio (b+1) + b(b+1)^2 / (q - b(b+1))."""
    if q <= b * (b + 1):
        raise SingularScheduleError(f"need q > b(b+1), got q={q} b={b}")
    return Fraction(b + 1) + Fraction(b * (b + 1) ** 2, q - b * (b + 1))


def lemma_constants(m: int, b: int) -> tuple[Fraction, Fraction]:
    """Constants (c1, c2) such that the round survivor count is n/ratio - (c1 d + c2)."""
    c = base_clique_threshold(m, b)
    c1 = Fraction(m, b + 1)
    c2 = Fraction(c + 2 * b * comb(c, 2), b + 1)
    return c1, c2


def biased_survivor_floor(n: int, d: int, m: int, b: int, q: int) -> int:
    """Floor of the guaranteed survivor count of one biased reduction round.

    Exact form: (n - C - m d - 2 b C(C,2)) / (b + 1) - b n / q, where C
    is the base-clique board size for an m-clique at bias b. Clamped to
    zero since a round may legally end with no survivors.
    """
    c = base_clique_threshold(m, b)
    value = (Fraction(n - c - m * d - 2 * b * comb(c, 2), b + 1)
             - Fraction(b * n, q))
    return max(0, floor(value))


def biased_shrink_identity_gap(n: int, d: int, m: int, b: int, q: int) -> Fraction:
    """Difference between the direct survivor expression and its ratio form.

    Zero for all arguments in the domain; kept as a unit-testable witness
    that the shrink ratio and the constants (c1, c2) were derived
    consistently with the direct formula.
    """
    c = base_clique_threshold(m, b)
    direct = (Fraction(n - c - m * d - 2 * b * comb(c, 2), b + 1)
              - Fraction(b * n, q))
    c1, c2 = lemma_constants(m, b)
    ratio_form = Fraction(n) / shrink_denominator(b, q) - (c1 * d + c2)
    return direct - ratio_form


def biased_feasible(n: int, m: int, b: int, q: int, i: int) -> tuple[bool, Fraction]:
    """Exact check that i biased rounds fit inside n vertices, with margin.

    Condition: n / ratio^i - i (c1 q^2 + c2) >= C (q^2 + 1). The margin
    is the left side minus the right side; feasible means margin >= 0.
    """
    if i < 0:
        raise InvalidBoardError(f"round count must be >= 0, got {i}")
    ratio = shrink_denominator(b, q)
    c1, c2 = lemma_constants(m, b)
    c = base_clique_threshold(m, b)
    margin = (Fraction(n) / ratio ** i - i * (c1 * q * q + c2)
              - c * (q * q + 1))
    return margin >= 0, margin


def max_feasible_q(n: int, m: int, b: int) -> int:
    """Largest feasible clique target on n vertices; 0 when none exists.

    Scans multiples of m with q > b(b+1). The ratio always exceeds b+1,
    so candidates beyond m * (log_{b+1} n + 1) cannot satisfy the
    condition and the scan stops there.
    """
    if n < 1:
        return 0
    cap = m * (int(log2(max(n, 2)) / log2(b + 1)) + 2)
    best = 0
    q = m
    while q <= cap:
        if q > b * (b + 1) and biased_feasible(n, m, b, q, q // m)[0]:
            best = q
        q += m
    return best


# -- fast (1:1) constellation schedule --------------------------------------

def fast_ratio(q: int) -> Fraction:
    """Per-round shrink 2 + 4/(q-2) of the half-and-prune recursion."""
    if q < 3:
        raise SingularScheduleError(f"need q >= 3, got {q}")
    return Fraction(2 * q, q - 2)


def fast_survivor_floor(n: int, d: int, q: int) -> int:
    """Floor of (n - 1 - d) / 2 - n / q, clamped to zero."""
    if q < 3:
        raise SingularScheduleError(f"need q >= 3, got {q}")
    return max(0, floor(Fraction(n - 1 - d, 2) - Fraction(n, q)))


def fast_feasible(n: int, q: int, r: int, i: int) -> bool:
    """Exact check n / (2 + 4/(q-2))^i - i q^2 >= r (q^2 + 1)."""
    if i < 0:
        raise InvalidBoardError(f"round count must be >= 0, got {i}")
    ratio = fast_ratio(q)
    return Fraction(n) / ratio ** i - i * q * q >= r * (q * q + 1)


# -- tournament schedule -----------------------------------------------------

def tournament_set_floor(n: int, d: int, r: int, q: int) -> int:
    """Floor of the per-candidate-set survivor count (n - d)/2 - r n / q^2."""
    if q < 3:
        raise SingularScheduleError(f"need q >= 3, got {q}")
    return max(0, floor(Fraction(n - d, 2) - Fraction(r * n, q * q)))


def tournament_feasible(n: int, q: int, i: int) -> bool:
    """Exact check n / (2 + 4/(q-2))^i - i q^3 >= 1."""
    if i < 0:
        raise InvalidBoardError(f"round count must be >= 0, got {i}")
    ratio = fast_ratio(q)
    return Fraction(n) / ratio ** i - i * q ** 3 >= 1


# -- reporting formulas (asymptotic; negative at small n) --------------------

def eq_q_biased(n: int, m: int, b: int) -> float:
    """Asymptotic clique target (m / log2(b+1)) (log2 n - 5 log2 log2 n)."""
    if n < 4:
        raise InvalidBoardError("need n >= 4 for log log")
    if m < 1 or b < 1:
        raise InvalidBoardError("need m, b >= 1")
    return (m / log2(b + 1)) * (log2(n) - 5 * log2(log2(n)))


def eq_q_tournament(n: int) -> float:
    """Asymptotic tournament target log2 n - 6 log2 log2 n."""
    if n < 4:
        raise InvalidBoardError("need n >= 4 for log log")
    return log2(n) - 6 * log2(log2(n))


def f_formula(n: int) -> float:
    """Exact (1:1) clique-game threshold 2 log2 n - 2 log2 log2 n + 2 log2 e - 3."""
    if n < 4:
        raise InvalidBoardError("need n >= 4 for log log")
    import math
    return 2 * log2(n) - 2 * log2(log2(n)) + 2 * log2(math.e) - 3


def g_formula(n: int, m: int, b: int) -> float:
    """Conjectured (m:b) threshold, with the o(1) term dropped.

    Both branches share the leading 2 log n / (log(m+b) - log m) term in
    base-c logarithms with c = (m+b)/m; the m > b branch adds the
    2 log c / log c0 correction with c0 = m/(m-b). The returned value is
    an approximation and is not floored.
    """
    if m < 1 or b < 1:
        raise InvalidBoardError("need m, b >= 1")
    import math
    c = (m + b) / m
    log_c = math.log2(c)

    def logc(x: float) -> float:
        return math.log2(x) / log_c

    inner = logc(n)
    if inner <= 1:
        raise InvalidBoardError("n too small for the double logarithm")
    value = (2 / (log2(m + b) - log2(m))) * log2(n)
    value += -2 * logc(inner) + 2 * logc(math.e) - 2 * logc(2) - 1
    if m > b:
        c0 = m / (m - b)
        value += 2 * log2(c) / log2(c0)
    return value


@dataclass(frozen=True)
class ScheduleParams:
    """All bookkeeping for one biased-controller run."""

    n: int
    m: int
    b: int
    q: int
    base_board: int
    c1: Fraction
    c2: Fraction
    shrink: Fraction

    @classmethod
    def for_biased(cls, n: int, m: int, b: int, q: int) -> "ScheduleParams":
        if q % m != 0:
            raise IndivisibleGoalError(f"clique target {q} not divisible by bias {m}")
        shrink = shrink_denominator(b, q)  # raises when q <= b(b+1)
        c1, c2 = lemma_constants(m, b)
        return cls(n, m, b, q, base_clique_threshold(m, b), c1, c2, shrink)

    @property
    def rounds(self) -> int:
        return self.q // self.m
