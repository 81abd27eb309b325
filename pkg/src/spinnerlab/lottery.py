"""Coin-flip and fair-lottery events over an unlimited number of trials.

The all-heads event over K fair tosses, K unlimited, has probability
h = (1/2)^K: positive but below every positive rational.  (The
real-valued sigma-additive product measure on infinite toss sequences,
which would assign this event exactly 0, is the comparison point only;
it is not built here.)  Dropping the first j tosses multiplies the
probability by 2^j, so "all heads" is strictly less probable than "all
heads after the first" with ratio exactly one half, and the index set
left after dropping j tosses is a proper part of strictly smaller
internal size K - j.

A fair lottery over a finite set containing every standard ticket gives
each ticket probability delta = 1/|F| > 0, so blocks of tickets are never
null.  Against this, :func:`archimedean_regularity_witness` shows why no
real-valued uniform chance can do the same: any common point mass
eps overruns total mass 1 after floor(1/eps) + 1 points, and rational
rotations of a single point already supply that many distinct outcomes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .errors import DomainError
from .field import Generator, NonArchValue, Ordering, Poly
from .report import PropertyReport

COIN_GENERATOR = Generator("h")
LOTTERY_GENERATOR = Generator("delta")

_OUTCOMES = ("H", "T")


@dataclass(frozen=True)
class CoinEvent:
    """Constraint on an unlimited sequence of fair coin tosses.

    ``dropped_prefix`` removes that many tosses from the front;
    ``pinned`` fixes outcomes at standard positions; with ``all_heads``
    every remaining unpinned toss must come up heads.  ``contradictory``
    marks an intersection whose pins disagreed outright.
    """

    dropped_prefix: int = 0
    pinned: tuple[tuple[int, str], ...] = ()
    all_heads: bool = False
    contradictory: bool = False

    @classmethod
    def make(cls, dropped_prefix: int = 0,
             pinned: "Mapping[int, str] | None" = None,
             all_heads: bool = False) -> "CoinEvent":
        if dropped_prefix < 0:
            raise DomainError("dropped prefix must be nonnegative")
        pins = []
        for pos, outcome in sorted((pinned or {}).items()):
            if not isinstance(pos, int) or pos < 1:
                raise DomainError(f"pinned position {pos!r} must be a "
                                  "positive integer")
            if outcome not in _OUTCOMES:
                raise DomainError(f"pinned outcome {outcome!r} must be H or T")
            pins.append((pos, outcome))
        return cls(dropped_prefix, tuple(pins), all_heads)

    @classmethod
    def allheads(cls, dropped_prefix: int = 0) -> "CoinEvent":
        return cls.make(dropped_prefix=dropped_prefix, all_heads=True)

    def active_pins(self) -> tuple[tuple[int, str], ...]:
        """Pins at positions that survive the dropped prefix."""
        return tuple((p, o) for p, o in self.pinned if p > self.dropped_prefix)

    @property
    def consistent(self) -> bool:
        """False for an empty event: contradictory pins, or tails pinned
        on a toss an all-heads constraint forces to heads."""
        if self.contradictory:
            return False
        if not self.all_heads:
            return True
        return all(o == "H" for _, o in self.active_pins())

    def intersect(self, other: "CoinEvent") -> "CoinEvent":
        """Conjunction of the two constraints.

        Two all-heads events conjoin to the stricter (smaller) drop;
        disagreeing pins mark the result contradictory, which the
        probability maps to zero.
        """
        pins = dict(self.pinned)
        contradictory = self.contradictory or other.contradictory
        for pos, o in other.pinned:
            if pins.get(pos, o) != o:
                contradictory = True
            else:
                pins[pos] = o
        all_heads = self.all_heads or other.all_heads
        drops = [e.dropped_prefix for e in (self, other) if e.all_heads]
        dropped = min(drops) if drops else 0
        return CoinEvent(dropped, tuple(sorted(pins.items())), all_heads,
                         contradictory)

    def render(self) -> str:
        parts = []
        if self.all_heads:
            parts.append(f"allheads>{self.dropped_prefix}"
                         if self.dropped_prefix else "allheads")
        if self.pinned:
            pins = ",".join(f"{p}:{o}" for p, o in self.pinned)
            parts.append(f"pin({pins})")
        return "&".join(parts) if parts else "pin()"

    __str__ = render


def coinflip_probability(e: CoinEvent) -> NonArchValue:
    """Probability of a coin event in the field over h = (1/2)^K.

    All-heads with j dropped tosses gives 2^j * h; a bare pinned pattern
    with c surviving constraints gives the plain rational 2^-c.  An
    inconsistent event yields the zero value (check ``e.consistent``)
    rather than an error.
    """
    if not e.consistent:
        return NonArchValue.constant(COIN_GENERATOR, 0)
    if e.all_heads:
        return NonArchValue(COIN_GENERATOR,
                            Poly.monomial(1, 2 ** e.dropped_prefix))
    return NonArchValue.constant(
        COIN_GENERATOR, Fraction(1, 2 ** len(e.active_pins())))


@dataclass(frozen=True)
class ShiftComparison:
    ordering: Ordering
    ratio: NonArchValue
    difference: NonArchValue


def shift_compare(j1: int, j2: int) -> ShiftComparison:
    """Compare all-heads events with j1 versus j2 dropped tosses."""
    if j1 < 0 or j2 < 0:
        raise DomainError("drop counts must be nonnegative")
    p1 = coinflip_probability(CoinEvent.allheads(j1))
    p2 = coinflip_probability(CoinEvent.allheads(j2))
    return ShiftComparison(p1.compare(p2), p1 / p2, p1 - p2)


def part_whole_check(whole_drop: int, part_drop: int) -> PropertyReport:
    """Certify that dropping more tosses leaves a strictly smaller index set.

    Remaining index-set sizes are the affine forms K - j; with equal K
    coefficients the comparison is decided by the constants alone.
    """
    if whole_drop < 0:
        raise DomainError("drop counts must be nonnegative")
    if part_drop <= whole_drop:
        raise DomainError("the part must drop strictly more than the whole")
    whole_form = (1, -whole_drop)
    part_form = (1, -part_drop)
    strictly_smaller = (part_form[0] == whole_form[0]
                        and part_form[1] < whole_form[1])
    counterexamples = [] if strictly_smaller else [
        f"K-{part_drop} not below K-{whole_drop}"]
    return PropertyReport.from_checks(
        "part-whole", cases=1, counterexamples=counterexamples,
        witnesses=[f"part size K - {part_drop} < whole size K - {whole_drop}: "
                   "equal K coefficient, strictly smaller constant"]
        if strictly_smaller else [])


@dataclass(frozen=True)
class LotteryModel:
    """Fair lottery over a finite set F holding every standard ticket."""

    generator: Generator = LOTTERY_GENERATOR


def lottery_ticket_probability(model: LotteryModel,
                               ticket_count) -> NonArchValue:
    """delta for a single ticket, n*delta for a block of n tickets."""
    if ticket_count == "single":
        n = 1
    elif isinstance(ticket_count, int) and ticket_count >= 1:
        n = ticket_count
    else:
        raise DomainError(f"ticket count must be 'single' or a positive "
                          f"integer, got {ticket_count!r}")
    return n * NonArchValue.infinitesimal(model.generator)


def _next_prime(n: int) -> int:
    candidate = max(2, n + 1)
    while True:
        for d in range(2, math.isqrt(candidate) + 1):
            if candidate % d == 0:
                break
        else:
            return candidate
        candidate += 1


@dataclass(frozen=True)
class RegularityWitness:
    """Evidence that a common real point mass eps overruns total mass 1."""

    eps: Fraction
    n: int
    product: Fraction
    mode: str
    rotation: "Fraction | None" = None
    points: "tuple[Fraction, ...] | None" = None

    def to_dict(self) -> dict:
        out = {"n": self.n, "product": str(self.product)}
        if self.points is not None:
            out["points"] = [str(p) for p in self.points]
        return out


def archimedean_regularity_witness(eps_r, mode: str = "uniform_points"
                                   ) -> RegularityWitness:
    """Smallest n with n*eps_r > 1, plus an orbit of n distinct points.

    uniform_points: n = floor(1/eps_r) + 1 many equal point masses already
    exceed total mass 1.  rational_orbit: additionally realizes the n
    points as rotations of a single point by multiples of 1/p, p the
    smallest prime above n, so a rotation-invariant regular assignment
    overruns mass 1 on an explicit orbit.
    """
    eps = Fraction(eps_r)
    if eps <= 0:
        raise DomainError("the claimed point mass must be positive")
    if mode not in ("uniform_points", "rational_orbit"):
        raise DomainError(f"unknown witness mode {mode!r}")
    n = int(Fraction(1) / eps) + 1
    product = n * eps
    if not (product > 1 and (n - 1) * eps <= 1):
        raise AssertionError("witness bound failed")
    if mode == "uniform_points":
        return RegularityWitness(eps, n, product, mode)
    p = _next_prime(n)
    rotation = Fraction(1, p)
    points = tuple(Fraction(k, p) for k in range(n))
    if len({pt.numerator for pt in points}) != n:
        raise AssertionError("orbit points are not pairwise distinct")
    return RegularityWitness(eps, n, product, mode, rotation, points)
