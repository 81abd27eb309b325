"""The hyperfinite spinner: an equally spaced grid of N = m! points in [0,1)
with m unlimited, queried symbolically.

The grid is never materialized.  Because N is a factorial of an unlimited
number, every concrete rational denominator divides N, so every rational
endpoint lands exactly on a grid point and interval counts reduce to affine
forms a*N + b with rational a and integer b.  The counting probability of a
set is then (a*N + b)/N = a + b*eps with eps = 1/N, a positive infinitesimal.

Consequences, all checked by the property suite:

* every point gets probability eps > 0, so no possible outcome is null;
* the standard part of the probability equals the interval-set length;
* sets with equal counts get equal probability;
* translation by any rational is a bijection of the grid, so probability
  is invariant under rational rotations;
* on finite unions of half-open intervals the probability is exactly the
  length, with no corner corrections at all.

Full real-rotation invariance fails for any fixed grid.  Symbolically: the
rotation by 1/(N+1) never lands on a grid point, since k/N = 1/(N+1) has
no integer solution, so already this single rational-in-N rotation moves 0
off the grid; irrational rotations have no exact representative here at
all.  For concrete finite grids :func:`finite_grid_stabilizer` computes
the cyclic group of rational rotations preserving the grid by brute force
and exhibits an off-grid rotation witness of exactly that 1/(order+1)
shape.

Everything in this module is immutable and the operations are pure, so
values can be shared freely across threads.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError
from .field import Generator, NonArchValue, Poly
from .intervals import IntervalSet, lebesgue_length
from .report import PropertyReport
from . import sampling

SPINNER_GENERATOR = Generator("eps")


@dataclass(frozen=True)
class GridModel:
    """Symbolic spinner sample space {k/N : 0 <= k < N}, N = m!, m unlimited."""

    generator: Generator = SPINNER_GENERATOR


@dataclass(frozen=True)
class CountForm:
    """Number of grid points in a set, as the affine form linear*N + constant."""

    linear: Fraction
    constant: int

    def __add__(self, other: "CountForm") -> "CountForm":
        return CountForm(self.linear + other.linear,
                         self.constant + other.constant)

    def evaluate(self, n: int) -> Fraction:
        return self.linear * n + self.constant

    def render(self) -> str:
        if self.constant < 0:
            return f"{self.linear}*N - {-self.constant}"
        return f"{self.linear}*N + {self.constant}"

    __str__ = render


def grid_count(model: GridModel, a: IntervalSet) -> CountForm:
    """Exact point count of a set, using that every endpoint is on the grid.

    Per component: [a,b) and (a,b] hold (b-a)*N points, [a,b] one more,
    (a,b) one fewer, and a single point holds exactly one.
    """
    linear = Fraction(0)
    constant = 0
    for p in a.components:
        if p.is_point():
            constant += 1
            continue
        linear += p.right - p.left
        if p.left_in and p.right_in:
            constant += 1
        elif not p.left_in and not p.right_in:
            constant -= 1
    return CountForm(linear, constant)


def grid_probability(model: GridModel, a: IntervalSet) -> NonArchValue:
    """Counting probability count/N = linear + constant*eps."""
    c = grid_count(model, a)
    return NonArchValue(model.generator, Poly((c.linear, Fraction(c.constant))))


def conditional_probability(model: GridModel, a: IntervalSet,
                            b: IntervalSet) -> NonArchValue:
    """P(a | b) as an exact field element; b may be a single point."""
    if b.is_empty():
        raise DomainError("conditioning on the empty event")
    return grid_probability(model, a & b) / grid_probability(model, b)


# -- finite grids and their rotation stabilizers -------------------------------

@dataclass(frozen=True)
class FiniteGrid:
    """Concrete finite set of rational positions in [0,1)."""

    points: tuple[Fraction, ...]

    def __post_init__(self):
        if any(x < 0 or x >= 1 for x in self.points):
            raise DomainError("grid points must lie in [0,1)")
        if len(set(self.points)) != len(self.points):
            raise DomainError("grid points must be distinct")
        object.__setattr__(self, "points", tuple(sorted(self.points)))

    @classmethod
    def uniform(cls, n: int) -> "FiniteGrid":
        if n < 1:
            raise DomainError("uniform grid needs n >= 1")
        return cls(tuple(Fraction(k, n) for k in range(n)))


@dataclass(frozen=True)
class StabilizerResult:
    """Rotation stabilizer of a finite grid plus one off-grid witness."""

    order: int
    generator_rotation: Fraction
    witness_rotation: Fraction
    witness_point: Fraction
    witness_image: Fraction

    def to_dict(self) -> dict:
        return {
            "order": self.order,
            "generator_rotation": str(self.generator_rotation),
            "witness_rotation": str(self.witness_rotation),
            "witness_point": str(self.witness_point),
            "witness_image": str(self.witness_image),
        }


def finite_grid_stabilizer(g: FiniteGrid) -> StabilizerResult:
    """Brute-force the group of rotations mapping the grid onto itself.

    Any preserving rotation must send the least point somewhere in the grid,
    so testing the differences p - p0 is exhaustive.  The group is a finite
    subgroup of the rationals mod 1, hence cyclic of some order k generated
    by 1/k; this is verified, not assumed.  The rotation by 1/(k+1) cannot
    preserve the grid, which yields the off-grid witness.
    """
    if not g.points:
        raise DomainError("stabilizer of an empty grid is undefined")
    pts = set(g.points)
    p0 = g.points[0]
    stabilizer = sorted(t for t in {(p - p0) % 1 for p in g.points}
                        if {(p + t) % 1 for p in pts} == pts)
    k = len(stabilizer)
    if set(stabilizer) != {Fraction(j, k) for j in range(k)}:
        raise AssertionError(f"stabilizer {stabilizer} is not the cyclic "
                             f"group of order {k}")
    rotation = Fraction(1, k) if k > 1 else Fraction(0)
    witness_rotation = Fraction(1, k + 1)
    for x in g.points:
        image = (x + witness_rotation) % 1
        if image not in pts:
            return StabilizerResult(k, rotation, witness_rotation, x, image)
    raise AssertionError("rotation by 1/(order+1) unexpectedly preserved "
                         "the grid")


# -- the property suite ---------------------------------------------------------

@dataclass
class SuiteConfig:
    """Sampling configuration shared by all randomized suites.

    File format: one "key = value" per line, '#' comments allowed.  Keys:
    seed, cases, max_denominator, max_grid_size.
    """

    seed: int = 0
    cases: int = 200
    max_denominator: int = 50
    max_grid_size: int = 24

    @classmethod
    def from_file(cls, path: str) -> "SuiteConfig":
        cfg = cls()
        with open(path, "r", encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, 1):
                line = line.split("#", 1)[0].strip()
                if not line:
                    continue
                if "=" not in line:
                    raise DomainError(f"{path}:{lineno}: expected 'key = value'")
                key, _, value = line.partition("=")
                key = key.strip()
                if key not in ("seed", "cases", "max_denominator",
                               "max_grid_size"):
                    raise DomainError(f"{path}:{lineno}: unknown key {key!r}")
                try:
                    setattr(cfg, key, int(value.strip()))
                except ValueError:
                    raise DomainError(
                        f"{path}:{lineno}: {key} needs an integer") from None
        return cfg

    def low_coverage(self) -> bool:
        return self.max_denominator < 2 or self.cases < 10

    def rng(self, label: str) -> random.Random:
        return random.Random(f"{self.seed}:{label}")


def _report(name: str, cases: int, counterexamples: list[str],
            witnesses: list[str], config: SuiteConfig) -> PropertyReport:
    if config.low_coverage():
        witnesses = witnesses + [
            f"warning: low-coverage sampling "
            f"(cases={config.cases}, max_denominator={config.max_denominator})"]
    return PropertyReport.from_checks(name, cases, counterexamples, witnesses)


def _check_regularity(model, config) -> PropertyReport:
    rng = config.rng("regularity")
    eps = NonArchValue.infinitesimal(model.generator)
    bad = []
    for _ in range(config.cases):
        x = sampling.rand_point(rng, config.max_denominator)
        p = grid_probability(model, IntervalSet.point(x))
        cls = p.classify()
        if p != eps or cls.render() != "infinitesimal-positive":
            bad.append(f"x={x}: P={p} classified {cls.render()}")
    return _report("spinner-regularity", config.cases, bad,
                   ["every sampled point outcome has probability eps > 0"],
                   config)


def _check_totality(model, config) -> PropertyReport:
    rng = config.rng("totality")
    zero = NonArchValue.constant(model.generator, 0)
    one = NonArchValue.constant(model.generator, 1)
    bad = []
    for _ in range(config.cases):
        a = sampling.rand_interval_set(rng, 5, config.max_denominator)
        p = grid_probability(model, a)
        if not (zero <= p <= one):
            bad.append(f"A={a.render()}: P={p} outside [0,1]")
    return _report("spinner-totality", config.cases, bad,
                   ["every sampled set is assigned a probability in [0,1]"],
                   config)


def _check_count_uniformity(model, config) -> PropertyReport:
    rng = config.rng("count-uniformity")
    bad = []
    for _ in range(config.cases):
        a = sampling.rand_interval_set(rng, 4, config.max_denominator)
        q = sampling.rand_fraction(rng, config.max_denominator)
        b = a.translate_mod1(q)
        ca, cb = grid_count(model, a), grid_count(model, b)
        if ca != cb:
            bad.append(f"A={a.render()}, q={q}: counts {ca} vs {cb}")
        elif grid_probability(model, a) != grid_probability(model, b):
            bad.append(f"A={a.render()}, q={q}: equal counts {ca} but "
                       f"unequal probabilities")
        # flag-trade pair with identical counts: [a,b] vs [a,b) u {x}
        left = sampling.rand_fraction(rng, config.max_denominator)
        right = sampling.rand_fraction(rng, config.max_denominator)
        if left > right:
            left, right = right, left
        if left == right:
            continue
        closed = IntervalSet.interval(left, True, right, True)
        outside = closed.complement()
        if outside.is_empty():
            continue
        x = outside.components[0].left
        if not outside.contains(x):
            continue
        traded = IntervalSet.interval(left, True, right, False) \
            | IntervalSet.point(x)
        cc, ct = grid_count(model, closed), grid_count(model, traded)
        if cc != ct:
            bad.append(f"[{left},{right}] vs traded: counts {cc} vs {ct}")
        elif grid_probability(model, closed) != grid_probability(model, traded):
            bad.append(f"[{left},{right}] vs traded: equal counts, "
                       f"unequal probabilities")
    return _report("spinner-count-uniformity", config.cases, bad,
                   ["equal point counts always produced equal probabilities"],
                   config)


def _check_length_agreement(model, config, corrupt: bool = False) -> PropertyReport:
    rng = config.rng("length-agreement")
    bad = []
    for i in range(config.cases):
        a = sampling.rand_interval_set(rng, 5, config.max_denominator)
        expected = lebesgue_length(a)
        if corrupt:
            # test hook: deliberately skew the reference measure
            expected += Fraction(1, 997)
        st = grid_probability(model, a).standard_part()
        if st != expected:
            bad.append(f"A={a.render()}: st(P)={st}, length={expected}")
    return _report("spinner-length-agreement", config.cases, bad,
                   ["standard part of grid probability equals set length"],
                   config)


def _check_rational_rotation(model, config) -> PropertyReport:
    rng = config.rng("rational-rotation")
    bad = []
    for _ in range(config.cases):
        a = sampling.rand_interval_set(rng, 5, config.max_denominator)
        q = sampling.rand_fraction(rng, config.max_denominator)
        if grid_probability(model, a.translate_mod1(q)) \
                != grid_probability(model, a):
            bad.append(f"A={a.render()}, q={q}")
    return _report("spinner-rational-rotation-invariance", config.cases, bad,
                   ["probability is invariant under every sampled rational "
                    "rotation"], config)


def _check_half_open_uniformity(model, config) -> PropertyReport:
    # applies only to sets built from [a,b) pieces: no isolated points, no
    # nonempty null sets, every member has positive length
    rng = config.rng("half-open-uniformity")
    bad = []
    for _ in range(config.cases):
        a = sampling.rand_half_open_set(rng, 4, config.max_denominator)
        b = sampling.repack_half_open(rng, a.length, 4)
        if not (a.half_open_only() and b.half_open_only()):
            bad.append(f"sampler produced a non-half-open set: {a.render()}")
            continue
        pa, pb = grid_probability(model, a), grid_probability(model, b)
        la = NonArchValue.constant(model.generator, a.length)
        if not (pa == pb == la):
            bad.append(f"A={a.render()}, B={b.render()}: "
                       f"P(A)={pa}, P(B)={pb}, length={a.length}")
    return _report("spinner-half-open-uniformity", config.cases, bad,
                   ["equal-length half-open sets share the exact "
                    "generator-free probability"], config)


def run_property_suite(model: GridModel, config: SuiteConfig,
                       corrupt: bool = False) -> list[PropertyReport]:
    """Run the six spinner checks; one report per property, fixed order.

    ``corrupt`` is a test hook that skews the reference measure inside the
    length-agreement check so failure reporting can be exercised end to end.
    """
    return [
        _check_regularity(model, config),
        _check_totality(model, config),
        _check_count_uniformity(model, config),
        _check_length_agreement(model, config, corrupt=corrupt),
        _check_rational_rotation(model, config),
        _check_half_open_uniformity(model, config),
    ]
