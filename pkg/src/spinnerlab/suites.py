"""Registry and runner for the verification suites.

Ten suites run in a fixed registration order: the six spinner property
checks, the cylinder coherence sweep, the sigma-additivity probe of the
minimal model, the finite-grid stabilizer sweep, and the point-mass
overflow witnesses.  Each produces one JSON-ready dict in the schema
{suite, verdict, cases, counterexamples, witnesses, duration_ms}.
"""

from __future__ import annotations

import time
from fractions import Fraction

from . import cantor as cantor_mod
from . import lottery as lottery_mod
from .cantor import CantorEvent, CantorModel
from .intervals import IntervalSet, dyadic_tail_family, sigma_additivity_probe
from .report import PropertyReport
from .spinner import (FiniteGrid, GridModel, SuiteConfig,
                      finite_grid_stabilizer, run_property_suite)
from . import sampling

WITNESS_MASSES = (Fraction(1, 10), Fraction(1, 1000), Fraction(1, 10 ** 6))


def _rand_cantor_event(rng, max_cylinders: int, max_depth: int,
                       nonempty: bool) -> CantorEvent:
    count = rng.randint(1 if nonempty else 0, max_cylinders)
    addresses = []
    for _ in range(count):
        depth = rng.randint(1, max_depth)
        addresses.append("".join(rng.choice("02") for _ in range(depth)))
    return CantorEvent(addresses)


def cantor_coherence_suite(config: SuiteConfig) -> PropertyReport:
    """Exhaustive single-cylinder pairs at small depth plus sampled unions."""
    model = CantorModel()
    rng = config.rng("cantor-coherence")
    counterexamples: list[str] = []
    cases = 0
    singles = [""] + ["".join(addr) for d in range(1, 4)
                      for addr in _all_addresses(d)]
    for a in singles:
        for b in singles:
            cases += 1
            rep = cantor_mod.coherence_check(model, CantorEvent((a,)),
                                             CantorEvent((b,)))
            counterexamples.extend(rep.counterexamples)
    for _ in range(config.cases):
        cases += 1
        a = _rand_cantor_event(rng, 4, 6, nonempty=False)
        b = _rand_cantor_event(rng, 4, 6, nonempty=True)
        rep = cantor_mod.coherence_check(model, a, b)
        counterexamples.extend(rep.counterexamples)
    witnesses = ["conditional counting probability equals the measure ratio "
                 "on every checked pair"]
    if config.low_coverage():
        witnesses.append(f"warning: low-coverage sampling (cases={config.cases})")
    return PropertyReport.from_checks(
        "cantor-conditional-coherence", cases, counterexamples,
        witnesses if not counterexamples else [])


def _all_addresses(depth: int):
    if depth == 0:
        yield ()
        return
    for rest in _all_addresses(depth - 1):
        yield ("0",) + rest
        yield ("2",) + rest


def sigma_probe_suite(config: SuiteConfig) -> PropertyReport:
    return sigma_additivity_probe(dyadic_tail_family, 20, IntervalSet.full())


def stabilizer_suite(config: SuiteConfig) -> PropertyReport:
    rng = config.rng("stabilizer")
    counterexamples: list[str] = []
    cases = 0

    def check(grid: FiniteGrid, label: str, expect_order=None):
        nonlocal cases
        cases += 1
        try:
            res = finite_grid_stabilizer(grid)
        except AssertionError as exc:
            counterexamples.append(f"{label}: {exc}")
            return
        if expect_order is not None and res.order != expect_order:
            counterexamples.append(f"{label}: order {res.order}, "
                                   f"expected {expect_order}")
        if res.order > len(grid.points):
            counterexamples.append(f"{label}: order exceeds grid size")
        pts = set(grid.points)
        valid = (res.witness_point in pts
                 and (res.witness_point + res.witness_rotation) % 1
                 == res.witness_image and res.witness_image not in pts)
        if not valid:
            counterexamples.append(f"{label}: invalid off-grid witness")

    for n in range(1, config.max_grid_size + 1):
        check(FiniteGrid.uniform(n), f"uniform n={n}", expect_order=n)
    for i in range(max(10, config.cases // 4)):
        pts = sampling.rand_grid_points(rng, 12, 40)
        check(FiniteGrid(tuple(pts)), f"random grid #{i} {pts}")
    witnesses = ["every stabilizer was cyclic with a valid off-grid "
                 "rotation witness"]
    return PropertyReport.from_checks(
        "finite-grid-stabilizer", cases, counterexamples,
        witnesses if not counterexamples else [])


def witness_suite(config: SuiteConfig) -> PropertyReport:
    counterexamples: list[str] = []
    cases = 0
    for eps in WITNESS_MASSES:
        for mode in ("uniform_points", "rational_orbit"):
            cases += 1
            w = lottery_mod.archimedean_regularity_witness(eps, mode)
            if not (w.product > 1 and (w.n - 1) * eps <= 1):
                counterexamples.append(f"eps={eps} {mode}: bound failed "
                                       f"(n={w.n})")
            if mode == "rational_orbit" and len(set(w.points)) != w.n:
                counterexamples.append(f"eps={eps}: orbit points not distinct")
    witnesses = [f"n * eps exceeds total mass 1 with (n-1) * eps <= 1 "
                 f"for eps in {', '.join(str(e) for e in WITNESS_MASSES)}"]
    return PropertyReport.from_checks(
        "archimedean-overflow-witness", cases, counterexamples,
        witnesses if not counterexamples else [])


def run_all(config: SuiteConfig, corrupt: bool = False) -> list[dict]:
    """Run every registered suite; one dict per suite, registration order."""
    out: list[dict] = []

    def timed(fn, *args, **kwargs):
        start = time.perf_counter()
        report = fn(*args, **kwargs)
        elapsed = int((time.perf_counter() - start) * 1000)
        d = report.to_dict()
        d["duration_ms"] = elapsed
        out.append(d)

    start = time.perf_counter()
    spinner_reports = run_property_suite(GridModel(), config, corrupt=corrupt)
    spinner_ms = int((time.perf_counter() - start) * 1000)
    for rep in spinner_reports:
        d = rep.to_dict()
        d["duration_ms"] = spinner_ms // len(spinner_reports)
        out.append(d)
    timed(cantor_coherence_suite, config)
    timed(sigma_probe_suite, config)
    timed(stabilizer_suite, config)
    timed(witness_suite, config)
    return out


def all_passed(results: list[dict]) -> bool:
    return all(r["verdict"] != "fail" for r in results)


def run_suites(config_path: "str | None" = None,
               corrupt: bool = False) -> "tuple[int, list[dict]]":
    """Run every suite from a config file; returns (exit_code, reports).

    Exit code 0 iff no suite failed.  An unreadable path propagates OSError
    so callers can map it to their own exit status.
    """
    config = SuiteConfig() if config_path is None \
        else SuiteConfig.from_file(config_path)
    results = run_all(config, corrupt=corrupt)
    return (0 if all_passed(results) else 1), results
