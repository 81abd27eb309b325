import random
from fractions import Fraction as F

import pytest

from spinnerlab.errors import DomainError
from spinnerlab.field import NonArchValue, Ordering
from spinnerlab.lottery import (COIN_GENERATOR, LOTTERY_GENERATOR, CoinEvent,
                                LotteryModel, archimedean_regularity_witness,
                                coinflip_probability,
                                lottery_ticket_probability, part_whole_check,
                                shift_compare)

H = NonArchValue.infinitesimal(COIN_GENERATOR)
DELTA = NonArchValue.infinitesimal(LOTTERY_GENERATOR)


# -- coin events -----------------------------------------------------------------

def test_allheads_probabilities():
    assert coinflip_probability(CoinEvent.allheads()) == H
    assert coinflip_probability(CoinEvent.allheads(1)) == 2 * H
    assert coinflip_probability(CoinEvent.allheads(5)) == 32 * H


def test_pinned_probabilities_are_generator_free():
    assert coinflip_probability(CoinEvent.make(pinned={1: "H", 2: "H"})) \
        == F(1, 4)
    assert coinflip_probability(CoinEvent.make(pinned={3: "T"})) == F(1, 2)
    assert coinflip_probability(CoinEvent.make()) == 1


def test_dropped_pins_are_ignored():
    e = CoinEvent.make(dropped_prefix=2, pinned={1: "T", 5: "H"})
    assert coinflip_probability(e) == F(1, 2)
    # a tails pin inside the dropped prefix does not contradict all-heads
    e = CoinEvent.make(dropped_prefix=2, pinned={1: "T"}, all_heads=True)
    assert e.consistent
    assert coinflip_probability(e) == 4 * H


def test_inconsistent_event_gives_flagged_zero():
    e = CoinEvent.make(pinned={2: "T"}, all_heads=True)
    assert not e.consistent
    assert coinflip_probability(e).is_zero()


def test_redundant_heads_pins_keep_allheads_value():
    e = CoinEvent.make(pinned={1: "H", 4: "H"}, all_heads=True)
    assert e.consistent
    assert coinflip_probability(e) == H


def test_event_intersection():
    both = CoinEvent.allheads(0).intersect(CoinEvent.allheads(1))
    assert coinflip_probability(both) == H
    mixed = CoinEvent.allheads(1).intersect(CoinEvent.make(pinned={1: "T"}))
    assert mixed.consistent
    assert coinflip_probability(mixed) == 2 * H
    clash = CoinEvent.make(pinned={1: "H"}).intersect(
        CoinEvent.make(pinned={1: "T"}))
    assert not clash.consistent
    assert coinflip_probability(clash).is_zero()


def test_event_validation():
    with pytest.raises(DomainError):
        CoinEvent.make(dropped_prefix=-1)
    with pytest.raises(DomainError):
        CoinEvent.make(pinned={0: "H"})
    with pytest.raises(DomainError):
        CoinEvent.make(pinned={1: "X"})


def test_regularity_over_coin_events():
    rng = random.Random(61)
    for _ in range(100):
        pins = {rng.randint(1, 9): rng.choice("HT") for _ in range(3)}
        p = coinflip_probability(CoinEvent.make(pinned=pins))
        assert p.classify().sign.value == "positive"
    for j in range(10):
        p = coinflip_probability(CoinEvent.allheads(j))
        assert p.classify().render() == "infinitesimal-positive"


# -- the shift comparison ----------------------------------------------------------

def test_shift_compare_drop_one():
    r = shift_compare(0, 1)
    assert r.ordering is Ordering.LESS
    assert r.ratio == F(1, 2)
    assert r.difference == -H


def test_shift_compare_examples():
    r = shift_compare(3, 3)
    assert r.ordering is Ordering.EQUAL and r.ratio == 1
    assert r.difference.is_zero()
    r = shift_compare(2, 0)
    assert r.ordering is Ordering.GREATER and r.ratio == 4
    assert r.difference == 3 * H
    with pytest.raises(DomainError):
        shift_compare(-1, 0)


def test_shift_monotonicity():
    probs = [coinflip_probability(CoinEvent.allheads(j)) for j in range(21)]
    for j in range(20):
        assert probs[j] < probs[j + 1]
        assert probs[j + 1] / probs[j] == 2


# -- part-whole -----------------------------------------------------------------------

def test_part_whole_pass_cases():
    for whole, part in ((0, 1), (2, 5), (0, 7)):
        rep = part_whole_check(whole, part)
        assert rep.verdict == "pass"
        assert f"K - {part} < whole size K - {whole}" in rep.witnesses[0]


def test_part_whole_rejects_non_proper_part():
    with pytest.raises(DomainError):
        part_whole_check(0, 0)
    with pytest.raises(DomainError):
        part_whole_check(3, 2)
    with pytest.raises(DomainError):
        part_whole_check(-1, 2)


# -- lottery ---------------------------------------------------------------------------

def test_ticket_probabilities():
    lm = LotteryModel()
    assert lottery_ticket_probability(lm, "single") == DELTA
    assert lottery_ticket_probability(lm, 1000) == 1000 * DELTA
    assert lottery_ticket_probability(lm, 1000).classify().render() \
        == "infinitesimal-positive"
    assert lottery_ticket_probability(lm, 1) \
        < lottery_ticket_probability(lm, 2)
    with pytest.raises(DomainError):
        lottery_ticket_probability(lm, 0)
    with pytest.raises(DomainError):
        lottery_ticket_probability(lm, "pair")


# -- overflow witnesses -------------------------------------------------------------------

def test_witness_examples():
    w = archimedean_regularity_witness(F(1, 10), "uniform_points")
    assert w.n == 11 and w.product == F(11, 10)
    w = archimedean_regularity_witness(F(1, 10 ** 6), "uniform_points")
    assert w.n == 10 ** 6 + 1
    w = archimedean_regularity_witness(F(1, 10), "rational_orbit")
    assert w.rotation == F(1, 13)
    assert len(w.points) == 11 and len(set(w.points)) == 11


def test_witness_bounds_randomized():
    rng = random.Random(62)
    for _ in range(200):
        eps = F(rng.randint(1, 50), rng.randint(1, 50))
        w = archimedean_regularity_witness(eps, "uniform_points")
        assert w.n * eps > 1
        assert (w.n - 1) * eps <= 1


def test_witness_orbit_distinctness():
    for eps in (F(1, 7), F(2, 9), F(1, 100)):
        w = archimedean_regularity_witness(eps, "rational_orbit")
        assert len(set(w.points)) == w.n
        assert all(0 <= p < 1 for p in w.points)
        assert w.points == tuple(k * w.rotation % 1 for k in range(w.n))


def test_witness_rejects_bad_input():
    with pytest.raises(DomainError):
        archimedean_regularity_witness(F(0), "uniform_points")
    with pytest.raises(DomainError):
        archimedean_regularity_witness(F(-1, 4), "uniform_points")
    with pytest.raises(DomainError):
        archimedean_regularity_witness(F(1, 4), "spiral")


def test_witness_json_shape():
    w = archimedean_regularity_witness(F(1, 10), "uniform_points")
    assert w.to_dict() == {"n": 11, "product": "11/10"}
    w = archimedean_regularity_witness(F(1, 3), "rational_orbit")
    d = w.to_dict()
    assert set(d) == {"n", "product", "points"}
    assert d["points"][1] == "1/5"
