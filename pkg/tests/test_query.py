import random
import string
from fractions import Fraction as F

import pytest

from spinnerlab.errors import DomainError, ParseError, QueryTypeError
from spinnerlab.query import (BraceLit, CoinLit, Complement, CompareExpr,
                              EvalResult, FullLit, IntervalLit, Prob, Query,
                              SetOp, St, TicketLit, Translate, evaluate,
                              evaluate_value, parse_query, render_query)


# -- parsing ----------------------------------------------------------------------

def test_parse_union_of_interval_and_point():
    q = parse_query("grid: P([0,1/4) u {1/3})")
    assert q.model == "grid"
    assert q.expr == Prob(SetOp("union",
                                IntervalLit(F(0), True, F(1, 4), False),
                                BraceLit(("1/3",))))


def test_parse_standard_part_query():
    q = parse_query("grid: st(P({1/3}))")
    assert q == Query("grid", St(Prob(BraceLit(("1/3",)))))


def test_parse_reports_position_and_expected():
    with pytest.raises(ParseError) as exc:
        parse_query("minimal: P([0,1/2]")
    assert "end of input" in str(exc.value)
    assert "')'" in str(exc.value)

    with pytest.raises(ParseError) as exc:
        parse_query("minimal: P [0,1/2])")
    assert exc.value.position == 11

    with pytest.raises(ParseError) as exc:
        parse_query("grid: P({1/3}) extra")
    assert "trailing input" in str(exc.value)


def test_parse_unknown_model():
    with pytest.raises(ParseError, match="unknown model 'uniform'"):
        parse_query("uniform: P(full)")


def test_parse_conditional_and_operators():
    q = parse_query("grid: P([0,1/4) | [0,1/2) ∪ {3/4})")
    assert q.expr.given is not None
    q2 = parse_query("grid: P([0,1/4) | [0,1/2) u {3/4})")
    assert q == q2
    q3 = parse_query("grid: P([0,1/2) ∩ (1/4,1))")
    q4 = parse_query("grid: P([0,1/2) n (1/4,1))")
    assert q3 == q4


def test_parse_coin_literals():
    assert parse_query("coinflip: P(allheads)").expr.event \
        == CoinLit(True, 0, ())
    assert parse_query("coinflip: P(allheads>3)").expr.event \
        == CoinLit(True, 3, ())
    assert parse_query("coinflip: P(pin(1:H,2:T))").expr.event \
        == CoinLit(False, 0, ((1, "H"), (2, "T")))
    assert parse_query("coinflip: P(allheads&pin(2:T))").expr.event \
        == CoinLit(True, 0, ((2, "T"),))


def test_parse_ticket_literals():
    assert parse_query("lottery: P(ticket)").expr.event == TicketLit(None)
    assert parse_query("lottery: P(tickets(1000))").expr.event \
        == TicketLit(1000)


def test_parse_nesting_guard():
    deep = "grid: P(" + "compl(" * 200 + "{0}" + ")" * 200 + ")"
    with pytest.raises(ParseError, match="nests too deeply"):
        parse_query(deep)


# -- render/parse round trip ----------------------------------------------------------

INTERVAL_ATOMS = [
    IntervalLit(F(0), True, F(1, 2), False),
    IntervalLit(F(1, 3), False, F(2, 3), True),
    BraceLit(("1/3",)),
    BraceLit(("0", "1/2", "3/4")),
    FullLit(),
]


def gen_interval_set(rng, depth):
    if depth == 0:
        return rng.choice(INTERVAL_ATOMS)
    kind = rng.randrange(4)
    if kind == 0:
        return Complement(gen_interval_set(rng, depth - 1))
    if kind == 1:
        return Translate(gen_interval_set(rng, depth - 1),
                         F(rng.randint(-8, 8), rng.randint(1, 8)))
    left = gen_interval_set(rng, depth - 1)
    right = gen_interval_set(rng, 0)
    return SetOp("union" if kind == 2 else "intersect", left, right)


def gen_cantor_set(rng, depth):
    atoms = [BraceLit(("0",)), BraceLit(("02", "20")), BraceLit(("222",)),
             FullLit()]
    if depth == 0:
        return rng.choice(atoms)
    kind = rng.randrange(3)
    if kind == 0:
        return Complement(gen_cantor_set(rng, depth - 1))
    return SetOp("union" if kind == 1 else "intersect",
                 gen_cantor_set(rng, depth - 1), rng.choice(atoms))


def gen_query(rng):
    model = rng.choice(("minimal", "grid", "cantor", "coinflip", "lottery"))
    depth = rng.randint(0, 5)
    if model in ("minimal", "grid"):
        event = gen_interval_set(rng, depth)
        given = gen_interval_set(rng, 0) if rng.random() < 0.3 else None
    elif model == "cantor":
        event = gen_cantor_set(rng, depth)
        given = gen_cantor_set(rng, 0) if rng.random() < 0.3 else None
    elif model == "coinflip":
        event = rng.choice([CoinLit(True, 0, ()), CoinLit(True, 2, ()),
                            CoinLit(False, 0, ((1, "H"),)),
                            CoinLit(True, 1, ((3, "H"),))])
        given = CoinLit(True, 1, ()) if rng.random() < 0.3 else None
    else:
        event = rng.choice([TicketLit(None), TicketLit(7)])
        given = None
    prob = Prob(event, given)
    wrap = rng.randrange(4)
    if wrap == 0:
        return Query(model, St(prob))
    if wrap == 1:
        return Query(model, CompareExpr(prob, Prob(event)))
    return Query(model, prob)


def test_render_parse_round_trip_to_depth_5():
    rng = random.Random(71)
    for _ in range(500):
        q = gen_query(rng)
        assert parse_query(render_query(q)) == q


# -- parser totality (fuzz) -------------------------------------------------------------

FUZZ_ALPHABET = string.ascii_letters + string.digits + "[](){}<>,:|&/^*-+. \t"


def test_parser_totality_on_fuzzed_input():
    rng = random.Random(72)
    for _ in range(400):
        text = "".join(rng.choice(FUZZ_ALPHABET)
                       for _ in range(rng.randint(0, 120)))
        try:
            parse_query(text)
        except ParseError:
            pass
    long_text = "".join(rng.choice(FUZZ_ALPHABET) for _ in range(10 ** 4))
    with pytest.raises(ParseError):
        parse_query(long_text)


def test_parser_totality_on_mutated_queries():
    rng = random.Random(73)
    base = 'grid: compare(P(translate(compl([0,1/4) u {1/3}),1/8)), P(full))'
    for _ in range(400):
        chars = list(base)
        for _ in range(rng.randint(1, 6)):
            pos = rng.randrange(len(chars))
            chars[pos] = rng.choice(FUZZ_ALPHABET)
        try:
            parse_query("".join(chars))
        except ParseError:
            pass


# -- evaluation -----------------------------------------------------------------------

def test_eval_grid_point():
    r = evaluate(parse_query("grid: P({1/3})"))
    assert r == EvalResult("eps", "0", "infinitesimal-positive")


def test_eval_minimal_point_contrast():
    r = evaluate(parse_query("minimal: P({1/3})"))
    assert r.value_text == "0"


def test_eval_standard_part_query():
    r = evaluate(parse_query("grid: st(P({1/3}))"))
    assert r.value_text == "0"


def test_eval_classify_query():
    r = evaluate(parse_query("grid: classify(P({0}))"))
    assert r.value_text == "infinitesimal-positive"
    r = evaluate(parse_query("minimal: classify(P([0,1/2)))"))
    assert r.value_text == "limited-noninfinitesimal-positive"


def test_eval_coinflip_compare():
    r = evaluate(parse_query(
        "coinflip: compare(P(allheads), P(allheads>1))"))
    assert r.value_text == "Less (ratio 1/2)"


def test_eval_conditionals():
    r = evaluate(parse_query("grid: P([0,1/4) | [0,1/2))"))
    assert r.value_text == "1/2"
    r = evaluate(parse_query("cantor: P({00} | {0})"))
    assert r.value_text == "1/2"
    r = evaluate(parse_query("coinflip: P(allheads | allheads>1)"))
    assert r.value_text == "1/2"
    r = evaluate(parse_query("grid: P([0,1/2) | {1/3})"))
    assert r.value_text == "1"


def test_eval_translate_and_complement():
    r = evaluate(parse_query("grid: P(translate([3/4,1),1/4))"))
    assert r.value_text == "1/4"
    r = evaluate(parse_query("cantor: P(compl({0}))"))
    assert r.value_text == "1/2"
    r = evaluate(parse_query("minimal: P(compl({1/3}))"))
    assert r.value_text == "1"


def test_eval_lottery():
    r = evaluate(parse_query("lottery: P(tickets(1000))"))
    assert r == EvalResult("1000*delta", "0", "infinitesimal-positive")


def test_eval_inconsistent_coin_event_is_zero():
    r = evaluate(parse_query("coinflip: P(allheads&pin(2:T))"))
    assert r.value_text == "0"
    assert r.classification == "infinitesimal-zero"


def test_eval_lottery_conditional_rejected():
    with pytest.raises(QueryTypeError, match="ticket blocks"):
        evaluate(parse_query("lottery: P(ticket | tickets(2))"))


def test_eval_type_mismatches():
    with pytest.raises(QueryTypeError, match="cylinder"):
        evaluate(parse_query("grid: P({02})"))
    with pytest.raises(QueryTypeError, match="cylinder address"):
        evaluate(parse_query("cantor: P({1/3})"))
    with pytest.raises(QueryTypeError, match="translate"):
        evaluate(parse_query("cantor: P(translate({0},1/3))"))
    with pytest.raises(QueryTypeError, match="union of coin events"):
        evaluate(parse_query("coinflip: P(allheads u pin(1:H))"))
    with pytest.raises(QueryTypeError, match="ticket"):
        evaluate(parse_query("lottery: P([0,1/2))"))
    with pytest.raises(QueryTypeError, match="coin events"):
        evaluate(parse_query("grid: P(allheads)"))


def test_eval_domain_errors():
    with pytest.raises(DomainError, match="null event"):
        evaluate(parse_query("minimal: P([0,1/2) | {1/3})"))
    with pytest.raises(DomainError, match="empty"):
        evaluate(parse_query("grid: P(full | {})"))


def test_eval_point_outside_range():
    with pytest.raises(QueryTypeError):
        evaluate(parse_query("grid: P({22})"))
    with pytest.raises(DomainError):
        evaluate(parse_query("grid: P({5/4})"))


def test_evaluate_value_for_compare_surface():
    v = evaluate_value(parse_query("grid: P({1/3})"))
    assert str(v) == "eps"
    with pytest.raises(QueryTypeError):
        evaluate_value(parse_query("grid: classify(P({0}))"))


def test_eval_is_deterministic():
    queries = ["grid: P([0,1/4) u {1/3})", "cantor: P({00} | {0})",
               "coinflip: compare(P(allheads), P(allheads>1))",
               "minimal: P(compl([1/4,3/4)))"]
    for text in queries:
        first = evaluate(parse_query(text))
        for _ in range(3):
            assert evaluate(parse_query(text)) == first
