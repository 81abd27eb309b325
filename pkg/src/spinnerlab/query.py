"""Event/probability query language over the five models.

Grammar (ASCII aliases next to the set symbols):

    query    := model ":" expr
    model    := "minimal" | "grid" | "cantor" | "coinflip" | "lottery"
    expr     := "st" "(" prob ")" | "classify" "(" prob ")"
              | "compare" "(" prob "," prob ")" | prob
    prob     := "P" "(" set [ "|" set ] ")"
    set      := atom { ("u" | "∪" | "n" | "∩") atom }
    atom     := interval | braces | "full"
              | "compl" "(" set ")" | "translate" "(" set "," rational ")"
              | coin | ticket
    interval := ("[" | "(") rational "," rational (")" | "]")
    braces   := "{" [ item { "," item } ] "}"
    coin     := "allheads" [">" nat] ["&" pin] | pin
    pin      := "pin" "(" [ nat ":" ("H"|"T") { "," ... } ] ")"
    ticket   := "ticket" | "tickets" "(" nat ")"
    rational := ["-"] nat ["/" nat]

A brace item is resolved against the selected model: a rational point for
the interval models, a {0,2}-address for the cantor model.  Parse errors
carry the offending position and the expected tokens; vocabulary
mismatches (a cylinder set under the grid model, set union of coin
events, ...) raise :class:`QueryTypeError` during evaluation.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from . import cantor as cantor_mod
from . import lottery as lottery_mod
from . import spinner as spinner_mod
from .cantor import CantorEvent, CantorModel
from .errors import DomainError, ParseError, QueryTypeError
from .field import Classification, Kind, NonArchValue, Ordering, Sign
from .intervals import IntervalSet, lebesgue_length
from .lottery import CoinEvent, LotteryModel, coinflip_probability
from .spinner import GridModel

MODELS = ("minimal", "grid", "cantor", "coinflip", "lottery")

_MAX_NESTING = 64


# -- abstract syntax ------------------------------------------------------------

@dataclass(frozen=True)
class IntervalLit:
    left: Fraction
    left_in: bool
    right: Fraction
    right_in: bool


@dataclass(frozen=True)
class BraceLit:
    items: tuple[str, ...]


@dataclass(frozen=True)
class FullLit:
    pass


@dataclass(frozen=True)
class SetOp:
    op: str  # "union" | "intersect"
    left: "SetNode"
    right: "SetNode"


@dataclass(frozen=True)
class Complement:
    arg: "SetNode"


@dataclass(frozen=True)
class Translate:
    arg: "SetNode"
    offset: Fraction


@dataclass(frozen=True)
class CoinLit:
    all_heads: bool
    dropped: int
    pins: tuple[tuple[int, str], ...]


@dataclass(frozen=True)
class TicketLit:
    count: "int | None"  # None means a single ticket


SetNode = Union[IntervalLit, BraceLit, FullLit, SetOp, Complement, Translate,
                CoinLit, TicketLit]


@dataclass(frozen=True)
class Prob:
    event: SetNode
    given: "SetNode | None" = None


@dataclass(frozen=True)
class St:
    prob: Prob


@dataclass(frozen=True)
class ClassifyExpr:
    prob: Prob


@dataclass(frozen=True)
class CompareExpr:
    left: Prob
    right: Prob


@dataclass(frozen=True)
class Query:
    model: str
    expr: Union[Prob, St, ClassifyExpr, CompareExpr]


# -- tokenizer ------------------------------------------------------------------

_TOKEN = re.compile(r"[ \t\r\n]*(?:(?P<num>\d+)|(?P<name>[A-Za-z_]\w*)"
                    r"|(?P<op>[\[\](){},:|&>/∪∩-]))")

_UNICODE_OPS = {"∪": "u", "∩": "n"}


def _tokenize(text: str):
    tokens = []
    pos = 0
    n = len(text)
    while pos < n:
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            if not text[pos:].strip():
                break
            bad = text[pos:].lstrip()[0]
            where = text.index(bad, pos)
            raise ParseError(f"syntax error at position {where}: "
                             f"unexpected character {bad!r}", position=where)
        if m.group("num") is not None:
            tokens.append(("num", m.group("num"), m.start("num")))
        elif m.group("name") is not None:
            name = m.group("name")
            if name in ("u", "n"):
                tokens.append(("op", name, m.start("name")))
            else:
                tokens.append(("name", name, m.start("name")))
        else:
            op = _UNICODE_OPS.get(m.group("op"), m.group("op"))
            tokens.append(("op", op, m.start("op")))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0
        self.depth = 0

    # token helpers

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def advance(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def fail(self, expected: str):
        tok = self.peek()
        if tok is None:
            raise ParseError(f"syntax error at end of input, "
                             f"expected {expected}", expected=expected)
        raise ParseError(f"syntax error at position {tok[2]}: got {tok[1]!r}, "
                         f"expected {expected}", position=tok[2],
                         expected=expected)

    def expect_op(self, *ops: str):
        tok = self.peek()
        if tok is None or tok[0] != "op" or tok[1] not in ops:
            self.fail(" or ".join(f"'{o}'" for o in ops))
        self.pos += 1
        return tok[1]

    def accept_op(self, *ops: str) -> "str | None":
        tok = self.peek()
        if tok is not None and tok[0] == "op" and tok[1] in ops:
            self.pos += 1
            return tok[1]
        return None

    def expect_name(self, *names: str) -> str:
        tok = self.peek()
        if tok is None or tok[0] != "name" or (names and tok[1] not in names):
            self.fail(" or ".join(f"'{x}'" for x in names) or "a name")
        self.pos += 1
        return tok[1]

    def expect_nat(self) -> int:
        tok = self.peek()
        if tok is None or tok[0] != "num":
            self.fail("an integer")
        self.pos += 1
        return int(tok[1])

    # grammar

    def parse_query(self) -> Query:
        tok = self.peek()
        if tok is None or tok[0] != "name":
            self.fail("a model name")
        if tok[1] not in MODELS:
            raise ParseError(f"unknown model {tok[1]!r} at position {tok[2]}; "
                             f"expected one of {', '.join(MODELS)}",
                             position=tok[2])
        self.pos += 1
        model = tok[1]
        self.expect_op(":")
        expr = self.parse_expr()
        tok = self.peek()
        if tok is not None:
            raise ParseError(f"syntax error at position {tok[2]}: "
                             f"trailing input {tok[1]!r}", position=tok[2])
        return Query(model, expr)

    def parse_expr(self):
        tok = self.peek()
        if tok is not None and tok[0] == "name":
            if tok[1] == "st":
                self.pos += 1
                self.expect_op("(")
                p = self.parse_prob()
                self.expect_op(")")
                return St(p)
            if tok[1] == "classify":
                self.pos += 1
                self.expect_op("(")
                p = self.parse_prob()
                self.expect_op(")")
                return ClassifyExpr(p)
            if tok[1] == "compare":
                self.pos += 1
                self.expect_op("(")
                a = self.parse_prob()
                self.expect_op(",")
                b = self.parse_prob()
                self.expect_op(")")
                return CompareExpr(a, b)
        return self.parse_prob()

    def parse_prob(self) -> Prob:
        self.expect_name("P")
        self.expect_op("(")
        event = self.parse_set()
        given = None
        if self.accept_op("|"):
            given = self.parse_set()
        self.expect_op(")")
        return Prob(event, given)

    def parse_set(self) -> SetNode:
        node = self.parse_atom()
        while True:
            op = self.accept_op("u", "n")
            if op is None:
                return node
            right = self.parse_atom()
            node = SetOp("union" if op == "u" else "intersect", node, right)

    def parse_atom(self) -> SetNode:
        tok = self.peek()
        if tok is None:
            self.fail("a set expression")
        if tok[0] == "op" and tok[1] in "([":
            return self.parse_interval()
        if tok[0] == "op" and tok[1] == "{":
            return self.parse_braces()
        if tok[0] == "name":
            name = tok[1]
            if name == "full":
                self.pos += 1
                return FullLit()
            if name == "compl":
                self.pos += 1
                self.expect_op("(")
                self._push_depth()
                inner = self.parse_set()
                self.depth -= 1
                self.expect_op(")")
                return Complement(inner)
            if name == "translate":
                self.pos += 1
                self.expect_op("(")
                self._push_depth()
                inner = self.parse_set()
                self.depth -= 1
                self.expect_op(",")
                offset = self.parse_rational()
                self.expect_op(")")
                return Translate(inner, offset)
            if name == "allheads":
                return self.parse_allheads()
            if name == "pin":
                pins = self.parse_pin()
                return CoinLit(False, 0, pins)
            if name == "ticket":
                self.pos += 1
                return TicketLit(None)
            if name == "tickets":
                self.pos += 1
                self.expect_op("(")
                count = self.expect_nat()
                self.expect_op(")")
                return TicketLit(count)
        self.fail("an interval, '{', 'full', 'compl', 'translate', "
                  "a coin literal or a ticket literal")

    def _push_depth(self):
        self.depth += 1
        if self.depth > _MAX_NESTING:
            tok = self.peek()
            pos = tok[2] if tok else None
            raise ParseError("set expression nests too deeply", position=pos)

    def parse_interval(self) -> IntervalLit:
        lb = self.expect_op("(", "[")
        left = self.parse_rational()
        self.expect_op(",")
        right = self.parse_rational()
        rb = self.expect_op(")", "]")
        return IntervalLit(left, lb == "[", right, rb == "]")

    def parse_braces(self) -> BraceLit:
        self.expect_op("{")
        items = []
        if not self.accept_op("}"):
            while True:
                items.append(self.parse_brace_item())
                if self.accept_op("}"):
                    break
                self.expect_op(",")
        return BraceLit(tuple(items))

    def parse_brace_item(self) -> str:
        tok = self.peek()
        if tok is None or tok[0] != "num":
            self.fail("a point or cylinder address")
        self.pos += 1
        if self.accept_op("/"):
            den = self.expect_nat()
            return f"{int(tok[1])}/{den}"
        return tok[1]

    def parse_rational(self) -> Fraction:
        sign = -1 if self.accept_op("-") else 1
        num = self.expect_nat()
        if self.accept_op("/"):
            den = self.expect_nat()
            if den == 0:
                raise ParseError("zero denominator in rational literal",
                                 position=self.tokens[self.pos - 1][2])
            return Fraction(sign * num, den)
        return Fraction(sign * num)

    def parse_allheads(self) -> CoinLit:
        self.expect_name("allheads")
        dropped = 0
        if self.accept_op(">"):
            dropped = self.expect_nat()
        pins: tuple[tuple[int, str], ...] = ()
        if self.accept_op("&"):
            pins = self.parse_pin()
        return CoinLit(True, dropped, pins)

    def parse_pin(self) -> tuple[tuple[int, str], ...]:
        self.expect_name("pin")
        self.expect_op("(")
        pins = []
        if not self.accept_op(")"):
            while True:
                pos = self.expect_nat()
                if pos < 1:
                    raise ParseError("pinned positions start at 1",
                                     position=self.tokens[self.pos - 1][2])
                self.expect_op(":")
                outcome = self.expect_name("H", "T")
                pins.append((pos, outcome))
                if self.accept_op(")"):
                    break
                self.expect_op(",")
        return tuple(sorted(pins))


def parse_query(text: str) -> Query:
    """Parse a query; ParseError carries position and expected tokens."""
    return _Parser(text).parse_query()


# -- rendering ------------------------------------------------------------------

def render_query(q: Query) -> str:
    return f"{q.model}: {_render_expr(q.expr)}"


def _render_expr(e) -> str:
    if isinstance(e, Prob):
        if e.given is None:
            return f"P({render_set(e.event)})"
        return f"P({render_set(e.event)} | {render_set(e.given)})"
    if isinstance(e, St):
        return f"st({_render_expr(e.prob)})"
    if isinstance(e, ClassifyExpr):
        return f"classify({_render_expr(e.prob)})"
    if isinstance(e, CompareExpr):
        return f"compare({_render_expr(e.left)}, {_render_expr(e.right)})"
    raise TypeError(f"not an expression node: {e!r}")


def render_set(node: SetNode) -> str:
    if isinstance(node, IntervalLit):
        lb = "[" if node.left_in else "("
        rb = "]" if node.right_in else ")"
        return f"{lb}{node.left},{node.right}{rb}"
    if isinstance(node, BraceLit):
        return "{" + ", ".join(node.items) + "}"
    if isinstance(node, FullLit):
        return "full"
    if isinstance(node, SetOp):
        op = "u" if node.op == "union" else "n"
        return f"{render_set(node.left)} {op} {render_set(node.right)}"
    if isinstance(node, Complement):
        return f"compl({render_set(node.arg)})"
    if isinstance(node, Translate):
        return f"translate({render_set(node.arg)},{node.offset})"
    if isinstance(node, CoinLit):
        parts = []
        if node.all_heads:
            parts.append(f"allheads>{node.dropped}" if node.dropped
                         else "allheads")
        if node.pins or not node.all_heads:
            pins = ",".join(f"{p}:{o}" for p, o in node.pins)
            parts.append(f"pin({pins})")
        return "&".join(parts)
    if isinstance(node, TicketLit):
        return "ticket" if node.count is None else f"tickets({node.count})"
    raise TypeError(f"not a set node: {node!r}")


# -- evaluation -----------------------------------------------------------------

_POINT_RE = re.compile(r"\d+(?:/\d+)?$")
_ADDRESS_RE = re.compile(r"[02]+$")


def _to_interval_set(node: SetNode, model: str) -> IntervalSet:
    if isinstance(node, IntervalLit):
        return IntervalSet.interval(node.left, node.left_in,
                                    node.right, node.right_in)
    if isinstance(node, BraceLit):
        out = IntervalSet.empty()
        for item in node.items:
            if len(item) > 1 and set(item) <= {"0", "2"}:
                raise QueryTypeError(
                    f"brace item {item!r} looks like a cylinder address; "
                    f"cylinder sets belong to the cantor model, not "
                    f"{model}")
            if not _POINT_RE.fullmatch(item):
                raise QueryTypeError(
                    f"brace item {item!r} is not a rational point")
            out = out | IntervalSet.point(Fraction(item))
        return out
    if isinstance(node, FullLit):
        return IntervalSet.full()
    if isinstance(node, SetOp):
        left = _to_interval_set(node.left, model)
        right = _to_interval_set(node.right, model)
        return left | right if node.op == "union" else left & right
    if isinstance(node, Complement):
        return _to_interval_set(node.arg, model).complement()
    if isinstance(node, Translate):
        return _to_interval_set(node.arg, model).translate_mod1(node.offset)
    if isinstance(node, CoinLit):
        raise QueryTypeError(f"coin events do not belong to the {model} model")
    if isinstance(node, TicketLit):
        raise QueryTypeError(f"ticket events do not belong to the {model} "
                             f"model")
    raise TypeError(f"not a set node: {node!r}")


def _to_cantor_event(node: SetNode) -> CantorEvent:
    if isinstance(node, BraceLit):
        for item in node.items:
            if not _ADDRESS_RE.fullmatch(item):
                raise QueryTypeError(
                    f"brace item {item!r} is not a cylinder address over "
                    f"{{0,2}}; rational points belong to the interval models")
        return CantorEvent(node.items)
    if isinstance(node, FullLit):
        return CantorEvent.full()
    if isinstance(node, SetOp):
        left = _to_cantor_event(node.left)
        right = _to_cantor_event(node.right)
        return left | right if node.op == "union" else left & right
    if isinstance(node, Complement):
        return _to_cantor_event(node.arg).complement()
    if isinstance(node, Translate):
        raise QueryTypeError("translate is not defined for cylinder events")
    if isinstance(node, IntervalLit):
        raise QueryTypeError("interval sets do not belong to the cantor "
                             "model; use cylinder addresses over {0,2}")
    raise QueryTypeError("this event does not belong to the cantor model")


def _to_coin_event(node: SetNode) -> CoinEvent:
    if isinstance(node, CoinLit):
        return CoinEvent.make(dropped_prefix=node.dropped,
                              pinned=dict(node.pins),
                              all_heads=node.all_heads)
    if isinstance(node, SetOp):
        if node.op == "union":
            raise QueryTypeError("union of coin events is not supported; "
                                 "only intersection is defined")
        return _to_coin_event(node.left).intersect(_to_coin_event(node.right))
    raise QueryTypeError("only coin literals (allheads, pin) and their "
                         "intersections belong to the coinflip model")


def _to_ticket_count(node: SetNode) -> int:
    if isinstance(node, TicketLit):
        return 1 if node.count is None else node.count
    raise QueryTypeError("only ticket literals belong to the lottery model")


Value = Union[Fraction, NonArchValue]


def _eval_prob(p: Prob, model: str) -> Value:
    if model == "minimal":
        event = _to_interval_set(p.event, model)
        if p.given is None:
            return lebesgue_length(event)
        given = _to_interval_set(p.given, model)
        denom = lebesgue_length(given)
        if denom == 0:
            raise DomainError(
                "conditioning on a null event: the minimal model assigns "
                "it measure 0, so the conditional is undefined here")
        return lebesgue_length(event & given) / denom
    if model == "grid":
        grid = GridModel()
        event = _to_interval_set(p.event, model)
        if p.given is None:
            return spinner_mod.grid_probability(grid, event)
        return spinner_mod.conditional_probability(
            grid, event, _to_interval_set(p.given, model))
    if model == "cantor":
        cm = CantorModel()
        event = _to_cantor_event(p.event)
        if p.given is None:
            return cantor_mod.cantor_probability(cm, event)
        return cantor_mod.conditional_probability(
            cm, event, _to_cantor_event(p.given))
    if model == "coinflip":
        event = _to_coin_event(p.event)
        if p.given is None:
            return coinflip_probability(event)
        given = _to_coin_event(p.given)
        pg = coinflip_probability(given)
        if pg.is_zero():
            raise DomainError("conditioning on an inconsistent coin event")
        return coinflip_probability(event.intersect(given)) / pg
    if model == "lottery":
        if p.given is not None:
            raise QueryTypeError("conditional queries are not defined for "
                                 "ticket blocks")
        return lottery_mod.lottery_ticket_probability(
            LotteryModel(), _to_ticket_count(p.event))
    raise QueryTypeError(f"unknown model {model!r}")


def _classify_rational(r: Fraction) -> Classification:
    if r == 0:
        return Classification(Kind.INFINITESIMAL, Sign.ZERO)
    sign = Sign.POSITIVE if r > 0 else Sign.NEGATIVE
    return Classification(Kind.LIMITED, sign)


def _value_text(v: Value) -> str:
    return str(v)


def _value_st(v: Value) -> Fraction:
    return v if isinstance(v, Fraction) else v.standard_part()


def _value_classification(v: Value) -> Classification:
    return _classify_rational(v) if isinstance(v, Fraction) else v.classify()


def _compare_values(a: Value, b: Value) -> tuple[Ordering, "Value | None",
                                                 Value]:
    """Ordering plus exact ratio (None against zero) and difference."""
    if isinstance(a, Fraction) and isinstance(b, Fraction):
        ordering = (Ordering.LESS if a < b
                    else Ordering.GREATER if a > b else Ordering.EQUAL)
        ratio = a / b if b != 0 else None
        return ordering, ratio, a - b
    if isinstance(a, Fraction):
        a = NonArchValue.constant(b.generator, a)
    if isinstance(b, Fraction):
        b = NonArchValue.constant(a.generator, b)
    ratio = a / b if not b.is_zero() else None
    return a.compare(b), ratio, a - b


@dataclass
class EvalResult:
    """Rendered outcome of one query: value, standard part, classification."""

    value_text: str
    standard_part: "str | None" = None
    classification: "str | None" = None

    def lines(self) -> list[str]:
        out = [f"value: {self.value_text}"]
        if self.standard_part is not None:
            out.append(f"standard_part: {self.standard_part}")
        if self.classification is not None:
            out.append(f"classification: {self.classification}")
        return out


def evaluate(q: Query) -> EvalResult:
    """Evaluate a parsed query; deterministic and exact."""
    expr = q.expr
    if isinstance(expr, Prob):
        v = _eval_prob(expr, q.model)
        st = _value_st(v)
        return EvalResult(_value_text(v), str(st),
                          _value_classification(v).render())
    if isinstance(expr, St):
        v = _eval_prob(expr.prob, q.model)
        st = _value_st(v)
        return EvalResult(str(st), str(st),
                          _classify_rational(st).render())
    if isinstance(expr, ClassifyExpr):
        v = _eval_prob(expr.prob, q.model)
        return EvalResult(_value_classification(v).render())
    if isinstance(expr, CompareExpr):
        a = _eval_prob(expr.left, q.model)
        b = _eval_prob(expr.right, q.model)
        ordering, ratio, difference = _compare_values(a, b)
        if ratio is not None:
            return EvalResult(f"{ordering} (ratio {ratio})")
        return EvalResult(f"{ordering} (difference {difference})")
    raise TypeError(f"not a query expression: {expr!r}")


def evaluate_value(q: Query) -> Value:
    """The raw exact value of a probability or standard-part query."""
    expr = q.expr
    if isinstance(expr, Prob):
        return _eval_prob(expr, q.model)
    if isinstance(expr, St):
        return _value_st(_eval_prob(expr.prob, q.model))
    raise QueryTypeError("only P(...) and st(...) queries produce a value "
                         "to compare")
