"""The when/then compositional rule language: AST, parser, and evaluation.

A deliberately small expression language (the full embeddable-expression
engines it stands in for are overkill here): comparisons over
``wm.get('key')``, literals and ``null``, combined with ``&&``, ``||``,
``!`` and parentheses. Actions are ``wm.put``, ``wm.remove`` and
``invoke(Service.method)``; an invoke binds a local ``results`` name usable
by the rest of the same rule's actions.

Rule file format (one or more rules, ``#`` comments)::

    rule rule-search-flights
    desc "search for flights on a range of dates"
    when wm.get('flight.destination') != null && wm.get('flight.from') != null
    then invoke(FlightReservationService.searchFlight)
    then wm.put('selectedFlights', results)

An optional ``priority N`` line may follow ``desc`` (default 0; higher fires
earlier within a pass).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Any, Union

from nlcompose.errors import RuleSyntaxError, RuleTypeError

MISSING = object()  # wm.get on an absent key

RULE_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_.-]*\Z")
_IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


# --- AST ----------------------------------------------------------------------


@dataclass(frozen=True)
class WmGet:
    key: str


@dataclass(frozen=True)
class Literal:
    value: Any  # str | int | float | bool | None


@dataclass(frozen=True)
class ResultsRef:
    pass


@dataclass(frozen=True)
class Cmp:
    op: str  # == != < <= > >=
    lhs: "Expr"
    rhs: "Expr"


@dataclass(frozen=True)
class And:
    items: tuple["Expr", ...]


@dataclass(frozen=True)
class Or:
    items: tuple["Expr", ...]


@dataclass(frozen=True)
class Not:
    item: "Expr"


Expr = Union[WmGet, Literal, ResultsRef, Cmp, And, Or, Not]


@dataclass(frozen=True)
class PutAction:
    key: str
    expr: Expr


@dataclass(frozen=True)
class RemoveAction:
    key: str


@dataclass(frozen=True)
class InvokeAction:
    service_id: str
    method_id: str


Action = Union[PutAction, RemoveAction, InvokeAction]


@dataclass
class CompositionalRule:
    name: str
    description: str
    when: Expr
    then: tuple[Action, ...]
    priority: int = 0
    fired_count: int = 0


# --- expression lexer/parser ----------------------------------------------------


_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<string>'(?:[^'\\]|\\.)*')
  | (?P<number>-?\d+(?:\.\d+)?)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<op>&&|\|\||==|!=|<=|>=|[<>!().,])
    """,
    re.VERBOSE,
)


def _lex(text: str, line: int) -> list[tuple[str, str]]:
    tokens: list[tuple[str, str]] = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise RuleSyntaxError(line, f"unreadable expression at column {pos + 1}: {text[pos:]!r}")
        kind = m.lastgroup
        if kind != "ws":
            tokens.append((kind, m.group(0)))
        pos = m.end()
    tokens.append(("eof", ""))
    return tokens


class _ExprParser:
    def __init__(self, text: str, line: int):
        self.tokens = _lex(text, line)
        self.pos = 0
        self.line = line

    def peek(self) -> tuple[str, str]:
        return self.tokens[self.pos]

    def advance(self) -> tuple[str, str]:
        token = self.tokens[self.pos]
        self.pos += 1
        return token

    def expect(self, value: str) -> None:
        kind, text = self.advance()
        if text != value:
            raise RuleSyntaxError(self.line, f"expected {value!r}, got {text or 'end of line'!r}")

    def parse_expression(self) -> Expr:
        expr = self._or()
        kind, text = self.peek()
        if kind != "eof":
            raise RuleSyntaxError(self.line, f"trailing tokens after expression: {text!r}")
        return expr

    def _or(self) -> Expr:
        items = [self._and()]
        while self.peek()[1] == "||":
            self.advance()
            items.append(self._and())
        return items[0] if len(items) == 1 else Or(tuple(items))

    def _and(self) -> Expr:
        items = [self._comparison()]
        while self.peek()[1] == "&&":
            self.advance()
            items.append(self._comparison())
        return items[0] if len(items) == 1 else And(tuple(items))

    def _comparison(self) -> Expr:
        lhs = self._atom()
        if self.peek()[1] in ("==", "!=", "<", "<=", ">", ">="):
            op = self.advance()[1]
            rhs = self._atom()
            return Cmp(op, lhs, rhs)
        return lhs

    def _atom(self) -> Expr:
        kind, text = self.peek()
        if text == "!":
            self.advance()
            return Not(self._atom())
        if text == "(":
            self.advance()
            inner = self._or()
            self.expect(")")
            return inner
        if kind == "string":
            self.advance()
            return Literal(_unquote(text))
        if kind == "number":
            self.advance()
            return Literal(float(text) if "." in text else int(text))
        if kind == "ident":
            return self._ident_atom()
        raise RuleSyntaxError(self.line, f"unexpected token {text or 'end of line'!r}")

    def _ident_atom(self) -> Expr:
        _, word = self.advance()
        if word == "null":
            return Literal(None)
        if word == "true":
            return Literal(True)
        if word == "false":
            return Literal(False)
        if word == "results":
            return ResultsRef()
        if word == "wm":
            self.expect(".")
            kind, accessor = self.advance()
            if accessor != "get":
                raise RuleSyntaxError(self.line, "only wm.get(...) may appear in expressions")
            self.expect("(")
            key = self._string_arg()
            self.expect(")")
            return WmGet(key)
        raise RuleSyntaxError(self.line, f"unknown name {word!r} in expression")

    def _string_arg(self) -> str:
        kind, text = self.advance()
        if kind != "string":
            raise RuleSyntaxError(self.line, "expected a quoted key")
        return _unquote(text)


def _unquote(text: str) -> str:
    return text[1:-1].replace("\\'", "'").replace("\\\\", "\\")


def parse_expression(text: str, line: int = 1) -> Expr:
    return _ExprParser(text, line).parse_expression()


def _parse_action(text: str, line: int) -> Action:
    parser = _ExprParser(text, line)
    kind, word = parser.advance()
    if word == "wm":
        parser.expect(".")
        _, accessor = parser.advance()
        if accessor == "put":
            parser.expect("(")
            key = parser._string_arg()
            parser.expect(",")
            expr = parser._or()
            parser.expect(")")
            if parser.peek()[0] != "eof":
                raise RuleSyntaxError(line, "trailing tokens after wm.put(...)")
            return PutAction(key, expr)
        if accessor == "remove":
            parser.expect("(")
            key = parser._string_arg()
            parser.expect(")")
            if parser.peek()[0] != "eof":
                raise RuleSyntaxError(line, "trailing tokens after wm.remove(...)")
            return RemoveAction(key)
        raise RuleSyntaxError(line, f"unknown action wm.{accessor}")
    if word == "invoke":
        parser.expect("(")
        kind, service_id = parser.advance()
        if kind != "ident":
            raise RuleSyntaxError(line, "expected invoke(Service.method)")
        parser.expect(".")
        kind, method_id = parser.advance()
        if kind != "ident":
            raise RuleSyntaxError(line, "expected invoke(Service.method)")
        parser.expect(")")
        if parser.peek()[0] != "eof":
            raise RuleSyntaxError(line, "trailing tokens after invoke(...)")
        return InvokeAction(service_id, method_id)
    raise RuleSyntaxError(line, f"unknown action {word!r}")


# --- rule parsing ----------------------------------------------------------------


def parse_rule(text: str) -> CompositionalRule:
    """Parse exactly one rule; raises RuleSyntaxError otherwise."""
    rules = parse_rule_file(text)
    if len(rules) != 1:
        raise RuleSyntaxError(1, f"expected exactly one rule, found {len(rules)}")
    return rules[0]


def parse_rule_file(text: str) -> list[CompositionalRule]:
    """Parse a rule file holding any number of rules."""
    lines: list[tuple[int, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        lines.append((lineno, stripped))
    if not lines:
        raise RuleSyntaxError(1, "empty rule text")

    rules: list[CompositionalRule] = []
    i = 0
    while i < len(lines):
        lineno, line = lines[i]
        keyword, _, rest = line.partition(" ")
        if keyword != "rule":
            raise RuleSyntaxError(lineno, f"expected 'rule NAME', got {line!r}")
        name = rest.strip()
        if not RULE_NAME_RE.match(name):
            raise RuleSyntaxError(lineno, f"bad rule name {name!r}")
        i += 1

        description, priority, i = _parse_header(lines, i)
        when, i = _parse_when(lines, i)
        then, i = _parse_then(lines, i)
        rules.append(
            CompositionalRule(
                name=name, description=description, when=when, then=then, priority=priority
            )
        )

    seen: set[str] = set()
    for rule in rules:
        if rule.name in seen:
            raise RuleSyntaxError(1, f"duplicate rule name {rule.name!r}")
        seen.add(rule.name)
    return rules


def _parse_header(lines: list[tuple[int, str]], i: int) -> tuple[str, int, int]:
    if i >= len(lines) or not lines[i][1].startswith("desc"):
        lineno = lines[i][0] if i < len(lines) else lines[-1][0]
        raise RuleSyntaxError(lineno, "expected 'desc \"...\"' after rule name")
    lineno, line = lines[i]
    m = re.fullmatch(r'desc\s+"((?:[^"\\]|\\.)*)"', line)
    if not m:
        raise RuleSyntaxError(lineno, "expected 'desc \"...\"'")
    description = m.group(1).replace('\\"', '"').replace("\\\\", "\\")
    i += 1
    priority = 0
    if i < len(lines) and lines[i][1].startswith("priority"):
        lineno, line = lines[i]
        m = re.fullmatch(r"priority\s+(-?\d+)", line)
        if not m:
            raise RuleSyntaxError(lineno, "expected 'priority N'")
        priority = int(m.group(1))
        i += 1
    return description, priority, i


def _parse_when(lines: list[tuple[int, str]], i: int) -> tuple[Expr, int]:
    if i >= len(lines) or not (lines[i][1] == "when" or lines[i][1].startswith("when ")):
        lineno = lines[i][0] if i < len(lines) else lines[-1][0]
        raise RuleSyntaxError(lineno, "expected 'when EXPR'")
    lineno, line = lines[i]
    expr_text = line[len("when"):].strip()
    if not expr_text:
        raise RuleSyntaxError(lineno, "empty when-condition")
    return parse_expression(expr_text, lineno), i + 1


def _parse_then(lines: list[tuple[int, str]], i: int) -> tuple[tuple[Action, ...], int]:
    actions: list[Action] = []
    while i < len(lines) and lines[i][1].startswith("then"):
        lineno, line = lines[i]
        action_text = line[len("then"):].strip()
        if not action_text:
            raise RuleSyntaxError(lineno, "empty then-action")
        actions.append(_parse_action(action_text, lineno))
        i += 1
    if not actions:
        lineno = lines[i][0] if i < len(lines) else lines[-1][0]
        raise RuleSyntaxError(lineno, "expected at least one 'then ACTION'")
    return tuple(actions), i


# --- evaluation -------------------------------------------------------------------


def eval_expr(expr: Expr, wm, results: Any = MISSING) -> Any:
    """Evaluate an expression against a working memory; never mutates it.

    ``wm.get`` on an absent key yields an internal missing marker: any
    comparison against it is false, except the syntactic ``== null`` /
    ``!= null`` forms, which test key presence.
    """
    if isinstance(expr, Literal):
        return expr.value
    if isinstance(expr, WmGet):
        return wm.get(expr.key, MISSING)
    if isinstance(expr, ResultsRef):
        return results
    if isinstance(expr, Cmp):
        return _eval_cmp(expr, wm, results)
    if isinstance(expr, And):
        for item in expr.items:
            if not _as_bool(eval_expr(item, wm, results)):
                return False
        return True
    if isinstance(expr, Or):
        for item in expr.items:
            if _as_bool(eval_expr(item, wm, results)):
                return True
        return False
    if isinstance(expr, Not):
        return not _as_bool(eval_expr(expr.item, wm, results))
    raise RuleTypeError(f"cannot evaluate {expr!r}")


def eval_condition(expr: Expr, wm) -> bool:
    """Evaluate a when-condition to a boolean (no `results` in scope)."""
    return _as_bool(eval_expr(expr, wm))


def _is_null_literal(expr: Expr) -> bool:
    return isinstance(expr, Literal) and expr.value is None


def _eval_cmp(expr: Cmp, wm, results: Any) -> bool:
    if expr.op in ("==", "!=") and (_is_null_literal(expr.lhs) or _is_null_literal(expr.rhs)):
        other = expr.rhs if _is_null_literal(expr.lhs) else expr.lhs
        value = eval_expr(other, wm, results)
        is_null = value is MISSING or value is None
        return is_null if expr.op == "==" else not is_null

    lhs = eval_expr(expr.lhs, wm, results)
    rhs = eval_expr(expr.rhs, wm, results)
    if lhs is MISSING or rhs is MISSING:
        return False
    if expr.op == "==":
        return _values_equal(lhs, rhs)
    if expr.op == "!=":
        return not _values_equal(lhs, rhs)
    return _ordered_cmp(expr.op, lhs, rhs)


def _is_number(value: Any) -> bool:
    return isinstance(value, (int, float)) and not isinstance(value, bool)


def _values_equal(lhs: Any, rhs: Any) -> bool:
    if _is_number(lhs) and _is_number(rhs):
        return lhs == rhs
    if type(lhs) is type(rhs):
        return lhs == rhs
    return False


def _ordered_cmp(op: str, lhs: Any, rhs: Any) -> bool:
    comparable = (_is_number(lhs) and _is_number(rhs)) or (
        type(lhs) is type(rhs) and isinstance(lhs, str)
    )
    if not comparable:
        raise RuleTypeError(
            f"cannot order {type(lhs).__name__} against {type(rhs).__name__}"
        )
    if op == "<":
        return lhs < rhs
    if op == "<=":
        return lhs <= rhs
    if op == ">":
        return lhs > rhs
    return lhs >= rhs


def _as_bool(value: Any) -> bool:
    if isinstance(value, bool):
        return value
    if value is MISSING:
        return False
    raise RuleTypeError(f"expected a boolean, got {type(value).__name__}")
