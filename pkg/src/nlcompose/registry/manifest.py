"""Parser and serializer for the plain-text service manifest format.

Grammar (UTF-8, ``#`` comments, indentation insignificant)::

    manifest   := service | concrete
    service    := "service" ID NL method+
    method     := "method" ID NL cap+ arg* ret?
    cap        := "capability" QSTRING NL
    arg        := "arg" ID QSTRING ("kind" KIND)? NL
    ret        := "returns" ID QSTRING NL
    concrete   := "concrete" ID "implements" ID NL ("executor" ID NL)? qos*
    qos        := "qos" ID DIM "=" LEVEL NL          # ID = method_id
    KIND       := "NOUN"|"PERSON"|"COMPANY"|"NUMBER"|"MONEY"|"TIME"|"DATE"|"LOCATION"
"""

from __future__ import annotations

import re

from nlcompose.errors import InvariantError, ManifestSyntaxError
from nlcompose.registry.descriptors import (
    AbstractServiceDescriptor,
    ArgDescriptor,
    ConcreteServiceDescriptor,
    MethodDescriptor,
    QoSRequirement,
)

ENTITY_KINDS = ("NOUN", "PERSON", "COMPANY", "NUMBER", "MONEY", "TIME", "DATE", "LOCATION")

_TOKEN_RE = re.compile(r'"((?:[^"\\]|\\.)*)"|(\S+)')


def _tokenize_line(line: str, lineno: int) -> list[tuple[str, str]]:
    """Split one line into (kind, value) tokens, kind is WORD or STRING.

    An unquoted ``#`` starts a comment running to the end of the line.
    """
    tokens: list[tuple[str, str]] = []
    pos = 0
    while pos < len(line):
        if line[pos].isspace():
            pos += 1
            continue
        if line[pos] == "#":
            break
        m = _TOKEN_RE.match(line, pos)
        if not m:
            raise ManifestSyntaxError(lineno, f"unreadable token at column {pos + 1}")
        if m.group(1) is not None:
            tokens.append(("STRING", m.group(1).replace('\\"', '"').replace("\\\\", "\\")))
        else:
            word = m.group(2)
            if word.startswith('"'):
                raise ManifestSyntaxError(lineno, "unterminated string literal")
            tokens.append(("WORD", word))
        pos = m.end()
    return tokens


class _Lines:
    def __init__(self, text: str):
        self.rows = [
            (i + 1, toks)
            for i, raw in enumerate(text.splitlines())
            for toks in [_tokenize_line(raw, i + 1)]
            if toks
        ]
        self.pos = 0

    def peek(self) -> tuple[int, list[tuple[str, str]]] | None:
        return self.rows[self.pos] if self.pos < len(self.rows) else None

    def next(self) -> tuple[int, list[tuple[str, str]]]:
        row = self.rows[self.pos]
        self.pos += 1
        return row


def _expect_word(tokens: list[tuple[str, str]], idx: int, lineno: int, what: str) -> str:
    if idx >= len(tokens) or tokens[idx][0] != "WORD":
        raise ManifestSyntaxError(lineno, f"expected {what}")
    return tokens[idx][1]


def _expect_string(tokens: list[tuple[str, str]], idx: int, lineno: int, what: str) -> str:
    if idx >= len(tokens) or tokens[idx][0] != "STRING":
        raise ManifestSyntaxError(lineno, f'expected quoted {what} string')
    return tokens[idx][1]


def parse_manifest(text: str) -> AbstractServiceDescriptor | ConcreteServiceDescriptor:
    """Parse manifest text into a validated descriptor.

    Raises ManifestSyntaxError on grammar violations and InvariantError when
    the parsed descriptor breaks a structural invariant.
    """
    lines = _Lines(text)
    head = lines.peek()
    if head is None:
        raise ManifestSyntaxError(1, "empty manifest")
    lineno, tokens = head
    keyword = tokens[0][1] if tokens[0][0] == "WORD" else ""
    if keyword == "service":
        return _parse_service(lines)
    if keyword == "concrete":
        return _parse_concrete(lines)
    raise ManifestSyntaxError(lineno, f"expected 'service' or 'concrete', got {tokens[0][1]!r}")


def _parse_service(lines: _Lines) -> AbstractServiceDescriptor:
    lineno, tokens = lines.next()
    service_id = _expect_word(tokens, 1, lineno, "service id")
    if len(tokens) > 2:
        raise ManifestSyntaxError(lineno, "trailing tokens after service id")

    methods: list[MethodDescriptor] = []
    while (row := lines.peek()) is not None:
        lineno, tokens = row
        if tokens[0][1] != "method":
            raise ManifestSyntaxError(lineno, f"expected 'method', got {tokens[0][1]!r}")
        methods.append(_parse_method(lines))

    descriptor = AbstractServiceDescriptor(service_id=service_id, methods=tuple(methods))
    try:
        descriptor.validate()
    except InvariantError:
        raise
    return descriptor


def _parse_method(lines: _Lines) -> MethodDescriptor:
    lineno, tokens = lines.next()
    method_id = _expect_word(tokens, 1, lineno, "method id")
    if len(tokens) > 2:
        raise ManifestSyntaxError(lineno, "trailing tokens after method id")

    capabilities: list[str] = []
    args: list[ArgDescriptor] = []
    returns_key: str | None = None
    returns_desc: str | None = None

    while (row := lines.peek()) is not None:
        lineno, tokens = row
        keyword = tokens[0][1]
        if keyword == "capability":
            lines.next()
            if args or returns_key is not None:
                raise ManifestSyntaxError(lineno, "capabilities must precede args and returns")
            capabilities.append(_expect_string(tokens, 1, lineno, "capability"))
        elif keyword == "arg":
            lines.next()
            if returns_key is not None:
                raise ManifestSyntaxError(lineno, "args must precede returns")
            name = _expect_word(tokens, 1, lineno, "argument name")
            desc = _expect_string(tokens, 2, lineno, "argument description")
            kind = None
            if len(tokens) > 3:
                if tokens[3] != ("WORD", "kind"):
                    raise ManifestSyntaxError(lineno, "expected 'kind KIND' after description")
                kind = _expect_word(tokens, 4, lineno, "entity kind")
                if kind not in ENTITY_KINDS:
                    raise ManifestSyntaxError(lineno, f"unknown entity kind {kind!r}")
                if len(tokens) > 5:
                    raise ManifestSyntaxError(lineno, "trailing tokens after kind")
            args.append(ArgDescriptor(name=name, description=desc, declared_kind=kind))
        elif keyword == "returns":
            lines.next()
            returns_key = _expect_word(tokens, 1, lineno, "returns key")
            returns_desc = _expect_string(tokens, 2, lineno, "returns description")
            if len(tokens) > 3:
                raise ManifestSyntaxError(lineno, "trailing tokens after returns")
        elif keyword == "method":
            break
        else:
            raise ManifestSyntaxError(lineno, f"unexpected {keyword!r} inside method block")

    if not capabilities:
        raise InvariantError(f"method {method_id!r} declares no capabilities")
    return MethodDescriptor(
        method_id=method_id,
        capabilities=tuple(capabilities),
        args=tuple(args),
        returns_key=returns_key,
        returns_desc=returns_desc,
    )


def _parse_concrete(lines: _Lines) -> ConcreteServiceDescriptor:
    lineno, tokens = lines.next()
    concrete_id = _expect_word(tokens, 1, lineno, "concrete id")
    if len(tokens) < 4 or tokens[2] != ("WORD", "implements"):
        raise ManifestSyntaxError(lineno, "expected 'concrete ID implements ID'")
    implements = _expect_word(tokens, 3, lineno, "abstract service id")
    if len(tokens) > 4:
        raise ManifestSyntaxError(lineno, "trailing tokens after implements clause")

    executor = "mock"
    qos: dict[str, list[QoSRequirement]] = {}

    row = lines.peek()
    if row is not None and row[1][0][1] == "executor":
        lineno, tokens = lines.next()
        executor = _expect_word(tokens, 1, lineno, "executor name")
        if len(tokens) > 2:
            raise ManifestSyntaxError(lineno, "trailing tokens after executor name")

    while (row := lines.peek()) is not None:
        lineno, tokens = lines.next()
        if tokens[0][1] != "qos":
            raise ManifestSyntaxError(lineno, f"expected 'qos', got {tokens[0][1]!r}")
        method_id = _expect_word(tokens, 1, lineno, "method id")
        # Accept "DIM = LEVEL" with the '=' glued to either side or standalone.
        if any(t[0] != "WORD" for t in tokens[2:]):
            raise ManifestSyntaxError(lineno, "expected 'qos METHOD DIM = LEVEL'")
        combined = "".join(t[1] for t in tokens[2:])
        if combined.count("=") != 1:
            raise ManifestSyntaxError(lineno, "expected 'qos METHOD DIM = LEVEL'")
        dim, _, level = combined.partition("=")
        if not dim or not level:
            raise ManifestSyntaxError(lineno, "expected 'qos METHOD DIM = LEVEL'")
        qos.setdefault(method_id, []).append(
            QoSRequirement(dimension=dim.upper(), required_level=level.upper())
        )

    descriptor = ConcreteServiceDescriptor(
        concrete_id=concrete_id,
        implements=implements,
        qos={m: tuple(reqs) for m, reqs in qos.items()},
        executor_binding=executor,
    )
    descriptor.validate()
    return descriptor


def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def serialize_manifest(
    descriptor: AbstractServiceDescriptor | ConcreteServiceDescriptor,
) -> str:
    """Render a descriptor back to manifest text (parse round-trips exactly)."""
    out: list[str] = []
    if isinstance(descriptor, AbstractServiceDescriptor):
        out.append(f"service {descriptor.service_id}")
        for m in descriptor.methods:
            out.append(f"  method {m.method_id}")
            for cap in m.capabilities:
                out.append(f"    capability {_quote(cap)}")
            for a in m.args:
                kind = f" kind {a.declared_kind}" if a.declared_kind else ""
                out.append(f"    arg {a.name} {_quote(a.description)}{kind}")
            if m.returns_key is not None:
                out.append(f"    returns {m.returns_key} {_quote(m.returns_desc or '')}")
    else:
        out.append(f"concrete {descriptor.concrete_id} implements {descriptor.implements}")
        out.append(f"  executor {descriptor.executor_binding}")
        for method_id in descriptor.qos:
            for req in descriptor.qos[method_id]:
                out.append(f"  qos {method_id} {req.dimension} = {req.required_level}")
    return "\n".join(out) + "\n"
