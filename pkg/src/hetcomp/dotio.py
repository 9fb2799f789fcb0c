"""Reading LTS models from a DOT subset.

The accepted subset covers what transition-system tools actually emit:
a single ``digraph``, node statements, edge statements, and attribute
lists.  Only the ``label``, ``facets`` and ``init`` attributes are
interpreted; everything else is kept as opaque decoration.  Labels may
be bare tokens, quoted strings (including SPIN's quoted-inside-quoted
dialect), or TeX-ish brace groups like ``{\\red connection!}`` whose
colour markup is stripped before the label grammar applies.

The initial state is the node marked ``init=true`` when present, and
the source of the first edge statement otherwise.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .errors import HetcompError, ParseError
from .lts import Label, Lts, Transition, parse_label

_NAME_CHARS = re.compile(r"[A-Za-z0-9_.]")
_VALUE_CHARS = re.compile(r"[A-Za-z0-9_.+\-!?]")


@dataclass
class DotNode:
    name: str
    attrs: dict[str, str]
    line: int
    col: int


@dataclass
class DotEdge:
    source: str
    target: str
    attrs: dict[str, str]
    line: int
    col: int


@dataclass
class DotDocument:
    """Raw parse of one digraph, before LTS interpretation."""

    graph_name: str
    nodes: list[DotNode] = field(default_factory=list)
    edges: list[DotEdge] = field(default_factory=list)


class _Scanner:
    def __init__(self, text: str, source: str):
        self.text = text
        self.source = source
        self.pos = 0

    def line_col(self, pos: int | None = None) -> tuple[int, int]:
        p = self.pos if pos is None else pos
        line = self.text.count("\n", 0, p) + 1
        col = p - self.text.rfind("\n", 0, p)
        return line, col

    def error(self, message: str, pos: int | None = None) -> ParseError:
        line, col = self.line_col(pos)
        return ParseError(message, line=line, col=col, source=self.source)

    def skip(self) -> None:
        t, n = self.text, len(self.text)
        while self.pos < n:
            c = t[self.pos]
            if c.isspace():
                self.pos += 1
            elif t.startswith("//", self.pos) or c == "#":
                nl = t.find("\n", self.pos)
                self.pos = n if nl < 0 else nl + 1
            elif t.startswith("/*", self.pos):
                end = t.find("*/", self.pos + 2)
                if end < 0:
                    raise self.error("unterminated /* comment")
                self.pos = end + 2
            else:
                return

    def at_end(self) -> bool:
        self.skip()
        return self.pos >= len(self.text)

    def try_symbol(self, sym: str) -> bool:
        self.skip()
        if self.text.startswith(sym, self.pos):
            self.pos += len(sym)
            return True
        return False

    def expect_symbol(self, sym: str) -> None:
        if not self.try_symbol(sym):
            raise self.error(f"expected {sym!r}")

    def peek_symbol(self, sym: str) -> bool:
        self.skip()
        return self.text.startswith(sym, self.pos)

    def _scan_quoted(self) -> str:
        # pos is at the opening quote
        start = self.pos
        self.pos += 1
        out: list[str] = []
        t, n = self.text, len(self.text)
        while self.pos < n:
            c = t[self.pos]
            if c == '"':
                self.pos += 1
                return "".join(out)
            if c == "\\" and self.pos + 1 < n and t[self.pos + 1] in '"\\':
                out.append(t[self.pos + 1])
                self.pos += 2
            else:
                out.append(c)
                self.pos += 1
        raise self.error("unterminated string", start)

    def _scan_run(self, chars: re.Pattern[str]) -> str:
        start = self.pos
        t, n = self.text, len(self.text)
        while self.pos < n and chars.match(t[self.pos]):
            self.pos += 1
        return t[start:self.pos]

    def name(self, what: str) -> str:
        self.skip()
        if self.pos < len(self.text):
            if self.text[self.pos] == '"':
                return self._scan_quoted()
            if _NAME_CHARS.match(self.text[self.pos]):
                return self._scan_run(_NAME_CHARS)
        raise self.error(f"expected {what}")

    def try_name(self) -> str | None:
        self.skip()
        if self.pos < len(self.text):
            if self.text[self.pos] == '"':
                return self._scan_quoted()
            if _NAME_CHARS.match(self.text[self.pos]):
                return self._scan_run(_NAME_CHARS)
        return None

    def value(self) -> str:
        """An attribute value: bare token, quoted string, or {...} group."""
        self.skip()
        if self.pos < len(self.text):
            c = self.text[self.pos]
            if c == '"':
                return self._scan_quoted()
            if c == "{":
                return self._scan_braces()
            if _VALUE_CHARS.match(c):
                return self._scan_run(_VALUE_CHARS)
        raise self.error("expected an attribute value")

    def _scan_braces(self) -> str:
        start = self.pos
        depth = 0
        t, n = self.text, len(self.text)
        while self.pos < n:
            c = t[self.pos]
            if c == "{":
                depth += 1
            elif c == "}":
                depth -= 1
                if depth == 0:
                    self.pos += 1
                    return t[start:self.pos]
            self.pos += 1
        raise self.error("unterminated { group", start)


def _parse_attr_list(sc: _Scanner) -> dict[str, str]:
    attrs: dict[str, str] = {}
    while sc.try_symbol("["):
        while not sc.try_symbol("]"):
            key = sc.name("an attribute name")
            sc.expect_symbol("=")
            attrs[key] = sc.value()
            while sc.try_symbol(",") or sc.try_symbol(";"):
                pass
    return attrs


def parse_dot_document(text: str, source: str = "<dot>") -> DotDocument:
    sc = _Scanner(text, source)
    sc.skip()
    if sc.try_name() != "digraph":
        raise sc.error("expected 'digraph'")
    if sc.peek_symbol("{"):
        graph_name = ""
    else:
        graph_name = sc.name("a graph name")
    sc.expect_symbol("{")
    doc = DotDocument(graph_name)
    while True:
        if sc.try_symbol("}"):
            break
        if sc.at_end():
            raise sc.error("unexpected end of input: missing '}'")
        sc.skip()
        line, col = sc.line_col()
        name = sc.name("a node name or '}'")
        if sc.peek_symbol("->"):
            chain = [name]
            while sc.try_symbol("->"):
                chain.append(sc.name("an edge target"))
            attrs = _parse_attr_list(sc)
            for a, b in zip(chain, chain[1:]):
                doc.edges.append(DotEdge(a, b, dict(attrs), line, col))
        elif name in ("graph", "node", "edge") and sc.peek_symbol("["):
            _parse_attr_list(sc)  # default-attribute statement, ignored
        else:
            doc.nodes.append(DotNode(name, _parse_attr_list(sc), line, col))
        while sc.try_symbol(";"):
            pass
    if not sc.at_end():
        raise sc.error("trailing input after closing '}'")
    return doc


_MARKUP_RE = re.compile(r"\{\\[A-Za-z]+\s+([^{}]*)\}")


def strip_markup(raw: str) -> str:
    """Remove colour/markup wrappers and one layer of literal quotes."""
    s = raw
    while True:
        t = _MARKUP_RE.sub(r"\1", s)
        if t == s:
            break
        s = t
    s = s.strip()
    if len(s) >= 2 and s[0] == '"' and s[-1] == '"':
        s = s[1:-1].strip()
    return s


def document_to_lts(doc: DotDocument, source: str = "<dot>") -> Lts:
    if not doc.nodes and not doc.edges:
        raise ParseError("empty graph: no nodes and no edges", source=source)

    states: list[str] = []
    seen: set[str] = set()

    def add_state(name: str) -> None:
        if name not in seen:
            seen.add(name)
            states.append(name)

    init_nodes: list[DotNode] = []
    for node in doc.nodes:
        add_state(node.name)
        if strip_markup(node.attrs.get("init", "")).lower() == "true":
            init_nodes.append(node)
    for edge in doc.edges:
        add_state(edge.source)
        add_state(edge.target)

    init_names = sorted({n.name for n in init_nodes})
    if len(init_names) > 1:
        n = init_nodes[-1]
        raise ParseError(f"two distinct init=true nodes: {init_names[0]} and "
                         f"{init_names[1]}", line=n.line, col=n.col, source=source)
    if init_names:
        initial = init_names[0]
    elif doc.edges:
        initial = doc.edges[0].source
    else:
        raise ParseError("cannot determine the initial state: no init=true "
                         "node and no edges", source=source)

    transitions = []
    for edge in doc.edges:
        label_text = strip_markup(edge.attrs.get("label", ""))
        facets_text = strip_markup(edge.attrs.get("facets", ""))
        combined = label_text or "tau"
        if facets_text:
            combined += "|" + facets_text
        try:
            label = parse_label(combined)
        except HetcompError as e:
            raise ParseError(f"bad edge label: {e}", line=edge.line,
                             col=edge.col, source=source) from e
        transitions.append(Transition(edge.source, label, edge.target))

    try:
        return Lts(states, initial, transitions)
    except HetcompError as e:
        raise ParseError(str(e), source=source) from e


def parse_dot(text: str, source: str = "<dot>") -> Lts:
    """Parse one digraph into an Lts (see the module docstring)."""
    return document_to_lts(parse_dot_document(text, source), source)
