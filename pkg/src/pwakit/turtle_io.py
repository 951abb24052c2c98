"""Turtle subset reader and writer.

Supported on input: `@prefix` directives, `<IRIREF>`, prefixed names, the
`a` keyword, `;` and `,` continuations, `_:label` blank nodes, and single-
or double-quoted literals with optional `^^datatype` or `@lang`. Not
supported, deliberately: collections `( )`, anonymous blank nodes `[ ]`,
`@base` directives, and triple-quoted strings.

Parsing is fail-fast per statement: on an error the parser records a
diagnostic, skips to the next `.`, and keeps going, so one pass reports
every broken statement. Any error-severity diagnostic means no graph is
produced.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from urllib.parse import urljoin

from .errors import ParseError, StructuralError
from .graph import Graph
from .terms import (
    RDF_TYPE,
    _SCHEME,
    BlankNode,
    Iri,
    Literal,
    Term,
    Triple,
    escape_literal,
    term_sort_key,
)


@dataclass(frozen=True)
class ParseDiagnostic:
    """A located message about the input text."""

    line: int
    column: int
    message: str
    severity: str = "error"  # "error" | "warning"

    def __str__(self) -> str:
        return f"{self.line}:{self.column}: {self.severity}: {self.message}"


@dataclass
class TurtleDocument:
    """Result of a parse: a graph on success, diagnostics either way."""

    graph: Graph | None
    base: Iri | None = None
    diagnostics: list[ParseDiagnostic] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.graph is not None

    def require(self) -> Graph:
        """The parsed graph, or ParseError carrying the diagnostics."""
        if self.graph is None:
            raise ParseError("Turtle parse failed", self.diagnostics)
        return self.graph


@dataclass(frozen=True)
class _Token:
    kind: str
    value: object
    line: int
    col: int


class _LexError(Exception):
    def __init__(self, line: int, col: int, message: str):
        super().__init__(message)
        self.line = line
        self.col = col
        self.message = message


_WORD_START = set("ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789")
_WORD_CHARS = _WORD_START | set("_-.:%")
_BLANK_CHARS = _WORD_START | {"_"}
_ESCAPE_MAP = {"\\": "\\", '"': '"', "'": "'", "n": "\n", "r": "\r", "t": "\t"}


class _Lexer:
    def __init__(self, text: str):
        self.text = text
        self.n = len(text)
        self.i = 0
        self.line = 1
        self.col = 1
        self.last_line = 1
        self.last_col = 1

    def _advance(self, count: int = 1) -> None:
        for _ in range(count):
            self.last_line, self.last_col = self.line, self.col
            if self.i < self.n and self.text[self.i] == "\n":
                self.line += 1
                self.col = 1
            else:
                self.col += 1
            self.i += 1

    def _peek(self, offset: int = 0) -> str | None:
        j = self.i + offset
        return self.text[j] if j < self.n else None

    def _error(self, message: str, line: int | None = None, col: int | None = None):
        raise _LexError(line if line is not None else self.line,
                        col if col is not None else self.col, message)

    def _scan_string(self, quote: str) -> str:
        start_line, start_col = self.line, self.col
        self._advance()  # opening quote
        out: list[str] = []
        while True:
            c = self._peek()
            if c is None or c == "\n":
                self._error("unterminated string literal", start_line, start_col)
            if c == quote:
                self._advance()
                return "".join(out)
            if c == "\\":
                esc_line, esc_col = self.line, self.col
                self._advance()
                e = self._peek()
                if e in _ESCAPE_MAP:
                    out.append(_ESCAPE_MAP[e])
                    self._advance()
                elif e in ("u", "U"):
                    width = 4 if e == "u" else 8
                    self._advance()
                    digits = self.text[self.i:self.i + width]
                    if len(digits) < width or any(d not in "0123456789abcdefABCDEF" for d in digits):
                        self._error("invalid unicode escape", esc_line, esc_col)
                    out.append(chr(int(digits, 16)))
                    self._advance(width)
                else:
                    self._error(f"invalid escape sequence \\{e}", esc_line, esc_col)
            else:
                out.append(c)
                self._advance()

    def _scan_iriref(self) -> str:
        start_line, start_col = self.line, self.col
        self._advance()  # '<'
        out: list[str] = []
        while True:
            c = self._peek()
            if c is None or c == "\n":
                self._error("unterminated IRI", start_line, start_col)
            if c == ">":
                self._advance()
                return "".join(out)
            out.append(c)
            self._advance()

    def tokens(self) -> list[_Token]:
        toks: list[_Token] = []
        while self.i < self.n:
            c = self.text[self.i]
            line, col = self.line, self.col
            if c in " \t\r\n":
                self._advance()
                continue
            if c == "#":
                while self._peek() not in (None, "\n"):
                    self._advance()
                continue
            if c == "<":
                toks.append(_Token("iriref", self._scan_iriref(), line, col))
                continue
            if c in "'\"":
                toks.append(_Token("string", self._scan_string(c), line, col))
                continue
            if c == "^":
                if self._peek(1) == "^":
                    toks.append(_Token("dtype_sep", "^^", line, col))
                    self._advance(2)
                    continue
                self._error("expected '^^'")
            if c == "@":
                self._advance()
                word = []
                while (p := self._peek()) is not None and (p.isalnum() or p == "-"):
                    word.append(p)
                    self._advance()
                word = "".join(word)
                if word == "prefix":
                    toks.append(_Token("prefix_directive", word, line, col))
                elif word:
                    toks.append(_Token("langtag", word, line, col))
                else:
                    self._error("bare '@'", line, col)
                continue
            if c == "_" and self._peek(1) == ":":
                self._advance(2)
                label = []
                while (p := self._peek()) is not None and p in _BLANK_CHARS:
                    label.append(p)
                    self._advance()
                if not label:
                    self._error("blank node label expected after '_:'", line, col)
                toks.append(_Token("blank", "".join(label), line, col))
                continue
            if c in ";,.":
                kind = {";": "semi", ",": "comma", ".": "dot"}[c]
                toks.append(_Token(kind, c, line, col))
                self._advance()
                continue
            if c in _WORD_START:
                word = []
                while (p := self._peek()) is not None and p in _WORD_CHARS:
                    word.append(p)
                    self._advance()
                word = "".join(word)
                # A prefixed name's local part may not end in '.'; trailing
                # dots belong to the statement terminator.
                dots = 0
                while word.endswith("."):
                    word = word[:-1]
                    dots += 1
                if word == "a":
                    toks.append(_Token("kw_a", word, line, col))
                elif ":" in word:
                    prefix, _, local = word.partition(":")
                    toks.append(_Token("pname", (prefix, local), line, col))
                else:
                    self._error(f"unexpected token {word!r}", line, col)
                for k in range(dots):
                    toks.append(_Token("dot", ".", line, col + len(word) + k))
                continue
            self._error(f"unexpected character {c!r}")
        toks.append(_Token("eof", None, self.last_line, self.last_col))
        return toks


class _Parser:
    def __init__(self, tokens: list[_Token], base: Iri | None):
        self.tokens = tokens
        self.pos = 0
        self.base = base
        self.graph = Graph()
        self.diagnostics: list[ParseDiagnostic] = []

    def _peek(self) -> _Token:
        return self.tokens[self.pos]

    def _take(self) -> _Token:
        tok = self.tokens[self.pos]
        if tok.kind != "eof":
            self.pos += 1
        return tok

    def _error(self, tok: _Token, message: str) -> None:
        self.diagnostics.append(ParseDiagnostic(tok.line, tok.col, message))

    def _warn(self, tok: _Token, message: str) -> None:
        self.diagnostics.append(ParseDiagnostic(tok.line, tok.col, message, "warning"))

    def _sync_to_dot(self) -> None:
        while self._peek().kind not in ("dot", "eof"):
            self._take()
        if self._peek().kind == "dot":
            self._take()

    class _StatementError(Exception):
        pass

    def _fail(self, tok: _Token, message: str):
        self._error(tok, message)
        raise self._StatementError()

    def _make_iri(self, tok: _Token, value: str) -> Iri:
        if self.base is not None and not _SCHEME.match(value):
            value = urljoin(self.base.value, value)
        try:
            return Iri(value)
        except StructuralError as exc:
            self._fail(tok, f"malformed IRI: {exc}")
            raise AssertionError  # unreachable

    def _expand_pname(self, tok: _Token) -> Iri:
        prefix, local = tok.value
        namespace = self.graph.prefixes.get(prefix)
        if namespace is None:
            self._fail(tok, f"undefined prefix '{prefix}'")
        try:
            return Iri(namespace.value + local)
        except StructuralError as exc:
            self._fail(tok, f"malformed IRI from prefixed name: {exc}")
            raise AssertionError

    def _parse_directive(self) -> None:
        self._take()  # @prefix
        try:
            name_tok = self._take()
            if name_tok.kind != "pname" or name_tok.value[1] != "":
                self._fail(name_tok, "expected 'prefix:' after @prefix")
            iri_tok = self._take()
            if iri_tok.kind != "iriref":
                self._fail(iri_tok, "expected <IRI> in @prefix directive")
            namespace = self._make_iri(iri_tok, iri_tok.value)
            dot = self._take()
            if dot.kind != "dot":
                self._fail(dot, "expected '.' after @prefix directive")
            prefix = name_tok.value[0]
            if prefix in self.graph.prefixes and self.graph.prefixes[prefix] != namespace:
                self._warn(name_tok, f"prefix '{prefix}' redefined")
            try:
                self.graph.bind(prefix, namespace)
            except StructuralError as exc:
                self._fail(name_tok, str(exc))
        except self._StatementError:
            self._sync_to_dot()

    def _parse_node(self, *, want: str) -> Term:
        tok = self._take()
        if tok.kind == "iriref":
            return self._make_iri(tok, tok.value)
        if tok.kind == "pname":
            return self._expand_pname(tok)
        if tok.kind == "blank":
            if want == "predicate":
                self._fail(tok, "blank node cannot be a predicate")
            return BlankNode(tok.value)
        if tok.kind == "kw_a":
            if want != "predicate":
                self._fail(tok, "'a' is only valid as a predicate")
            return RDF_TYPE
        if tok.kind == "string":
            if want != "object":
                self._fail(tok, f"literal not allowed in {want} position")
            return self._finish_literal(tok)
        if tok.kind == "eof":
            self._fail(tok, "unexpected end of input inside statement")
        self._fail(tok, f"unexpected {tok.kind} token")
        raise AssertionError

    def _finish_literal(self, string_tok: _Token) -> Literal:
        datatype = None
        language = None
        nxt = self._peek()
        if nxt.kind == "dtype_sep":
            self._take()
            dt_tok = self._take()
            if dt_tok.kind == "iriref":
                datatype = self._make_iri(dt_tok, dt_tok.value)
            elif dt_tok.kind == "pname":
                datatype = self._expand_pname(dt_tok)
            else:
                self._fail(dt_tok, "expected datatype IRI after '^^'")
        elif nxt.kind == "langtag":
            self._take()
            language = nxt.value
        try:
            return Literal(string_tok.value, datatype, language)
        except StructuralError as exc:
            self._fail(string_tok, f"invalid literal: {exc}")
            raise AssertionError

    def _parse_statement(self) -> None:
        try:
            subject = self._parse_node(want="subject")
            while True:
                predicate = self._parse_node(want="predicate")
                while True:
                    obj = self._parse_node(want="object")
                    self.graph.insert(Triple(subject, predicate, obj))
                    if self._peek().kind == "comma":
                        self._take()
                        continue
                    break
                tok = self._take()
                if tok.kind == "semi":
                    # Tolerate a dangling ';' before the closing '.'.
                    if self._peek().kind == "dot":
                        self._take()
                        return
                    continue
                if tok.kind == "dot":
                    return
                self._fail(tok, "expected ';', ',' or '.'")
        except self._StatementError:
            self._sync_to_dot()


def parse_turtle(text: str, base: Iri | None = None) -> TurtleDocument:
    """Parse Turtle text into a graph, collecting located diagnostics."""
    try:
        tokens = _Lexer(text).tokens()
    except _LexError as exc:
        return TurtleDocument(None, base, [ParseDiagnostic(exc.line, exc.col, exc.message)])
    parser = _Parser(tokens, base)
    while parser._peek().kind != "eof":
        if parser._peek().kind == "prefix_directive":
            parser._parse_directive()
        else:
            parser._parse_statement()
    errors = [d for d in parser.diagnostics if d.severity == "error"]
    if errors:
        return TurtleDocument(None, base, parser.diagnostics)
    return TurtleDocument(parser.graph, base, parser.diagnostics)


def graph_from_turtle(text: str, base: Iri | None = None) -> Graph:
    """Parse Turtle text, raising ParseError on any error."""
    return parse_turtle(text, base).require()


_LOCAL_FIRST = set("ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789_")
_LOCAL_CHARS = _LOCAL_FIRST | set("-.:%")


def _local_ok(local: str) -> bool:
    if local == "":
        return True
    if local[0] not in _LOCAL_FIRST or local.endswith("."):
        return False
    return all(c in _LOCAL_CHARS for c in local)


def serialize_turtle(graph: Graph) -> str:
    """Serialize a graph as Turtle.

    `@prefix` directives come first (sorted by prefix), then subjects
    sorted by term kind and string; predicates group with ';' (rdf:type
    first, rendered as 'a') and objects with ','. Blank nodes always keep
    their `_:` labels, which keeps round-trips trivially safe.
    """
    out: list[str] = []
    prefixes = sorted(graph.prefixes.items())
    for prefix, namespace in prefixes:
        out.append(f"@prefix {prefix}: <{namespace.value}> .")
    if prefixes:
        out.append("")

    # Longest namespace wins when several prefixes cover the same IRI.
    by_length = sorted(prefixes, key=lambda kv: (-len(kv[1].value), kv[0]))

    def shorten(iri: Iri) -> str:
        for prefix, namespace in by_length:
            ns = namespace.value
            if iri.value.startswith(ns):
                local = iri.value[len(ns):]
                if _local_ok(local):
                    return f"{prefix}:{local}"
        return f"<{iri.value}>"

    def render(term: Term) -> str:
        if isinstance(term, Iri):
            return shorten(term)
        if isinstance(term, BlankNode):
            return f"_:{term.label}"
        body = f'"{escape_literal(term.lexical)}"'
        if term.language is not None:
            return f"{body}@{term.language}"
        return f"{body}^^{shorten(term.datatype)}"

    grouped: dict[Term, dict[Iri, list[Term]]] = {}
    for t in graph:
        grouped.setdefault(t.subject, {}).setdefault(t.predicate, []).append(t.object)

    def predicate_key(p: Iri) -> tuple[int, str]:
        return (0, "") if p == RDF_TYPE else (1, p.value)

    for subject in sorted(grouped, key=term_sort_key):
        lines = []
        for predicate in sorted(grouped[subject], key=predicate_key):
            rendered_p = "a" if predicate == RDF_TYPE else render(predicate)
            objs = ", ".join(render(o) for o in sorted(grouped[subject][predicate], key=term_sort_key))
            lines.append(f"{rendered_p} {objs}")
        out.append(f"{render(subject)} " + " ;\n    ".join(lines) + " .")
        out.append("")
    while out and out[-1] == "":
        out.pop()
    return "\n".join(out) + ("\n" if out else "")
