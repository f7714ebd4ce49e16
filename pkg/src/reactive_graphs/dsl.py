"""Textual notation for reactive graphs.

Grammar (line comments ``//``, states and actions declared implicitly):

    input  := model ( "~" model )?
    model  := "rg" IDENT "{" decl* "}"
    decl   := "init" IDENT ";"
            | IDENT ":" IDENT "-->" IDENT "by" STRING ";"       ground edge
            | IDENT ":" IDENT ("enables"|"disables") IDENT ";"  hyper edge
            | "inactive" IDENT ("," IDENT)* ";"

Every edge is active unless listed in an ``inactive`` clause. Identifiers
may contain interior hyphens (``routed-safe``); actions are quoted
strings. A second model after ``~`` is the comparand for equivalence
checking.
"""

from __future__ import annotations

from dataclasses import dataclass

from .model import (
    Diagnostic,
    EdgeDetail,
    Ground,
    Hyper,
    InvalidGraph,
    ModelError,
    OFF,
    ON,
    ReactiveGraph,
    validate,
)

KEYWORDS = frozenset({"rg", "init", "by", "enables", "disables", "inactive"})

_PUNCT = {
    "{": "lbrace",
    "}": "rbrace",
    ":": "colon",
    ";": "semi",
    ",": "comma",
    "~": "tilde",
    ".": "dot",
}


@dataclass(frozen=True)
class SourceSpan:
    """Position of a token inside the source text (1-based)."""

    line: int
    column: int
    length: int = 1

    def __str__(self) -> str:
        return f"{self.line}:{self.column}"


@dataclass(frozen=True)
class Token:
    kind: str  # ident | string | arrow | one of _PUNCT values | eof
    value: str
    span: SourceSpan


@dataclass(frozen=True)
class ParsedInput:
    """Result of parsing: a validated graph, plus a comparand after '~'."""

    primary: ReactiveGraph
    comparand: "ReactiveGraph | None" = None


class ParseFailure(ModelError):
    """Raised when parsing fails; carries every diagnostic with its span."""

    def __init__(self, diagnostics: list[Diagnostic]):
        self.diagnostics = list(diagnostics)
        super().__init__("; ".join(str(d) for d in self.diagnostics))


def _is_ident_start(c: str) -> bool:
    return c.isalpha() or c == "_"


def _is_ident_char(c: str) -> bool:
    return c.isalnum() or c == "_"


def tokenize(source: str, diagnostics: list[Diagnostic]) -> list[Token]:
    """Scan ``source`` into tokens, appending lex errors to ``diagnostics``."""
    tokens: list[Token] = []
    i, line, col = 0, 1, 1
    n = len(source)
    while i < n:
        c = source[i]
        if c == "\n":
            i, line, col = i + 1, line + 1, 1
            continue
        if c.isspace():
            i, col = i + 1, col + 1
            continue
        if source.startswith("//", i):
            while i < n and source[i] != "\n":
                i += 1
            continue
        if source.startswith("-->", i):
            tokens.append(Token("arrow", "-->", SourceSpan(line, col, 3)))
            i, col = i + 3, col + 3
            continue
        if c in _PUNCT:
            tokens.append(Token(_PUNCT[c], c, SourceSpan(line, col, 1)))
            i, col = i + 1, col + 1
            continue
        if c == '"':
            j, out = i + 1, []
            while j < n and source[j] not in ('"', "\n"):
                if source[j] == "\\" and j + 1 < n and source[j + 1] in ('"', "\\"):
                    out.append(source[j + 1])
                    j += 2
                else:
                    out.append(source[j])
                    j += 1
            if j >= n or source[j] != '"':
                diagnostics.append(
                    Diagnostic("SyntaxError", c, "unterminated string", SourceSpan(line, col, j - i))
                )
                i, col = j, col + (j - i)
                continue
            tokens.append(Token("string", "".join(out), SourceSpan(line, col, j + 1 - i)))
            col += j + 1 - i
            i = j + 1
            continue
        if _is_ident_start(c):
            j = i + 1
            while j < n:
                if _is_ident_char(source[j]):
                    j += 1
                elif source[j] == "-" and j + 1 < n and _is_ident_char(source[j + 1]):
                    j += 2
                else:
                    break
            tokens.append(Token("ident", source[i:j], SourceSpan(line, col, j - i)))
            col += j - i
            i = j
            continue
        diagnostics.append(
            Diagnostic("SyntaxError", c, f"unexpected character {c!r}", SourceSpan(line, col, 1))
        )
        i, col = i + 1, col + 1
    tokens.append(Token("eof", "", SourceSpan(line, col, 0)))
    return tokens


@dataclass
class _EdgeDecl:
    edge_id: str
    id_span: SourceSpan
    detail_of: "dict[str, str] | None" = None  # filled later


class _Parser:
    def __init__(self, tokens: list[Token], diagnostics: list[Diagnostic]):
        self.tokens = tokens
        self.pos = 0
        self.diagnostics = diagnostics

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        tok = self.tokens[self.pos]
        if tok.kind != "eof":
            self.pos += 1
        return tok

    def at_keyword(self, word: str) -> bool:
        t = self.peek()
        return t.kind == "ident" and t.value == word

    def error(self, message: str, tok: "Token | None" = None, code: str = "SyntaxError") -> None:
        tok = tok or self.peek()
        self.diagnostics.append(Diagnostic(code, tok.value, message, tok.span))

    def expect(self, kind: str, what: str) -> "Token | None":
        t = self.peek()
        if t.kind != kind:
            self.error(f"expected {what}, found {t.value!r}" if t.kind != "eof" else f"expected {what}, found end of input")
            return None
        return self.advance()

    def expect_ident(self, what: str) -> "Token | None":
        t = self.peek()
        if t.kind != "ident" or t.value in KEYWORDS:
            self.error(f"expected {what}, found {t.value!r}" if t.kind != "eof" else f"expected {what}, found end of input")
            return None
        return self.advance()

    def skip_to_decl_end(self) -> None:
        """Panic recovery: resume after the next ';' (or before '}' / eof)."""
        while self.peek().kind not in ("semi", "rbrace", "eof"):
            self.advance()
        if self.peek().kind == "semi":
            self.advance()

    def parse_input(self) -> "list[tuple]":
        models = [self.parse_model()]
        if self.peek().kind == "tilde":
            self.advance()
            models.append(self.parse_model())
        if self.peek().kind != "eof":
            self.error("expected end of input")
        return models

    def parse_model(self):
        header = self.peek()
        if not self.at_keyword("rg"):
            self.error("expected 'rg'")
            return None
        self.advance()
        name_tok = self.expect_ident("model name")
        if name_tok is None:
            return None
        if self.expect("lbrace", "'{'") is None:
            return None
        decls = []
        while self.peek().kind not in ("rbrace", "eof", "tilde"):
            d = self.parse_decl()
            if d is not None:
                decls.append(d)
        self.expect("rbrace", "'}'")
        return (name_tok, header.span, decls)

    def parse_decl(self):
        t = self.peek()
        if t.kind == "ident" and t.value == "init":
            self.advance()
            state = self.expect_ident("state name")
            if state is None or self.expect("semi", "';'") is None:
                self.skip_to_decl_end()
                return None
            return ("init", t.span, state)
        if t.kind == "ident" and t.value == "inactive":
            self.advance()
            ids = []
            first = self.expect_ident("edge id")
            if first is None:
                self.skip_to_decl_end()
                return None
            ids.append(first)
            while self.peek().kind == "comma":
                self.advance()
                nxt = self.expect_ident("edge id")
                if nxt is None:
                    self.skip_to_decl_end()
                    return None
                ids.append(nxt)
            if self.expect("semi", "';'") is None:
                self.skip_to_decl_end()
                return None
            return ("inactive", t.span, ids)
        edge_id = self.expect_ident("declaration")
        if edge_id is None:
            self.skip_to_decl_end()
            return None
        if self.expect("colon", "':'") is None:
            self.skip_to_decl_end()
            return None
        src = self.expect_ident("source")
        if src is None:
            self.skip_to_decl_end()
            return None
        t = self.peek()
        if t.kind == "arrow":
            self.advance()
            trg = self.expect_ident("target state")
            if trg is None:
                self.skip_to_decl_end()
                return None
            if not self.at_keyword("by"):
                self.error("expected 'by'")
                self.skip_to_decl_end()
                return None
            self.advance()
            action = self.expect("string", "quoted action")
            if action is None or self.expect("semi", "';'") is None:
                self.skip_to_decl_end()
                return None
            return ("ground", edge_id, src, trg, action)
        if t.kind == "ident" and t.value in ("enables", "disables"):
            self.advance()
            trg = self.expect_ident("target edge")
            if trg is None or self.expect("semi", "';'") is None:
                self.skip_to_decl_end()
                return None
            return ("hyper", edge_id, src, ON if t.value == "enables" else OFF, trg)
        self.error("expected '-->', 'enables' or 'disables'")
        self.skip_to_decl_end()
        return None


def _build_graph(model, diagnostics: list[Diagnostic]) -> "ReactiveGraph | None":
    if model is None:
        return None
    name_tok, header_span, decls = model
    detail: dict[str, EdgeDetail] = {}
    id_spans: dict[str, SourceSpan] = {}
    detail_owner: dict[EdgeDetail, str] = {}
    init_tok = None
    inactive_toks: list[Token] = []
    hyper_refs: list[Token] = []

    for d in decls:
        if d[0] == "init":
            if init_tok is not None:
                diagnostics.append(
                    Diagnostic("DuplicateInit", d[2].value, "more than one 'init' declaration", d[1])
                )
            else:
                init_tok = d[2]
            continue
        if d[0] == "inactive":
            inactive_toks.extend(d[2])
            continue
        kind, id_tok = d[0], d[1]
        if id_tok.value in detail:
            diagnostics.append(
                Diagnostic("DuplicateEdgeId", id_tok.value, f"edge id {id_tok.value!r} already declared", id_tok.span)
            )
            continue
        if kind == "ground":
            _, _, src, trg, action = d
            det: EdgeDetail = Ground(src.value, action.value, trg.value)
        else:
            _, _, src, polarity, trg = d
            det = Hyper(src.value, trg.value, polarity)
            hyper_refs.extend((src, trg))
        if det in detail_owner:
            diagnostics.append(
                Diagnostic(
                    "DuplicateDetail",
                    id_tok.value,
                    f"edge {id_tok.value!r} duplicates {detail_owner[det]!r}",
                    id_tok.span,
                )
            )
            continue
        detail_owner[det] = id_tok.value
        detail[id_tok.value] = det
        id_spans[id_tok.value] = id_tok.span

    for ref in hyper_refs:
        if ref.value not in detail:
            diagnostics.append(
                Diagnostic("UnknownIdentifier", ref.value, f"unknown edge {ref.value!r}", ref.span)
            )
    inactive = set()
    for tok in inactive_toks:
        if tok.value not in detail:
            diagnostics.append(
                Diagnostic("UnknownIdentifier", tok.value, f"unknown edge {tok.value!r}", tok.span)
            )
        else:
            inactive.add(tok.value)
    if init_tok is None:
        diagnostics.append(
            Diagnostic("MissingInit", name_tok.value, "model has no 'init' declaration", header_span)
        )
        return None
    return ReactiveGraph.of(name_tok.value, detail, init_tok.value, inactive)


def parse(source: str) -> ParsedInput:
    """Parse one or two ('~'-separated) models, validating the result.

    Raises ParseFailure carrying every syntax and semantic diagnostic,
    each with a span into the source text.
    """
    diagnostics: list[Diagnostic] = []
    tokens = tokenize(source, diagnostics)
    parser = _Parser(tokens, diagnostics)
    models = parser.parse_input()
    graphs = [_build_graph(m, diagnostics) for m in models]
    if not diagnostics:
        for g in graphs:
            if g is not None:
                try:
                    validate(g)
                except InvalidGraph as exc:
                    diagnostics.extend(exc.diagnostics)
    if diagnostics or not graphs or graphs[0] is None:
        raise ParseFailure(diagnostics)
    return ParsedInput(graphs[0], graphs[1] if len(graphs) > 1 else None)


def _quote(action: str) -> str:
    return '"' + action.replace("\\", "\\\\").replace('"', '\\"') + '"'


def pretty(g: ReactiveGraph) -> str:
    """Canonical text for ``g``; reparsing it yields an equal model.

    Ground edges come first, then hyper edges, each sorted by id, then a
    single ``inactive`` clause. States unreachable from any edge or the
    init declaration cannot be expressed in the notation; use the JSON
    format for graphs with isolated states.
    """
    lines = [f"rg {g.name} {{", f"  init {g.init};"]
    for e in g.ground_ids():
        d = g.detail[e]
        lines.append(f"  {e}: {d.source} --> {d.target} by {_quote(d.action)};")
    for e in g.hyper_ids():
        d = g.detail[e]
        verb = "enables" if d.polarity == ON else "disables"
        lines.append(f"  {e}: {d.source} {verb} {d.target};")
    inactive = sorted(g.edges - g.active0)
    if inactive:
        lines.append(f"  inactive {', '.join(inactive)};")
    lines.append("}")
    return "\n".join(lines)
