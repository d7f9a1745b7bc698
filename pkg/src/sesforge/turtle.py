"""Turtle subset: parser and byte-deterministic serializer.

Supported syntax: ``@prefix`` directives, curies, absolute IRIs in angle
brackets, string literals with optional language tag or datatype, the ``a``
keyword, predicate lists (``;``), object lists (``,``) and ``#`` comments.
Blank node labels are accepted on input and skolemized to IRIs under a
reserved namespace; blank-node property lists and collections are not part
of the subset.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import ParseError, TermError, UnknownPrefixError
from .rdf import (
    PN_LOCAL_RE,
    Graph,
    Iri,
    Literal,
    PrefixMap,
    RDF_TYPE,
    Triple,
    escape_literal,
    nt_form,
)

SKOLEM_NS = "http://sescore.example/skolem/"

_PNAME_RE = re.compile(r"([A-Za-z][A-Za-z0-9_\-]*)?:([A-Za-z0-9_][A-Za-z0-9_\-]*)?")
_BLANK_RE = re.compile(r"_:([A-Za-z0-9][A-Za-z0-9_\-]*)")
_LANG_RE = re.compile(r"[A-Za-z]+(-[A-Za-z0-9]+)*")

_PUNCT = {".": "DOT", ";": "SEMI", ",": "COMMA"}


@dataclass(frozen=True)
class _Token:
    kind: str
    value: object
    line: int


def _tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    i = 0
    line = 1
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            i += 1
            continue
        if ch in " \t\r":
            i += 1
            continue
        if ch == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        if ch == "<":
            end = text.find(">", i + 1)
            if end == -1:
                raise ParseError("unterminated IRI reference", line)
            raw = text[i + 1:end]
            if any(c in raw for c in ' \t\n"<{}|^`\\'):
                raise ParseError(f"illegal character in IRI reference <{raw}>", line)
            tokens.append(_Token("IRIREF", raw, line))
            i = end + 1
            continue
        if ch == '"' or ch == "'":
            value, i, line = _read_string(text, i, line)
            tokens.append(_Token("STRING", value, line))
            continue
        if ch == "@":
            match = re.match(r"@([A-Za-z][A-Za-z0-9\-]*)", text[i:])
            if not match:
                raise ParseError("dangling '@'", line)
            word = match.group(1)
            if word == "prefix":
                tokens.append(_Token("PREFIX_KW", word, line))
            elif _LANG_RE.fullmatch(word):
                tokens.append(_Token("LANGTAG", word, line))
            else:
                raise ParseError(f"malformed language tag '@{word}'", line)
            i += match.end()
            continue
        if text.startswith("^^", i):
            tokens.append(_Token("DTYPE", "^^", line))
            i += 2
            continue
        if ch in _PUNCT:
            tokens.append(_Token(_PUNCT[ch], ch, line))
            i += 1
            continue
        if text.startswith("_:", i):
            match = _BLANK_RE.match(text, i)
            if not match:
                raise ParseError("malformed blank node label", line)
            tokens.append(_Token("BLANK", match.group(1), line))
            i = match.end()
            continue
        match = _PNAME_RE.match(text, i)
        if match and ":" in match.group(0):
            tokens.append(_Token("PNAME", (match.group(1) or "", match.group(2) or ""), line))
            i = match.end()
            continue
        if ch == "a" and (i + 1 == n or not (text[i + 1].isalnum() or text[i + 1] in "_:-")):
            tokens.append(_Token("A_KW", "a", line))
            i += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", line)
    tokens.append(_Token("EOF", None, line))
    return tokens


_STR_ESCAPES = {"t": "\t", "n": "\n", "r": "\r", "b": "\b", "f": "\f", '"': '"', "'": "'", "\\": "\\"}


def _read_string(text: str, i: int, line: int) -> tuple[str, int, int]:
    quote = text[i]
    i += 1
    out: list[str] = []
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == quote:
            return "".join(out), i + 1, line
        if ch == "\n":
            raise ParseError("unterminated string literal", line)
        if ch == "\\":
            if i + 1 >= n:
                raise ParseError("dangling escape in string literal", line)
            esc = text[i + 1]
            if esc in _STR_ESCAPES:
                out.append(_STR_ESCAPES[esc])
                i += 2
                continue
            if esc == "u" or esc == "U":
                width = 4 if esc == "u" else 8
                hexdigits = text[i + 2:i + 2 + width]
                if len(hexdigits) != width or not all(c in "0123456789abcdefABCDEF" for c in hexdigits):
                    raise ParseError(f"malformed \\{esc} escape", line)
                out.append(chr(int(hexdigits, 16)))
                i += 2 + width
                continue
            raise ParseError(f"unknown escape '\\{esc}'", line)
        out.append(ch)
        i += 1
    raise ParseError("unterminated string literal", line)


class _Parser:
    def __init__(self, tokens: list[_Token], pm: PrefixMap):
        self.tokens = tokens
        self.pos = 0
        self.pm = pm.copy()

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def take(self, kind: str | None = None) -> _Token:
        tok = self.tokens[self.pos]
        if kind is not None and tok.kind != kind:
            raise ParseError(f"expected {kind}, found {tok.kind}", tok.line)
        self.pos += 1
        return tok

    def parse(self) -> Graph:
        g = Graph()
        while self.peek().kind != "EOF":
            if self.peek().kind == "PREFIX_KW":
                self._directive()
            else:
                self._triples(g)
        return g

    def _directive(self) -> None:
        self.take("PREFIX_KW")
        tok = self.take("PNAME")
        prefix, local = tok.value
        if local:
            raise ParseError("prefix declaration must end with ':'", tok.line)
        iri_tok = self.take("IRIREF")
        try:
            self.pm.bind(prefix, iri_tok.value, replace=True)
        except TermError as exc:
            raise ParseError(str(exc), iri_tok.line) from exc
        self.take("DOT")

    def _triples(self, g: Graph) -> None:
        subject = self._resource()
        while True:
            predicate = self._verb()
            while True:
                obj = self._object()
                try:
                    g.add(Triple(subject, predicate, obj))
                except TermError as exc:
                    raise ParseError(str(exc), self.peek().line) from exc
                if self.peek().kind == "COMMA":
                    self.take()
                    continue
                break
            if self.peek().kind == "SEMI":
                while self.peek().kind == "SEMI":
                    self.take()
                if self.peek().kind == "DOT":  # trailing ';' before '.'
                    break
                continue
            break
        self.take("DOT")

    def _resource(self) -> Iri:
        tok = self.peek()
        if tok.kind == "IRIREF":
            self.take()
            try:
                return Iri(tok.value)
            except TermError as exc:
                raise ParseError(str(exc), tok.line) from exc
        if tok.kind == "PNAME":
            self.take()
            prefix, local = tok.value
            try:
                return self.pm.expand(f"{prefix}:{local}")
            except UnknownPrefixError:
                raise UnknownPrefixError(prefix, tok.line) from None
        if tok.kind == "BLANK":
            self.take()
            return Iri(SKOLEM_NS + tok.value)
        raise ParseError(f"expected an IRI, found {tok.kind}", tok.line)

    def _verb(self) -> Iri:
        if self.peek().kind == "A_KW":
            self.take()
            return RDF_TYPE
        return self._resource()

    def _object(self) -> Iri | Literal:
        tok = self.peek()
        if tok.kind == "STRING":
            self.take()
            lexical = tok.value
            nxt = self.peek()
            if nxt.kind == "LANGTAG":
                self.take()
                return Literal(lexical, lang=nxt.value)
            if nxt.kind == "DTYPE":
                self.take()
                return Literal(lexical, datatype=self._resource())
            return Literal(lexical)
        return self._resource()


def parse_turtle(text: str, pm: PrefixMap | None = None) -> Graph:
    """Parse a Turtle document into a graph.

    ``pm`` supplies prefix bindings available before any ``@prefix``
    directive in the document; directives extend or override them locally.
    """
    if pm is None:
        pm = PrefixMap()
    return _Parser(_tokenize(text), pm).parse()


def _render_term(term: Iri | Literal, pm: PrefixMap) -> str:
    if isinstance(term, Iri):
        compacted = pm.compact(term)
        if compacted != term.value:
            return compacted
        return f"<{term.value}>"
    rendered = f'"{escape_literal(term.lexical)}"'
    if term.lang is not None:
        return f"{rendered}@{term.lang}"
    if term.datatype is not None:
        return f"{rendered}^^{_render_term(term.datatype, pm)}"
    return rendered


def serialize_turtle(g: Graph, pm: PrefixMap | None = None) -> str:
    """Canonical Turtle: sorted prefix header, subjects grouped and sorted.

    The same graph and prefix map always produce byte-identical output, and
    the output re-parses to an equal graph.
    """
    if pm is None:
        pm = PrefixMap()
    lines = [f"@prefix {prefix}: <{ns}> ." for prefix, ns in pm.items()]
    by_subject: dict[str, tuple[Iri, dict]] = {}
    for t in g.triples():
        key = nt_form(t.s)
        entry = by_subject.setdefault(key, (t.s, {}))
        entry[1].setdefault(nt_form(t.p), (t.p, []))[1].append(t.o)

    for _, (subject, preds) in sorted(by_subject.items()):
        lines.append("")
        subj_text = _render_term(subject, pm)
        pred_lines = []
        for _, (pred, objects) in sorted(preds.items()):
            verb = "a" if pred == RDF_TYPE else _render_term(pred, pm)
            rendered = ", ".join(_render_term(o, pm) for o in sorted(objects, key=nt_form))
            pred_lines.append(f"{verb} {rendered}")
        first, rest = pred_lines[0], pred_lines[1:]
        if not rest:
            lines.append(f"{subj_text} {first} .")
        else:
            lines.append(f"{subj_text} {first} ;")
            for pl in rest[:-1]:
                lines.append(f"    {pl} ;")
            lines.append(f"    {rest[-1]} .")
    return "\n".join(lines) + "\n"
