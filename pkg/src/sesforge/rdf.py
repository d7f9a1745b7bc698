"""RDF data model: terms, triples, an indexed in-memory graph, prefix maps.

Graphs have set semantics and keep three indexes (subject, predicate,
object) consistent at all times.  All read operations return triples in a
canonical deterministic order so that serializations and test output are
byte-stable.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .errors import TermError, UnknownPrefixError

# Absolute IRI: a scheme followed by non-space characters, nothing that
# would terminate an IRIREF token in Turtle.
_IRI_RE = re.compile(r"^[A-Za-z][A-Za-z0-9+.\-]*:[^\s<>\"{}|^`\\]*$")

_LANG_RE = re.compile(r"^[A-Za-z]+(-[A-Za-z0-9]+)*$")

_VAR_RE = re.compile(r"^\?[A-Za-z_][A-Za-z0-9_]*$")


@dataclass(frozen=True, order=True)
class Iri:
    """An absolute IRI."""

    value: str

    def __post_init__(self):
        if not _IRI_RE.match(self.value):
            raise TermError(f"not a valid absolute IRI: {self.value!r}")

    def local_name(self) -> str:
        """Substring after the last '#' or '/' (the whole IRI if neither)."""
        for sep in ("#", "/"):
            if sep in self.value:
                return self.value.rsplit(sep, 1)[1]
        return self.value.split(":", 1)[1]

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class Literal:
    """A literal with optional language tag or datatype (never both)."""

    lexical: str
    lang: str | None = None
    datatype: Iri | None = None

    def __post_init__(self):
        if self.lang is not None and self.datatype is not None:
            raise TermError("literal cannot carry both a language tag and a datatype")
        if self.lang is not None and not _LANG_RE.match(self.lang):
            raise TermError(f"malformed language tag: {self.lang!r}")

    def __str__(self) -> str:
        return self.lexical


@dataclass(frozen=True)
class Variable:
    """A query variable; only valid inside query patterns, never in graphs."""

    name: str

    def __post_init__(self):
        if not _VAR_RE.match(self.name):
            raise TermError(f"variable name must match '?name': {self.name!r}")

    def __str__(self) -> str:
        return self.name


Term = Iri | Literal | Variable

_ESCAPES = {"\\": "\\\\", '"': '\\"', "\n": "\\n", "\r": "\\r", "\t": "\\t"}


def escape_literal(text: str) -> str:
    out = []
    for ch in text:
        if ch in _ESCAPES:
            out.append(_ESCAPES[ch])
        elif ord(ch) < 0x20:
            out.append(f"\\u{ord(ch):04X}")
        else:
            out.append(ch)
    return "".join(out)


def nt_form(term: Iri | Literal) -> str:
    """Canonical single-line rendering of a term, also used as sort key."""
    if isinstance(term, Iri):
        return f"<{term.value}>"
    rendered = f'"{escape_literal(term.lexical)}"'
    if term.lang is not None:
        return f"{rendered}@{term.lang}"
    if term.datatype is not None:
        return f"{rendered}^^<{term.datatype.value}>"
    return rendered


@dataclass(frozen=True)
class Triple:
    """A well-formed RDF statement: Iri subject/predicate, Iri or Literal object."""

    s: Iri
    p: Iri
    o: Iri | Literal

    def __post_init__(self):
        if not isinstance(self.s, Iri):
            raise TermError(f"triple subject must be an IRI, got {type(self.s).__name__}")
        if not isinstance(self.p, Iri):
            raise TermError(f"triple predicate must be an IRI, got {type(self.p).__name__}")
        if not isinstance(self.o, (Iri, Literal)):
            raise TermError(f"triple object must be an IRI or literal, got {type(self.o).__name__}")

    def sort_key(self) -> tuple[str, str, str]:
        return (nt_form(self.s), nt_form(self.p), nt_form(self.o))

    def __str__(self) -> str:
        return f"{nt_form(self.s)} {nt_form(self.p)} {nt_form(self.o)} ."


class Graph:
    """An indexed set of triples.

    Insert/remove keep the subject, predicate and object indexes consistent;
    duplicates are no-ops.  Safe for concurrent readers; mutation requires
    exclusive access.
    """

    __slots__ = ("_triples", "_by_s", "_by_p", "_by_o")

    def __init__(self, triples=()):
        self._triples: set[Triple] = set()
        self._by_s: dict[Iri, set[Triple]] = {}
        self._by_p: dict[Iri, set[Triple]] = {}
        self._by_o: dict[Iri | Literal, set[Triple]] = {}
        for t in triples:
            self.add(t)

    def add(self, t: Triple) -> None:
        if not isinstance(t, Triple):
            raise TermError(f"expected a Triple, got {type(t).__name__}")
        if t in self._triples:
            return
        self._triples.add(t)
        self._by_s.setdefault(t.s, set()).add(t)
        self._by_p.setdefault(t.p, set()).add(t)
        self._by_o.setdefault(t.o, set()).add(t)

    def discard(self, t: Triple) -> None:
        if t not in self._triples:
            return
        self._triples.discard(t)
        for index, key in ((self._by_s, t.s), (self._by_p, t.p), (self._by_o, t.o)):
            bucket = index[key]
            bucket.discard(t)
            if not bucket:
                del index[key]

    def update(self, other: "Graph | list[Triple] | set[Triple]") -> None:
        for t in other:
            self.add(t)

    def match(
        self,
        s: Iri | None = None,
        p: Iri | None = None,
        o: Iri | Literal | None = None,
    ) -> list[Triple]:
        """All triples agreeing with every bound position, canonically sorted."""
        candidates: set[Triple] | None = None
        for index, key in ((self._by_s, s), (self._by_p, p), (self._by_o, o)):
            if key is None:
                continue
            bucket = index.get(key, set())
            candidates = bucket if candidates is None else candidates & bucket
            if not candidates:
                return []
        if candidates is None:
            candidates = self._triples
        return sorted(candidates, key=Triple.sort_key)

    def subjects(self, p: Iri | None = None, o: Iri | Literal | None = None) -> list[Iri]:
        return _dedup(t.s for t in self.match(None, p, o))

    def objects(self, s: Iri | None = None, p: Iri | None = None) -> list[Iri | Literal]:
        return _dedup(t.o for t in self.match(s, p, None))

    def nodes(self) -> list[Iri]:
        """Every IRI occurring in subject or object position."""
        found = set(self._by_s)
        found.update(o for o in self._by_o if isinstance(o, Iri))
        return sorted(found, key=nt_form)

    def triples(self) -> list[Triple]:
        return sorted(self._triples, key=Triple.sort_key)

    def copy(self) -> "Graph":
        return Graph(self._triples)

    def union(self, *others: "Graph") -> "Graph":
        g = self.copy()
        for other in others:
            g.update(other)
        return g

    def __contains__(self, t: Triple) -> bool:
        return t in self._triples

    def __len__(self) -> int:
        return len(self._triples)

    def __iter__(self):
        return iter(self.triples())

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._triples == other._triples

    def __or__(self, other: "Graph") -> "Graph":
        return self.union(other)

    def __repr__(self) -> str:
        return f"Graph({len(self._triples)} triples)"


def _dedup(items) -> list:
    seen = set()
    out = []
    for item in items:
        if item not in seen:
            seen.add(item)
            out.append(item)
    return out


_PREFIX_RE = re.compile(r"^[A-Za-z][A-Za-z0-9_\-]*$")
# Local names we are willing to write as curies; anything else is emitted
# as a full IRI so that parse(serialize(g)) stays the identity.
PN_LOCAL_RE = re.compile(r"^[A-Za-z0-9_][A-Za-z0-9_\-]*$")

RDF_NS = "http://www.w3.org/1999/02/22-rdf-syntax-ns#"
RDFS_NS = "http://www.w3.org/2000/01/rdf-schema#"
OWL_NS = "http://www.w3.org/2002/07/owl#"
SKOS_NS = "http://www.w3.org/2004/02/skos/core#"
XSD_NS = "http://www.w3.org/2001/XMLSchema#"

RDF_TYPE = Iri(RDF_NS + "type")
RDFS_LABEL = Iri(RDFS_NS + "label")
RDFS_SUBCLASSOF = Iri(RDFS_NS + "subClassOf")
OWL_CLASS = Iri(OWL_NS + "Class")
OWL_OBJECT_PROPERTY = Iri(OWL_NS + "ObjectProperty")
SKOS_MEMBER = Iri(SKOS_NS + "member")
SKOS_NARROWER = Iri(SKOS_NS + "narrower")
SKOS_BROADER = Iri(SKOS_NS + "broader")


@dataclass
class PrefixMap:
    """Prefix-to-namespace registry with curie expansion and compaction.

    Always carries the built-in ``rdf``, ``rdfs``, ``owl``, ``skos`` and
    ``sescore`` bindings; expansion followed by compaction is the identity
    for every registered prefix.
    """

    mappings: dict[str, str] = field(default_factory=dict)

    def __post_init__(self):
        base = {
            "rdf": RDF_NS,
            "rdfs": RDFS_NS,
            "owl": OWL_NS,
            "skos": SKOS_NS,
            "xsd": XSD_NS,
            "sescore": "http://sescore.example/ontology#",
        }
        base.update(self.mappings)
        self.mappings = base

    def bind(self, prefix: str, namespace: str, replace: bool = False) -> None:
        if not _PREFIX_RE.match(prefix):
            raise TermError(f"malformed prefix: {prefix!r}")
        if prefix in self.mappings and self.mappings[prefix] != namespace and not replace:
            raise TermError(f"prefix {prefix!r} is already bound to {self.mappings[prefix]}")
        Iri(namespace)  # namespace must itself be a valid absolute IRI
        self.mappings[prefix] = namespace

    def expand(self, curie: str) -> Iri:
        if ":" not in curie:
            raise UnknownPrefixError(curie)
        prefix, local = curie.split(":", 1)
        if prefix not in self.mappings:
            raise UnknownPrefixError(prefix)
        return Iri(self.mappings[prefix] + local)

    def compact(self, iri: Iri) -> str:
        """Curie for ``iri`` under the longest matching namespace, else the IRI."""
        best: tuple[str, str] | None = None
        for prefix, ns in self.mappings.items():
            if iri.value.startswith(ns):
                if best is None or len(ns) > len(best[1]) or (len(ns) == len(best[1]) and prefix < best[0]):
                    best = (prefix, ns)
        if best is None:
            return iri.value
        local = iri.value[len(best[1]):]
        if local and not PN_LOCAL_RE.match(local):
            return iri.value
        return f"{best[0]}:{local}"

    def items(self) -> list[tuple[str, str]]:
        return sorted(self.mappings.items())

    def copy(self) -> "PrefixMap":
        return PrefixMap(dict(self.mappings))
