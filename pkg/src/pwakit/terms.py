"""RDF data model: IRIs, blank nodes, literals, and triples.

Literal comparison at this level is syntactic (lexical form plus datatype
IRI); numeric value comparison belongs to the query layer.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

from .errors import StructuralError

RDF_NS = "http://www.w3.org/1999/02/22-rdf-syntax-ns#"
RDFS_NS = "http://www.w3.org/2000/01/rdf-schema#"
XSD_NS = "http://www.w3.org/2001/XMLSchema#"

_FORBIDDEN_IRI_CHARS = re.compile(r'[\s<>"]')
_SCHEME = re.compile(r"^[A-Za-z][A-Za-z0-9+.\-]*:")
_BLANK_LABEL = re.compile(r"^[A-Za-z0-9_]+$")
_LANG_TAG = re.compile(r"^[A-Za-z]{1,8}(-[A-Za-z0-9]{1,8})*$")
_INTEGER_LEXICAL = re.compile(r"^[+-]?[0-9]+$")
_DECIMAL_LEXICAL = re.compile(r"^[+-]?([0-9]+(\.[0-9]*)?|\.[0-9]+)$")


@dataclass(frozen=True, slots=True)
class Iri:
    """An absolute IRI."""

    value: str

    def __post_init__(self):
        if not self.value:
            raise StructuralError("IRI must be non-empty")
        if _FORBIDDEN_IRI_CHARS.search(self.value):
            raise StructuralError(f"IRI contains whitespace or <>\": {self.value!r}")
        if not _SCHEME.match(self.value):
            raise StructuralError(f"IRI is not absolute: {self.value!r}")

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True, slots=True)
class BlankNode:
    """A blank node; its label has identity only within one graph."""

    label: str

    def __post_init__(self):
        if not _BLANK_LABEL.match(self.label):
            raise StructuralError(f"invalid blank node label: {self.label!r}")

    def __str__(self) -> str:
        return "_:" + self.label


RDF_TYPE = Iri(RDF_NS + "type")
RDF_PROPERTY = Iri(RDF_NS + "Property")
RDF_LANGSTRING = Iri(RDF_NS + "langString")
RDFS_CLASS = Iri(RDFS_NS + "Class")
RDFS_DOMAIN = Iri(RDFS_NS + "domain")
RDFS_RANGE = Iri(RDFS_NS + "range")
XSD_STRING = Iri(XSD_NS + "string")
XSD_INTEGER = Iri(XSD_NS + "integer")
XSD_DECIMAL = Iri(XSD_NS + "decimal")
XSD_FLOAT = Iri(XSD_NS + "float")
XSD_DOUBLE = Iri(XSD_NS + "double")
XSD_DATETIME = Iri(XSD_NS + "dateTime")
XSD_BOOLEAN = Iri(XSD_NS + "boolean")

NUMERIC_DATATYPES = frozenset({XSD_INTEGER, XSD_DECIMAL, XSD_FLOAT, XSD_DOUBLE})


def _check_numeric_lexical(lexical: str, datatype: Iri) -> None:
    if datatype == XSD_INTEGER:
        if not _INTEGER_LEXICAL.match(lexical):
            raise StructuralError(f"not an xsd:integer lexical form: {lexical!r}")
    elif datatype == XSD_DECIMAL:
        if not _DECIMAL_LEXICAL.match(lexical):
            raise StructuralError(f"not an xsd:decimal lexical form: {lexical!r}")
    else:  # float / double
        try:
            value = float(lexical)
        except ValueError:
            raise StructuralError(f"not a {datatype.value.rsplit('#')[-1]} lexical form: {lexical!r}") from None
        if not math.isfinite(value):
            raise StructuralError(f"numeric literal must be finite: {lexical!r}")


@dataclass(frozen=True, slots=True)
class Literal:
    """A literal with lexical form, datatype IRI, and optional language tag.

    With no explicit datatype the literal is xsd:string, or rdf:langString
    when a language tag is present.
    """

    lexical: str
    datatype: Iri = None  # type: ignore[assignment]  # normalized in __post_init__
    language: str | None = None

    def __post_init__(self):
        if self.datatype is None:
            inferred = RDF_LANGSTRING if self.language else XSD_STRING
            object.__setattr__(self, "datatype", inferred)
        if self.language is not None:
            if not _LANG_TAG.match(self.language):
                raise StructuralError(f"invalid language tag: {self.language!r}")
            if self.datatype != RDF_LANGSTRING:
                raise StructuralError("language tag requires the rdf:langString datatype")
        elif self.datatype == RDF_LANGSTRING:
            raise StructuralError("rdf:langString literal requires a language tag")
        if self.datatype in NUMERIC_DATATYPES:
            _check_numeric_lexical(self.lexical, self.datatype)

    def __str__(self) -> str:
        return render_term(self)


Term = Iri | BlankNode | Literal


@dataclass(frozen=True, slots=True)
class Triple:
    """One RDF statement; literals may only appear in object position."""

    subject: Iri | BlankNode
    predicate: Iri
    object: Term

    def __post_init__(self):
        if not isinstance(self.subject, (Iri, BlankNode)):
            raise StructuralError(f"triple subject must be an IRI or blank node, got {type(self.subject).__name__}")
        if not isinstance(self.predicate, Iri):
            raise StructuralError(f"triple predicate must be an IRI, got {type(self.predicate).__name__}")
        if not isinstance(self.object, (Iri, BlankNode, Literal)):
            raise StructuralError(f"triple object must be an RDF term, got {type(self.object).__name__}")

    def __str__(self) -> str:
        return f"{render_term(self.subject)} {render_term(self.predicate)} {render_term(self.object)} ."


_LITERAL_ESCAPES = str.maketrans({
    "\\": "\\\\",
    '"': '\\"',
    "\n": "\\n",
    "\r": "\\r",
    "\t": "\\t",
})


def escape_literal(text: str) -> str:
    """Escape a literal's lexical form for N-Triples style output."""
    return text.translate(_LITERAL_ESCAPES)


def render_term(term: Term) -> str:
    """Render a term in N-Triples style: <iri>, _:label, or "lex"^^<dt>.

    Every literal carries an explicit datatype except language-tagged
    strings, which render as "lex"@lang.
    """
    if isinstance(term, Iri):
        return f"<{term.value}>"
    if isinstance(term, BlankNode):
        return f"_:{term.label}"
    if isinstance(term, Literal):
        body = f'"{escape_literal(term.lexical)}"'
        if term.language is not None:
            return f"{body}@{term.language}"
        return f"{body}^^<{term.datatype.value}>"
    raise StructuralError(f"not an RDF term: {term!r}")


def term_kind_rank(term: Term) -> int:
    """Ordering rank by term kind: blank < IRI < literal."""
    if isinstance(term, BlankNode):
        return 0
    if isinstance(term, Iri):
        return 1
    return 2


def term_sort_key(term: Term) -> tuple[int, str]:
    """Deterministic total order used by serializers and reports."""
    return (term_kind_rank(term), render_term(term))


def is_absolute_iri(value: str) -> bool:
    """Whether the string begins with an IRI scheme."""
    return bool(_SCHEME.match(value))


def numeric_value(term: Term) -> float | None:
    """The numeric value of a literal with a numeric XSD datatype, else None."""
    if isinstance(term, Literal) and term.datatype in NUMERIC_DATATYPES:
        return float(term.lexical)
    return None
