"""Indexed in-memory triple store.

Layout: an append-ordered arena of triples plus three hash indexes
(subject, predicate, object) mapping a term to arena positions. Lookups
use the smallest bucket among the bound positions; iteration order is
insertion order, so a fixed build sequence gives deterministic results.
"""

from __future__ import annotations

import re
from collections.abc import Iterable, Iterator, Sequence

from .errors import StructuralError
from .terms import BlankNode, Iri, Term, Triple

_PREFIX_NAME = re.compile(r"^[A-Za-z][A-Za-z0-9_\-]*$")


class Graph:
    """A set of triples with prefix bindings and per-position indexes."""

    __slots__ = ("_arena", "_present", "_by_s", "_by_p", "_by_o", "_prefixes", "_frozen")

    def __init__(self, prefixes: dict[str, Iri] | None = None):
        self._arena: list[Triple] = []
        self._present: set[Triple] = set()
        self._by_s: dict[Term, list[int]] = {}
        self._by_p: dict[Term, list[int]] = {}
        self._by_o: dict[Term, list[int]] = {}
        self._prefixes: dict[str, Iri] = {}
        self._frozen = False
        for prefix, namespace in (prefixes or {}).items():
            self.bind(prefix, namespace)

    @property
    def prefixes(self) -> dict[str, Iri]:
        return self._prefixes

    @property
    def frozen(self) -> bool:
        return self._frozen

    def bind(self, prefix: str, namespace: Iri) -> None:
        """Bind a prefix for serialization; rebinding overwrites."""
        if self._frozen:
            raise StructuralError("graph is frozen")
        if not _PREFIX_NAME.match(prefix):
            raise StructuralError(f"invalid prefix name: {prefix!r}")
        if not isinstance(namespace, Iri):
            raise StructuralError("namespace must be an Iri")
        self._prefixes[prefix] = namespace

    def insert(self, triple: Triple) -> bool:
        """Add a triple; returns True iff it was not already present."""
        if self._frozen:
            raise StructuralError("graph is frozen")
        if not isinstance(triple, Triple):
            raise StructuralError(f"not a triple: {triple!r}")
        if triple in self._present:
            return False
        position = len(self._arena)
        self._arena.append(triple)
        self._present.add(triple)
        self._by_s.setdefault(triple.subject, []).append(position)
        self._by_p.setdefault(triple.predicate, []).append(position)
        self._by_o.setdefault(triple.object, []).append(position)
        return True

    def insert_all(self, triples: Iterable[Triple]) -> int:
        """Insert many triples; returns how many were new."""
        return sum(1 for t in triples if self.insert(t))

    def match(self, s: Term | None = None, p: Term | None = None, o: Term | None = None) -> list[Triple]:
        """All triples agreeing with the bound positions, in insertion order."""
        buckets = []
        if s is not None:
            buckets.append(self._by_s.get(s))
        if p is not None:
            buckets.append(self._by_p.get(p))
        if o is not None:
            buckets.append(self._by_o.get(o))
        if not buckets:
            return list(self._arena)
        if any(b is None for b in buckets):
            return []
        positions = min(buckets, key=len)
        arena = self._arena
        out = []
        for i in positions:
            t = arena[i]
            if s is not None and t.subject != s:
                continue
            if p is not None and t.predicate != p:
                continue
            if o is not None and t.object != o:
                continue
            out.append(t)
        return out

    def estimate(self, s: Term | None = None, p: Term | None = None, o: Term | None = None) -> int:
        """Cheap upper bound on match() size, from the smallest bound bucket."""
        sizes = []
        if s is not None:
            sizes.append(len(self._by_s.get(s, ())))
        if p is not None:
            sizes.append(len(self._by_p.get(p, ())))
        if o is not None:
            sizes.append(len(self._by_o.get(o, ())))
        return min(sizes) if sizes else len(self._arena)

    def freeze(self) -> Graph:
        """Make the graph immutable; it is then safe for concurrent readers."""
        self._frozen = True
        return self

    def __len__(self) -> int:
        return len(self._arena)

    def __iter__(self) -> Iterator[Triple]:
        return iter(self._arena)

    def __contains__(self, triple: Triple) -> bool:
        return triple in self._present

    def __repr__(self) -> str:
        return f"<Graph {len(self._arena)} triples, {len(self._prefixes)} prefixes>"


def _renamed(term: Term, source_index: int) -> Term:
    if isinstance(term, BlankNode):
        return BlankNode(f"b{source_index}_{term.label}")
    return term


def merge(graphs: Sequence[Graph]) -> Graph:
    """Union of several graphs with blank nodes renamed apart per source.

    Blank labels carry no cross-document identity, so each source's labels
    get a `b{i}_` prefix; identical ground triples collapse. Prefix maps
    merge with later inputs winning conflicts.
    """
    out = Graph()
    for index, graph in enumerate(graphs):
        for prefix, namespace in graph.prefixes.items():
            out.bind(prefix, namespace)
        for t in graph:
            out.insert(Triple(
                _renamed(t.subject, index),
                t.predicate,
                _renamed(t.object, index),
            ))
    return out
