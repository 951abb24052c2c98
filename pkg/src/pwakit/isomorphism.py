"""Blank-node-aware graph isomorphism.

Two graphs are isomorphic when some bijection over blank node labels maps
one triple set exactly onto the other; ground triples must match verbatim.
The check is exact: iterated signature refinement narrows candidate label
pairs, then a backtracking search over assignments decides. Guaranteed
correct up to the documented blank-node limit (64 per graph).
"""

from __future__ import annotations

from collections import Counter
from collections.abc import Iterable

from .errors import CapacityError
from .graph import Graph
from .terms import BlankNode, Triple, render_term

MAX_BLANK_NODES = 64


def _is_ground(t: Triple) -> bool:
    return not isinstance(t.subject, BlankNode) and not isinstance(t.object, BlankNode)


def _labels(triples: Iterable[Triple]) -> set[str]:
    out = set()
    for t in triples:
        if isinstance(t.subject, BlankNode):
            out.add(t.subject.label)
        if isinstance(t.object, BlankNode):
            out.add(t.object.label)
    return out


def _skeleton(t: Triple, focus: str) -> tuple[str, str, str]:
    # Positional shape of a triple relative to one blank label: the focus
    # label becomes '§', other blanks '*', ground terms render verbatim.
    # Skeletons never mention concrete labels, so they compare across graphs.
    def part(term) -> str:
        if isinstance(term, BlankNode):
            return "§" if term.label == focus else "*"
        return render_term(term)

    return (part(t.subject), render_term(t.predicate), part(t.object))


def _incidence(blank_triples: list[Triple]) -> dict[str, list[Triple]]:
    incident: dict[str, list[Triple]] = {}
    for t in blank_triples:
        seen_here = set()
        for term in (t.subject, t.object):
            if isinstance(term, BlankNode) and term.label not in seen_here:
                incident.setdefault(term.label, []).append(t)
                seen_here.add(term.label)
    return incident


def _refine(incident: dict[str, list[Triple]], rounds: int = 3):
    """Label-independent signature per blank node, sharpened iteratively."""
    sigs = {
        x: tuple(sorted(_skeleton(t, x) for t in triples))
        for x, triples in incident.items()
    }
    for _ in range(rounds):
        nxt = {}
        for x, triples in incident.items():
            neigh = []
            for t in triples:
                others = tuple(sorted(
                    sigs[term.label]
                    for term in (t.subject, t.object)
                    if isinstance(term, BlankNode) and term.label != x
                ))
                neigh.append((_skeleton(t, x), others))
            nxt[x] = (sigs[x], tuple(sorted(neigh)))
        if len(set(nxt.values())) == len(set(sigs.values())):
            sigs = nxt
            break
        sigs = nxt
    return sigs


def _apply(t: Triple, mapping: dict[str, str]) -> Triple:
    def sub(term):
        if isinstance(term, BlankNode):
            return BlankNode(mapping[term.label])
        return term

    return Triple(sub(t.subject), t.predicate, sub(t.object))


def isomorphic(a: Graph, b: Graph) -> bool:
    """True iff the graphs are equal up to a bijective blank relabeling."""
    if len(a) != len(b):
        return False
    a_blank = [t for t in a if not _is_ground(t)]
    b_blank = [t for t in b if not _is_ground(t)]
    if len(a_blank) != len(b_blank):
        return False
    if {t for t in a if _is_ground(t)} != {t for t in b if _is_ground(t)}:
        return False

    incident_a = _incidence(a_blank)
    incident_b = _incidence(b_blank)
    if len(incident_a) != len(incident_b):
        return False
    if max(len(incident_a), len(incident_b), 0) > MAX_BLANK_NODES:
        raise CapacityError(
            f"graphs with more than {MAX_BLANK_NODES} blank nodes exceed the supported limit"
        )
    if not incident_a:
        return True  # no blanks left; ground parts already matched

    sig_a = _refine(incident_a)
    sig_b = _refine(incident_b)
    if Counter(sig_a.values()) != Counter(sig_b.values()):
        return False

    candidates = {
        x: [y for y in sig_b if sig_b[y] == sig_a[x]]
        for x in sig_a
    }

    b_blank_set = set(b_blank)
    order = sorted(candidates, key=lambda x: (len(candidates[x]), x))
    mapping: dict[str, str] = {}
    used: set[str] = set()
    triple_labels = {t: tuple(_labels([t])) for t in a_blank}

    def consistent(x: str) -> bool:
        # Check every triple of x whose blanks are now all mapped.
        for t in incident_a[x]:
            if all(lbl in mapping for lbl in triple_labels[t]):
                if _apply(t, mapping) not in b_blank_set:
                    return False
        return True

    def backtrack(k: int) -> bool:
        if k == len(order):
            return {_apply(t, mapping) for t in a_blank} == b_blank_set
        x = order[k]
        for y in candidates[x]:
            if y in used:
                continue
            mapping[x] = y
            used.add(y)
            if consistent(x) and backtrack(k + 1):
                return True
            del mapping[x]
            used.discard(y)
        return False

    return backtrack(0)
