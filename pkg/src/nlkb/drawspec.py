"""
Draw a graph from text.

Nodes are word groups mentioning "node"; named edges come from a subject walk
over ``:start/:at/:go/:to`` triples, unnamed edges from ``:connect`` triples.
Lengths come either from "<nodes> have a distance of N cm" (an object walk) or
from "<edge> is N cm long" (a ``:be`` chain). Problems are reported as
warnings instead of exceptions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import dot
from .logiq import conj, featurec, fresh, run_all
from .walks import group_has, object_walk, subject_walk

WARNING_KINDS = ("duplicate-edge", "contradictory-length", "non-integer-length",
                 "unsupported-unit", "unfinished-spec", "singleton-node")
SUPPORTED_UNITS = ("cm",)

NAMED_EDGE_WALK = [(":start", "O1", {"lemma": "Edge"}), (":at", "O1"),
                   (":go", "O2"), (":to", "O2")]
DISTANCE_WALK = [(":have", "O3", {"lemma": "distance"}), (":of", "O4"),
                 (":be", "O5", {"tag": "CD"})]


@dataclass(frozen=True)
class Node:
    symbol: str
    label: str
    group: tuple = field(compare=False, repr=False)


@dataclass(frozen=True)
class Length:
    magnitude: int
    unit: str


@dataclass
class Edge:
    endpoints: tuple
    directed: bool
    label: str = None
    symbol: str = None
    length: Length = None
    provenance: tuple = ()


@dataclass(frozen=True)
class Warning:
    kind: str
    message: str
    highlights: tuple
    sentence: int

    def to_json(self):
        return {"kind": self.kind, "message": self.message, "sentence": self.sentence,
                "highlights": [list(h) for h in self.highlights]}


@dataclass
class GraphSpec:
    nodes: list
    edges: list

    def canonical(self):
        """A symbol-free view for comparing graphs across phrasings."""
        labels = {n.symbol: n.label for n in self.nodes}
        edges = []
        for e in self.edges:
            ends = tuple(labels[s] for s in e.endpoints)
            if not e.directed:
                ends = tuple(sorted(ends))
            length = (e.length.magnitude, e.length.unit) if e.length else None
            edges.append((ends, e.directed, e.label, length))
        return (tuple(sorted(labels.values())), tuple(sorted(edges, key=repr)))


def _warn(kind, message, words):
    words = sorted(set(words), key=lambda w: w.key)
    return Warning(kind, message, tuple(w.span for w in words),
                   words[0].sentence if words else 0)


def _lemma_is(w, lemma):
    return w.lemma.lower() == lemma


def _label_after(group, type_lemma, bundle_words):
    """Token right after the type word ("node", "edge") within the group."""
    members = {w.key for w in group}
    for w in group:
        if _lemma_is(w, type_lemma):
            nxt = bundle_words.get((w.sentence, w.index + 1))
            if nxt is not None and nxt.key in members:
                return nxt.token
    return None


def _groups(kb):
    seen = {}
    for (t,) in kb.triple.facts:
        for g in (t.subject, t.object):
            seen.setdefault(g.symbol, g)
    return [seen[k] for k in sorted(seen)]


def _word_index(kb):
    return {w.key: w for w in kb.words}


def collect_nodes(kb):
    words = _word_index(kb)
    nodes, warnings = [], []
    for g in _groups(kb):
        if not any(_lemma_is(w, "node") for w in g.group):
            continue
        label = _label_after(g.group, "node", words)
        if label is None:
            warnings.append(_warn("unfinished-spec", f"node {g.symbol} has no name",
                                  [w for w in g.group if _lemma_is(w, "node")]))
            continue
        nodes.append(Node(g.symbol, label, g.group))
    return nodes, warnings


def _walk_vars(clauses, names):
    return [(p, names[o], *rest) for p, o, *rest in clauses]


def collect_edges(kb, nodes):
    words = _word_index(kb)
    node_syms = {n.symbol for n in nodes}
    edges, warnings = [], []

    t, s0, o1, o2 = fresh(4)
    walk = _walk_vars(NAMED_EDGE_WALK, {"O1": o1, "O2": o2})
    found = run_all((s0, o1, o2), conj(kb.triple(t), featurec(t, {"subject": s0}),
                                       subject_walk(kb, t, walk)))
    named = list(dict.fromkeys((s.symbol, a.symbol, b.symbol) for s, a, b in found))
    groups = {g.symbol: g for g in _groups(kb)}

    partial = run_all(s0, conj(kb.triple(t), featurec(t, {"subject": s0}),
                               subject_walk(kb, t, _walk_vars(NAMED_EDGE_WALK[:1], {"O1": o1}))))
    complete = {s for s, _, _ in named}
    for s in dict.fromkeys(g.symbol for g in partial):
        if s not in complete:
            warnings.append(_warn("unfinished-spec",
                                  f"edge {s} starts somewhere but does not say where it goes",
                                  groups[s].group))

    for sym, a, b in named:
        if a not in node_syms or b not in node_syms:
            continue
        g = groups[sym].group
        edges.append(Edge((a, b), True, _label_after(g, "edge", words), sym,
                          provenance=tuple(w for w in g if _lemma_is(w, "edge")
                                           or w.key in {(x.sentence, x.index + 1) for x in g if _lemma_is(x, "edge")})))

    pairs = {}
    for (tr,) in kb.triple.facts:
        if tr.predicate != ":connect":
            continue
        a, b = tr.subject.symbol, tr.object.symbol
        if a == b or a not in node_syms or b not in node_syms:
            continue
        pairs.setdefault(frozenset((a, b)), (a, b))
    for a, b in pairs.values():
        ga, gb = groups[a].group, groups[b].group
        shared = {w.sentence for w in ga} & {w.sentence for w in gb}
        prov = tuple(w for w in ga + gb if w.sentence in shared)
        edges.append(Edge((a, b), False, provenance=prov))
    return edges, warnings


def _magnitude(token):
    try:
        value = Fraction(token)
    except (ValueError, ZeroDivisionError):
        return None
    return value


def _length_candidate(unit_group, num_group):
    unit_words = [w for w in unit_group.group if w.tag != "CD"] or list(unit_group.group)
    num_words = [w for w in num_group.group if w.tag == "CD"]
    return unit_words[0], num_words[0]


def _check_length(unit_w, num_w, what):
    """Returns ``(Length or None, warnings)``."""
    value = _magnitude(num_w.token)
    if unit_w.lemma.lower() not in SUPPORTED_UNITS:
        return None, [_warn("unsupported-unit",
                            f"{what}: unit {unit_w.token!r} is not supported (use cm)",
                            [unit_w, num_w])]
    if value is None or value.denominator != 1:
        return None, [_warn("non-integer-length",
                            f"{what}: length {num_w.token!r} is not an integer",
                            [num_w, unit_w])]
    return Length(int(value), unit_w.lemma.lower()), []


def collect_lengths(kb, edges):
    warnings = []
    candidates = {}  # id(edge) -> [(num word, unit word)]

    def edge_between(a, b):
        return [e for e in edges if set(e.endpoints) == {a, b}]

    # "<A> and <B> have a distance of N cm"
    t, o0, o3, o4, o5 = fresh(5)
    walk = _walk_vars(DISTANCE_WALK, {"O3": o3, "O4": o4, "O5": o5})
    found = run_all((o0, o3, o4, o5), conj(kb.triple(t), featurec(t, {"object": o0}),
                                           object_walk(kb, t, walk)))
    by_distance = {}
    for end, dist, unit, num in found:
        by_distance.setdefault((dist.symbol, unit.symbol, num.symbol), ({}, dist, unit, num))[0][end.symbol] = end
    node_syms = {s for e in edges for s in e.endpoints}
    for (_, _, _), (ends, dist, unit, num) in by_distance.items():
        ends = [s for s in ends if s in node_syms]
        unit_w, num_w = _length_candidate(unit, num)
        targets = edge_between(*ends) if len(ends) == 2 else []
        if not targets:
            warnings.append(_warn("unfinished-spec",
                                  f"distance {num_w.token} {unit_w.token} does not belong to exactly one connection",
                                  list(dist.group) + [unit_w, num_w]))
            continue
        for e in targets:
            candidates.setdefault(id(e), []).append((num_w, unit_w))

    # "<edge> is N cm long"
    e_sym, t2, long_g, u, n = fresh(5)
    found = run_all((e_sym, u, n), conj(
        kb.triple(t2),
        featurec(t2, {"subject": e_sym, "predicate": ":be", "object": long_g}),
        group_has(long_g, {"lemma": "long"}),
        object_walk(kb, t2, [(":be", u), (":be", n, {"tag": "CD"})]),
    ))
    for sym, unit, num in dict.fromkeys((s.symbol, a, b) for s, a, b in found):
        unit_w, num_w = _length_candidate(unit, num)
        for e in edges:
            if e.symbol == sym:
                candidates.setdefault(id(e), []).append((num_w, unit_w))

    for e in edges:
        found = sorted(set(candidates.get(id(e), [])), key=lambda c: c[0].key)
        name = e.label or "-".join(e.endpoints)
        valid = []
        for num_w, unit_w in found:
            length, w = _check_length(unit_w, num_w, f"edge {name}")
            warnings += w
            if length is not None:
                valid.append((length, num_w, unit_w))
        if not valid:
            continue
        e.length = valid[0][0]
        if len({v[0] for v in valid}) > 1:
            values = ", ".join(f"{v[0].magnitude} {v[0].unit}" for v in valid)
            warnings.append(_warn("contradictory-length",
                                  f"edge {name} has different lengths: {values}",
                                  [w for v in valid for w in v[1:]]))
    return edges, warnings


def check_consistency(graph):
    warnings = []
    labels = {n.symbol: n.label for n in graph.nodes}
    named = [e for e in graph.edges if e.directed]
    unnamed = [e for e in graph.edges if not e.directed]
    for e in named:
        for u in unnamed:
            if set(e.endpoints) == set(u.endpoints):
                a, b = (labels[s] for s in e.endpoints)
                warnings.append(_warn("duplicate-edge",
                                      f"the edge {e.label} between {a} and {b} is specified twice",
                                      e.provenance + u.provenance))
    by_symbol = {}
    for e in named:
        by_symbol.setdefault(e.symbol, []).append(e)
    for sym, es in by_symbol.items():
        if len(es) > 1:
            warnings.append(_warn("duplicate-edge", f"edge {es[0].label} is specified {len(es)} times",
                                  [w for e in es for w in e.provenance]))
    degree = {n.symbol: 0 for n in graph.nodes}
    for e in graph.edges:
        for s in e.endpoints:
            degree[s] = degree.get(s, 0) + 1
    for n in graph.nodes:
        if degree[n.symbol] == 0:
            warnings.append(_warn("singleton-node", f"node {n.label} is not connected to anything",
                                  [w for w in n.group if _lemma_is(w, "node")] or n.group))
    return warnings


@dataclass
class DrawResult:
    graph: GraphSpec
    warnings: list


def draw(kb):
    """Run every collection stage over a knowledge base that already holds
    the ``triple`` relation."""
    nodes, warnings = collect_nodes(kb)
    edges, w = collect_edges(kb, nodes)
    warnings += w
    edges, w = collect_lengths(kb, edges)
    warnings += w
    graph = GraphSpec(nodes, edges)
    warnings += check_consistency(graph)
    return DrawResult(graph, warnings)


def edge_caption(e):
    length = f"{e.length.magnitude} {e.length.unit}" if e.length else None
    if e.label and length:
        return f"{e.label} ({length})"
    return e.label or length


def to_dot(graph, name="draw"):
    labels = {n.symbol: n.label for n in graph.nodes}
    nodes = sorted(graph.nodes, key=lambda n: (n.label, n.symbol))

    def order(e):
        ends = [labels[s] for s in e.endpoints]
        return (not e.directed, e.label or "", ends if e.directed else sorted(ends))
    edges = []
    for e in sorted(graph.edges, key=order):
        a, b = e.endpoints
        if not e.directed and labels[b] < labels[a]:
            a, b = b, a
        edges.append((a, b, {"label": edge_caption(e), "dir": None if e.directed else "none"}))
    return dot.render(name, [(n.symbol, {"label": n.label}) for n in nodes], edges)
