"""
Annotation streams and the annotators built on them.

A stream is a list of ``plain(n)`` / ``annotate(n, annotations)`` operations
whose counts add up to the length of the annotated text. Annotators work on
one chunk; ``project_to_global`` pads their output to the whole document.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import dot, tables
from .drawspec import to_dot
from .nlpdoc import sentence_at, word_at
from .reconciler import UnparsedChunk, annotation_value
from .triples import word_groups

ANNOTATION_TYPES = ("Class", "Tooltip", "WarningMessage", "Output")


class StreamError(ValueError):
    pass


@dataclass(frozen=True)
class AnnotationOp:
    kind: str  # "plain" | "annotate"
    n: int
    annotations: tuple = ()

    def __post_init__(self):
        if self.kind not in ("plain", "annotate"):
            raise StreamError(f"unknown stream operation {self.kind!r}")
        if isinstance(self.n, bool) or not isinstance(self.n, int) or self.n < 0:
            raise StreamError(f"{self.kind} needs a non-negative count, got {self.n!r}")
        for a in self.annotations:
            if len(a) != 2 or a[0] not in ANNOTATION_TYPES:
                raise StreamError(f"bad annotation {a!r}")

    def to_json(self):
        if self.kind == "plain":
            return ["plain", self.n]
        return ["annotate", self.n, [list(a) for a in self.annotations]]


def plain(n):
    return AnnotationOp("plain", n)


def annotate(n, annotations):
    return AnnotationOp("annotate", n, tuple(tuple(a) for a in annotations))


def stream_length(ops):
    return sum(op.n for op in ops)


def stream_to_json(ops):
    return [op.to_json() for op in ops]


def stream_from_json(data):
    ops = []
    for item in data:
        if item and item[0] == "plain" and len(item) == 2:
            ops.append(plain(item[1]))
        elif item and item[0] == "annotate" and len(item) == 3:
            ops.append(annotate(item[1], item[2]))
        else:
            raise StreamError(f"bad stream operation {item!r}")
    return ops


def apply_stream(text, ops):
    """The annotated ``((start, end), annotations)`` spans, in order."""
    if stream_length(ops) != len(text):
        raise StreamError(f"stream covers {stream_length(ops)} characters, text has {len(text)}")
    out, cursor = [], 0
    for op in ops:
        if op.kind == "annotate":
            out.append(((cursor, cursor + op.n), op.annotations))
        cursor += op.n
    return out


def normalize(ops):
    """Drop ``plain(0)`` and merge neighbouring plain operations."""
    out = []
    for op in ops:
        if op.kind == "plain":
            if op.n == 0:
                continue
            if out and out[-1].kind == "plain":
                out[-1] = plain(out[-1].n + op.n)
                continue
        out.append(op)
    return out


def project_to_global(ops, chunk_span, document_length):
    start, end = chunk_span
    return normalize([plain(start), *ops, plain(document_length - end)])


def from_spans(length, spans):
    """Build a stream from possibly overlapping ``((a, b), annotations)``
    spans. Overlaps are cut into segments carrying every covering
    annotation, in input order."""
    spans = [((a, b), tuple(anns)) for (a, b), anns in spans if a < b]
    for (a, b), _ in spans:
        if a < 0 or b > length:
            raise StreamError(f"span [{a},{b}) outside text of length {length}")
    cuts = sorted({0, length, *(x for (a, b), _ in spans for x in (a, b))})
    ops = []
    for lo, hi in zip(cuts, cuts[1:]):
        anns = []
        for (a, b), these in spans:
            if a <= lo and hi <= b:
                anns += [x for x in these if x not in anns]
        ops.append(annotate(hi - lo, anns) if anns else plain(hi - lo))
    return normalize(ops)


def empty_stream(length):
    return normalize([plain(length)])


# --- annotators -----------------------------------------------------------------

def _whole(chunk, annotations):
    return [annotate(len(chunk.text), annotations)]


def _highlights(chunk, words, extra=lambda w: ()):
    return from_spans(len(chunk.text),
                      [(w.span, (("Class", "same-as"), *extra(w))) for w in words])


def _graph_dot(sentence):
    nodes = [(f"{w.index}", {"label": w.token}) for w in sentence.words]
    edges = [(f"{e.gov[1]}", f"{e.dep[1]}",
              {"label": e.reln if isinstance(e.reln, str) else "_".join(e.reln)})
             for e in sentence.edges]
    return dot.render(f"sentence-{sentence.info.index}", nodes, edges)


def semantic_graph(chunk, cursor, parses):
    bundle = annotation_value(chunk, "corenlp-annotation", parses)
    sentence = sentence_at(bundle, cursor)
    if sentence is None:
        return empty_stream(len(chunk.text))
    return from_spans(len(chunk.text), [(sentence.span, [("Class", "sentence"),
                                                     ("Output", _graph_dot(sentence))])])


def coref_cluster(chunk, cursor, parses):
    lines = []
    for c in annotation_value(chunk, "coref-chain-map", parses):
        mentions = "; ".join(f"{m.text} [{m.sentence}:{m.index_span[0]}-{m.index_span[1]}]"
                             for m in c.mentions)
        lines.append(f"cluster {c.cluster_id}: {mentions}")
    return _whole(chunk, [("Output", "\n".join(lines) + "\n" if lines else "")])


def _cursor_group(chunk, cursor, parses):
    bundle = annotation_value(chunk, "corenlp-annotation", parses)
    w = word_at(bundle, cursor)
    if w is None:
        return None
    kb = annotation_value(chunk, "knowledge-base", parses)
    return word_groups(kb).get(w, (w,))


def same_as(chunk, cursor, parses):
    group = _cursor_group(chunk, cursor, parses)
    if group is None:
        return empty_stream(len(chunk.text))
    return _highlights(chunk, group)


def reified_name(chunk, cursor, parses):
    group = _cursor_group(chunk, cursor, parses)
    if group is None:
        return empty_stream(len(chunk.text))
    _, groups = annotation_value(chunk, "reified-triples", parses)
    symbol = {g.group: g.symbol for g in groups}.get(group)
    return _highlights(chunk, group, lambda w: (("Tooltip", symbol),) if symbol else ())


def triples(chunk, cursor, parses):
    return _whole(chunk, [("Output", tables.triples_table(annotation_value(chunk, "triples", parses)))])


def grouped_triples(chunk, cursor, parses):
    return _whole(chunk, [("Output", tables.grouped_table(
        annotation_value(chunk, "grouped-triples", parses)))])


def reified_triples(chunk, cursor, parses):
    reified, _ = annotation_value(chunk, "reified-triples", parses)
    return _whole(chunk, [("Output", tables.reified_table(reified))])


def draw(chunk, cursor, parses):
    result = annotation_value(chunk, "draw", parses)
    return _whole(chunk, [("Output", to_dot(result.graph))])


def draw_warnings(chunk, cursor, parses):
    bundle = annotation_value(chunk, "corenlp-annotation", parses)
    result = annotation_value(chunk, "draw", parses)
    spans = []
    for w in result.warnings:
        span = bundle.sentences[w.sentence].info.span if bundle.sentences else (0, len(chunk.text))
        spans.append((span, [("WarningMessage", f"{w.kind}: {w.message}")]))
    return from_spans(len(chunk.text), spans)


def draw_warning_highlights(chunk, cursor, parses):
    result = annotation_value(chunk, "draw", parses)
    return from_spans(len(chunk.text), [(h, [("Class", "warning"), ("WarningMessage", w.kind)])
                                        for w in result.warnings for h in w.highlights])


ANNOTATORS = {
    "semantic-graph": semantic_graph,
    "coref-cluster": coref_cluster,
    "same-as": same_as,
    "triples": triples,
    "grouped-triples": grouped_triples,
    "reified-triples": reified_triples,
    "reified-name": reified_name,
    "draw": draw,
    "draw-warnings": draw_warnings,
    "draw-warning-highlights": draw_warning_highlights,
}
ANNOTATOR_NAMES = ("chunk-separators", *ANNOTATORS)


def annotator(name, chunk, cursor, parses):
    """Chunk-local stream for a chunk-, sentence- or word-level annotator."""
    if name not in ANNOTATORS:
        raise KeyError(f"unknown annotator {name!r}")
    try:
        ops = ANNOTATORS[name](chunk, cursor, parses)
    except UnparsedChunk as e:
        ops = _whole(chunk, [("WarningMessage", str(e))])
    return normalize(ops)


def chunk_separators(state):
    return from_spans(len(state.document),
                      [(s, [("Class", "chunk-separator")]) for s in state.separators])


def annotate_document(state, name, offset, parses):
    """Global stream for ``name`` with the cursor at a document offset."""
    if name == "chunk-separators":
        return chunk_separators(state)
    if name not in ANNOTATORS:
        raise KeyError(f"unknown annotator {name!r}")
    chunk = state.chunk_at(offset)
    if chunk is None:
        return empty_stream(len(state.document))
    local = annotator(name, chunk, offset - chunk.span[0], parses)
    return project_to_global(local, chunk.span, len(state.document))
