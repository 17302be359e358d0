"""
Document chunking, edit replay and the lazy per-chunk annotation table.

A document is split at every ``"\\n----\\n"``. Each chunk keeps a cache of
annotation values that are computed on first request, pulling in only the
keys they depend on.
"""

from __future__ import annotations

import os
import threading
from dataclasses import dataclass, field

from .drawspec import draw
from .kb import build_kb
from .nlpdoc import ParseBundle, empty_bundle, load_parse_bundle
from .ontol import export_turtle
from .triples import extend_kb_with_triples, extract_triples, group_triples, reify

SEPARATOR = "\n----\n"


# --- chunking -------------------------------------------------------------------

@dataclass(frozen=True)
class Piece:
    span: tuple
    text: str


def chunk_text(document):
    """Returns ``(chunks, separators)``: a list of :class:`Piece` and a list
    of separator spans. Together they tile the document."""
    chunks, separators = [], []
    start = 0
    while True:
        at = document.find(SEPARATOR, start)
        if at < 0:
            chunks.append(Piece((start, len(document)), document[start:]))
            return chunks, separators
        chunks.append(Piece((start, at), document[start:at]))
        separators.append((at, at + len(SEPARATOR)))
        start = at + len(SEPARATOR)


# --- edit operations ------------------------------------------------------------

class EditError(ValueError):
    pass


@dataclass(frozen=True)
class EditOp:
    kind: str  # "retain" | "insert" | "delete"
    value: object

    def __post_init__(self):
        if self.kind in ("retain", "delete"):
            if isinstance(self.value, bool) or not isinstance(self.value, int) or self.value < 0:
                raise EditError(f"{self.kind} needs a non-negative count, got {self.value!r}")
        elif self.kind == "insert":
            if not isinstance(self.value, str):
                raise EditError(f"insert needs a string, got {self.value!r}")
        else:
            raise EditError(f"unknown edit operation {self.kind!r}")

    def to_json(self):
        return [self.kind, self.value]


def retain(n):
    return EditOp("retain", n)


def insert(s):
    return EditOp("insert", s)


def delete(n):
    return EditOp("delete", n)


def ops_from_json(data):
    ops = []
    for i, item in enumerate(data):
        if not isinstance(item, (list, tuple)) or len(item) != 2:
            raise EditError(f"op {i}: expected [kind, value], got {item!r}")
        try:
            ops.append(EditOp(*item))
        except EditError as e:
            raise EditError(f"op {i}: {e}") from None
    return ops


def apply_edits(text, ops):
    out = []
    cursor = 0
    for i, op in enumerate(ops):
        if op.kind == "insert":
            out.append(op.value)
            continue
        if cursor + op.value > len(text):
            raise EditError(f"op {i}: {op.kind} {op.value} runs past the end "
                            f"(cursor {cursor}, length {len(text)})")
        if op.kind == "retain":
            out.append(text[cursor:cursor + op.value])
        cursor += op.value
    if cursor != len(text):
        raise EditError(f"ops cover {cursor} characters but the text has {len(text)}")
    return "".join(out)


# --- parse providers ------------------------------------------------------------

class UnparsedChunk(LookupError):
    """No parse is available for a chunk's text."""

    def __init__(self, key, text):
        self.key = key
        self.text = text
        preview = text if len(text) <= 40 else text[:37] + "..."
        super().__init__(f"{key}: no parse for chunk {preview!r}")


class ParseProvider:
    def lookup(self, chunk_text):
        """A :class:`ParseBundle` or ``None``."""
        raise NotImplementedError


class FixtureProvider(ParseProvider):
    """Parses keyed by exact chunk text. Blank chunks parse to nothing."""

    def __init__(self, bundles=()):
        self._by_text = {}
        for b in bundles:
            self.add(b)

    def add(self, bundle):
        self._by_text[bundle.text] = bundle

    @classmethod
    def from_dir(cls, path):
        out = cls()
        for name in sorted(os.listdir(path)):
            if name.endswith(".json"):
                with open(os.path.join(path, name), "rb") as f:
                    out.add(load_parse_bundle(f.read()))
        return out

    def lookup(self, chunk_text):
        found = self._by_text.get(chunk_text)
        if found is None and not chunk_text.strip():
            return empty_bundle(chunk_text)
        return found


# --- lazy annotations -----------------------------------------------------------

DEPENDENCIES = {
    "text": (),
    "corenlp-annotation": ("text",),
    "sentences": ("corenlp-annotation",),
    "semantic-graphs": ("corenlp-annotation",),
    "coref-chain-map": ("corenlp-annotation",),
    "knowledge-base": ("semantic-graphs", "coref-chain-map"),
    "triples": ("knowledge-base",),
    "grouped-triples": ("knowledge-base",),
    "reified-triples": ("grouped-triples",),
    "reified-triples-knowledge-base": ("knowledge-base", "reified-triples"),
    "ontology": ("reified-triples",),
    "draw": ("reified-triples-knowledge-base",),
}
ANNOTATION_KEYS = tuple(DEPENDENCIES)


def _parse(text, parses):
    bundle = parses.lookup(text)
    if bundle is None:
        raise UnparsedChunk("corenlp-annotation", text)
    return bundle


def _grouped(kb):
    return group_triples(kb, extract_triples(kb))


COMPUTE = {
    "corenlp-annotation": lambda v, t, p: _parse(t, p),
    "sentences": lambda v, t, p: tuple(s.info for s in v["corenlp-annotation"].sentences),
    "semantic-graphs": lambda v, t, p: v["corenlp-annotation"].sentences,
    "coref-chain-map": lambda v, t, p: v["corenlp-annotation"].clusters,
    "knowledge-base": lambda v, t, p: build_kb(
        ParseBundle(t, v["semantic-graphs"], v["coref-chain-map"])),
    "triples": lambda v, t, p: extract_triples(v["knowledge-base"]),
    "grouped-triples": lambda v, t, p: _grouped(v["knowledge-base"]),
    "reified-triples": lambda v, t, p: reify(v["grouped-triples"]),
    "reified-triples-knowledge-base": lambda v, t, p: extend_kb_with_triples(
        v["knowledge-base"], v["reified-triples"][0]),
    "ontology": lambda v, t, p: export_turtle(*v["reified-triples"]),
    "draw": lambda v, t, p: draw(v["reified-triples-knowledge-base"]),
}


class AnnotationCache:
    """Memoized annotation values of one chunk. ``realized`` lists keys in
    the order they were computed."""

    def __init__(self, text):
        self._lock = threading.RLock()
        self._values = {"text": text}
        self.realized = ["text"]

    def __contains__(self, key):
        return key in self._values

    def keys(self):
        return set(self._values)

    def get(self, key, parses):
        if key not in DEPENDENCIES:
            raise KeyError(f"unknown annotation key {key!r}")
        with self._lock:
            if key in self._values:
                return self._values[key]
            deps = {d: self.get(d, parses) for d in DEPENDENCIES[key]}
            value = COMPUTE[key](deps, self._values["text"], parses)
            self._values[key] = value
            self.realized.append(key)
            return value


@dataclass
class Chunk:
    index: int
    span: tuple
    text: str
    cache: AnnotationCache = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        if self.cache is None:
            self.cache = AnnotationCache(self.text)


def annotation_value(chunk, key, parses):
    return chunk.cache.get(key, parses)


# --- reconciliation -------------------------------------------------------------

@dataclass
class ReconcilerState:
    document: str
    chunks: list
    separators: list
    reinitialized: bool = False
    invalidated: tuple = ()

    @classmethod
    def initial(cls, document):
        pieces, separators = chunk_text(document)
        chunks = [Chunk(i, p.span, p.text) for i, p in enumerate(pieces)]
        return cls(document, chunks, separators, True, tuple(range(len(chunks))))

    def chunk_at(self, offset):
        """The chunk whose span contains ``offset`` (its end included), or
        ``None`` when the offset sits on a separator."""
        for c in self.chunks:
            if c.span[0] <= offset <= c.span[1]:
                return c
        return None


def reconcile(state, ops, parses=None):
    """Apply ``ops`` and carry caches over for chunks whose text did not
    change. ``parses`` is unused while rechunking; values are computed on
    demand later."""
    document = apply_edits(state.document, ops)
    pieces, separators = chunk_text(document)
    if len(pieces) != len(state.chunks):
        return ReconcilerState.initial(document)
    chunks, invalidated = [], []
    for old, p in zip(state.chunks, pieces):
        if old.text == p.text:
            chunks.append(Chunk(old.index, p.span, p.text, old.cache))
        else:
            chunks.append(Chunk(old.index, p.span, p.text))
            invalidated.append(old.index)
    return ReconcilerState(document, chunks, separators, False, tuple(invalidated))


class StaleResult(RuntimeError):
    pass


class Session:
    """Serializes edits to one document. Every edit bumps the generation;
    an annotation computed against an older generation is discarded."""

    def __init__(self, document, parses):
        self.parses = parses
        self._lock = threading.Lock()
        self.generation = 0
        self.state = ReconcilerState.initial(document)

    def edit(self, ops):
        with self._lock:
            self.state = reconcile(self.state, ops, self.parses)
            self.generation += 1
            return self.state

    def annotation(self, index, key):
        with self._lock:
            generation, chunk = self.generation, self.state.chunks[index]
        value = annotation_value(chunk, key, self.parses)
        with self._lock:
            chunks = self.state.chunks
            current = chunks[index].cache if index < len(chunks) else None
            if self.generation != generation and current is not chunk.cache:
                raise StaleResult(f"chunk {index} changed while computing {key}")
        return value
