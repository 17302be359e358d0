"""Document data model: sentences, word maps, dependency edges, coreference
clusters, and loading them from parse-bundle JSON."""

from __future__ import annotations

import json
from collections.abc import Mapping
from dataclasses import dataclass, field

COLLAPSE_HEADS = ("prep", "prepc", "conj")


class BundleError(ValueError):
    """A parse bundle violates the schema or one of its invariants."""

    def __init__(self, where, message):
        super().__init__(f"{where}: {message}")
        self.where = where
        self.msg = message


class _Record(Mapping):
    """Dataclass records that also behave as read-only mappings, so the
    logic engine can match them with ``featurec``."""

    _keys: tuple = ()

    def __getitem__(self, key):
        if key not in self._keys:
            raise KeyError(key)
        return getattr(self, key)

    def __iter__(self):
        return iter(self._keys)

    def __len__(self):
        return len(self._keys)

    # Mapping would otherwise replace the dataclass __eq__/__hash__
    def __eq__(self, other):
        if self is other:
            return True
        return type(self) is type(other) and self._astuple() == other._astuple()

    def __hash__(self):
        h = self.__dict__.get("_hash")
        if h is None:
            # frozen, so the hash can be cached
            h = hash((type(self).__name__, self._astuple()))
            object.__setattr__(self, "_hash", h)
        return h

    def _astuple(self):
        return tuple(getattr(self, k) for k in self._keys)


@dataclass(frozen=True, eq=False, repr=False)
class WordMap(_Record):
    sentence: int
    index: int
    span: tuple
    tag: str
    lemma: str
    token: str

    _keys = ("sentence", "index", "span", "tag", "lemma", "token")

    @property
    def key(self):
        return (self.sentence, self.index)

    def __repr__(self):
        return f"{self.token}({self.sentence},{self.index})"


@dataclass(frozen=True)
class SentenceMap:
    index: int
    span: tuple
    text: str


@dataclass(frozen=True)
class DependencyEdge:
    dep: tuple
    reln: object  # str, or (head, tail) for collapsed relations
    gov: tuple


@dataclass(frozen=True)
class Mention:
    sentence: int
    index_span: tuple
    text: str


@dataclass(frozen=True)
class MentionCluster:
    cluster_id: int
    mentions: tuple


@dataclass(frozen=True)
class Sentence:
    """One sentence with its word maps and semantic-graph edges."""

    info: SentenceMap
    words: tuple
    edges: tuple

    @property
    def index(self):
        return self.info.index

    @property
    def span(self):
        return self.info.span


@dataclass(frozen=True)
class ParseBundle:
    text: str
    sentences: tuple = ()
    clusters: tuple = ()
    _words: dict = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        words = {w.key: w for s in self.sentences for w in s.words}
        object.__setattr__(self, "_words", words)

    @property
    def words(self):
        return [w for s in self.sentences for w in s.words]

    @property
    def edges(self):
        return [e for s in self.sentences for e in s.edges]

    def word(self, key):
        return self._words.get(tuple(key))


def split_relation(raw):
    """``"prep_of"`` -> ``("prep", "of")``; names without a collapse prefix
    pass through unchanged."""
    if not isinstance(raw, str):
        return tuple(raw)
    head, sep, tail = raw.partition("_")
    if sep and tail and head in COLLAPSE_HEADS:
        return (head, tail)
    return raw


def word_at(bundle, offset):
    for w in bundle.words:
        a, b = w.span
        if a <= offset < b:
            return w
    return None


def sentence_at(bundle, offset):
    for s in bundle.sentences:
        a, b = s.span
        if a <= offset < b:
            return s
    return None


# --- JSON ---------------------------------------------------------------------

def _pair(value, where):
    if (not isinstance(value, (list, tuple)) or len(value) != 2
            or not all(isinstance(v, int) and not isinstance(v, bool) for v in value)):
        raise BundleError(where, f"expected a pair of integers, got {value!r}")
    return tuple(value)


def _get(obj, key, kind, where):
    if not isinstance(obj, dict):
        raise BundleError(where, "expected an object")
    if key not in obj:
        raise BundleError(where, f"missing key {key!r}")
    value = obj[key]
    if kind is int and (isinstance(value, bool) or not isinstance(value, int)):
        raise BundleError(f"{where}.{key}", f"expected an integer, got {value!r}")
    if kind is not int and not isinstance(value, kind):
        raise BundleError(f"{where}.{key}", f"expected {kind.__name__}, got {type(value).__name__}")
    return value


def _span(value, where, limit):
    a, b = _pair(value, where)
    if not 0 <= a <= b <= limit:
        raise BundleError(where, f"span [{a},{b}) out of range [0,{limit}]")
    return (a, b)


def bundle_from_dict(data):
    text = _get(data, "text", str, "bundle")
    n = len(text)
    sentences = []
    seen = set()
    prev_end = 0
    for i, sd in enumerate(_get(data, "sentences", list, "bundle")):
        where = f"sentences[{i}]"
        idx = _get(sd, "index", int, where)
        if idx != i:
            raise BundleError(where, f"index {idx} out of order (expected {i})")
        span = _span(_get(sd, "span", list, where), f"{where}.span", n)
        if span[0] < prev_end:
            raise BundleError(f"{where}.span", "overlaps the previous sentence")
        prev_end = span[1]
        stext = _get(sd, "text", str, where)
        if text[span[0]:span[1]] != stext:
            raise BundleError(f"{where}.text", f"{stext!r} does not match the chunk text at {list(span)}")
        words = []
        for j, td in enumerate(_get(sd, "tokens", list, where)):
            tw = f"{where}.tokens[{j}]"
            widx = _get(td, "index", int, tw)
            if widx < 1:
                raise BundleError(f"{tw}.index", "token indices start at 1")
            if (idx, widx) in seen:
                raise BundleError(tw, f"duplicate word ({idx},{widx})")
            seen.add((idx, widx))
            wspan = _span(_get(td, "span", list, tw), f"{tw}.span", n)
            token = _get(td, "token", str, tw)
            if text[wspan[0]:wspan[1]] != token:
                raise BundleError(f"{tw}.token", f"{token!r} does not match the chunk text at {list(wspan)}")
            words.append(WordMap(idx, widx, wspan, _get(td, "tag", str, tw),
                                 _get(td, "lemma", str, tw), token))
        edges = []
        for j, ed in enumerate(_get(sd, "edges", list, where)):
            ew = f"{where}.edges[{j}]"
            dep = _pair(_get(ed, "dep", list, ew), f"{ew}.dep")
            gov = _pair(_get(ed, "gov", list, ew), f"{ew}.gov")
            raw = ed.get("reln") if isinstance(ed, dict) else None
            if isinstance(raw, str) and raw:
                reln = split_relation(raw)
            elif isinstance(raw, list) and len(raw) == 2 and all(isinstance(r, str) for r in raw):
                reln = tuple(raw)
            else:
                raise BundleError(f"{ew}.reln", f"expected a name or a [head, tail] pair, got {raw!r}")
            if dep[0] != gov[0]:
                raise BundleError(ew, f"dependent sentence {dep[0]} differs from governor sentence {gov[0]}")
            if dep[0] != idx:
                raise BundleError(ew, f"edge belongs to sentence {dep[0]}, listed under {idx}")
            edges.append(DependencyEdge(dep, reln, gov))
        sentences.append(Sentence(SentenceMap(idx, span, stext), tuple(words), tuple(edges)))

    for s in sentences:
        for j, e in enumerate(s.edges):
            for end in (e.dep, e.gov):
                if end not in seen:
                    raise BundleError(f"sentences[{s.index}].edges[{j}]", f"unknown word {list(end)}")

    clusters = []
    for i, cd in enumerate(_get(data, "corefClusters", list, "bundle")):
        where = f"corefClusters[{i}]"
        mentions = []
        for j, md in enumerate(_get(cd, "mentions", list, where)):
            mw = f"{where}.mentions[{j}]"
            sent = _get(md, "sentence", int, mw)
            a, b = _pair(_get(md, "indexSpan", list, mw), f"{mw}.indexSpan")
            if a >= b or any((sent, k) not in seen for k in range(a, b)):
                raise BundleError(f"{mw}.indexSpan", f"tokens [{a},{b}) not in sentence {sent}")
            mentions.append(Mention(sent, (a, b), _get(md, "text", str, mw)))
        if not mentions:
            raise BundleError(where, "cluster has no mentions")
        clusters.append(MentionCluster(_get(cd, "id", int, where), tuple(mentions)))

    return ParseBundle(text, tuple(sentences), tuple(clusters))


def load_parse_bundle(content):
    if isinstance(content, bytes):
        content = content.decode("utf-8")
    try:
        data = json.loads(content)
    except json.JSONDecodeError as e:
        raise BundleError("json", str(e)) from None
    return bundle_from_dict(data)


def bundle_to_dict(bundle):
    return {
        "text": bundle.text,
        "sentences": [
            {
                "index": s.index,
                "span": list(s.span),
                "text": s.info.text,
                "tokens": [
                    {"index": w.index, "span": list(w.span), "tag": w.tag,
                     "lemma": w.lemma, "token": w.token}
                    for w in s.words
                ],
                "edges": [
                    {"dep": list(e.dep),
                     "reln": e.reln if isinstance(e.reln, str) else list(e.reln),
                     "gov": list(e.gov)}
                    for e in s.edges
                ],
            }
            for s in bundle.sentences
        ],
        "corefClusters": [
            {"id": c.cluster_id,
             "mentions": [{"sentence": m.sentence, "indexSpan": list(m.index_span),
                           "text": m.text} for m in c.mentions]}
            for c in bundle.clusters
        ],
    }


def dump_parse_bundle(bundle):
    return json.dumps(bundle_to_dict(bundle), indent=1, ensure_ascii=False)


def empty_bundle(text=""):
    return ParseBundle(text)
