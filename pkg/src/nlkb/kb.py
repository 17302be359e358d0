"""The NLP knowledge base: ``word_map``, ``depends`` and ``same_as`` facts
over one chunk's parse, plus the part-of-speech helper goals."""

from __future__ import annotations

from itertools import combinations

from .logiq import (Relation, conj, featurec, fresh, in_interval, membero,
                    run_all)

VERB_TAGS = ("VB", "VBD", "VBG", "VBN", "VBP", "VBZ")
# NNPS is not in the original helper set; proper plurals are nouns too
NOUN_TAGS = ("NNP", "NN", "NNS", "PRP", "PRP$", "NNPS")
WH_TAGS = ("WDT", "WP", "WP$", "WRB")
DETERMINER_TAGS = ("DT",)
ADJECTIVE_TAGS = ("JJ", "JJR", "JJS")
PRONOUN_TAGS = ("PRP", "PRP$")


class KnowledgeBase:
    def __init__(self, bundle=None):
        self.bundle = bundle
        self.word_map = Relation("word-map", 1)
        self.depends = Relation("depends", 3)
        self.same_as = Relation("same-as", 2)
        self.triple = Relation("triple", 1)
        # (subject, predicate, object, triple), indexed per position
        self.triple_spo = Relation("triple-spo", 4)

    # -- helper goals --------------------------------------------------------

    def tago(self, w, tags):
        tag = fresh()
        return conj(self.word_map(w), featurec(w, {"tag": tag}), membero(tag, list(tags)))

    def verbo(self, w):
        return self.tago(w, VERB_TAGS)

    def nouno(self, w):
        return self.tago(w, NOUN_TAGS)

    def wh_wordo(self, w):
        return self.tago(w, WH_TAGS)

    def adjectiveo(self, w):
        return self.tago(w, ADJECTIVE_TAGS)

    def determinero(self, w):
        return self.tago(w, DETERMINER_TAGS)

    def with_triples(self):
        out = KnowledgeBase.__new__(KnowledgeBase)
        out.__dict__.update(self.__dict__)
        out.triple = Relation("triple", 1)
        out.triple_spo = Relation("triple-spo", 4)
        return out

    def add_triple(self, t):
        self.triple.add(t)
        self.triple_spo.add(t.subject, t.predicate, t.object, t)

    # -- convenience ---------------------------------------------------------

    @property
    def words(self):
        return [f[0] for f in self.word_map.facts]

    def linked(self, w):
        """Every word ``v`` with ``same_as(w, v)``."""
        v = fresh()
        return run_all(v, self.same_as(w, v))

    def __repr__(self):
        return (f"KnowledgeBase({len(self.word_map)} words, {len(self.depends)} edges, "
                f"{len(self.same_as)} same-as, {len(self.triple)} triples)")


def _symmetric(pairs):
    out = []
    for a, b in pairs:
        out += [(a, b), (b, a), (a, a), (b, b)]
    return out


def mention_words(kb, mention):
    """Word maps inside a mention's token range, found with an interval
    constraint on the token index."""
    start, end = mention.index_span
    q, index, tag = fresh(3)
    return run_all(q, conj(
        kb.word_map(q),
        featurec(q, {"index": index, "tag": tag, "sentence": mention.sentence}),
        in_interval(index, start, end - 1),
    ))


def same_as_rule_coref(kb, bundle):
    allowed = set(NOUN_TAGS) | set(DETERMINER_TAGS)
    pairs = []
    for cluster in bundle.clusters:
        words = []
        for m in cluster.mentions:
            words += [w for w in mention_words(kb, m) if w.tag in allowed]
        seen = list(dict.fromkeys(words))
        pairs += [(w, w) for w in seen]
        for a, b in combinations(seen, 2):
            pairs += [(a, b), (b, a)]
    return pairs


def same_as_rule_nn(kb):
    w1, w2 = fresh(2)
    found = run_all((w1, w2), conj(kb.depends(w1, "nn", w2), kb.nouno(w1), kb.nouno(w2)))
    return _symmetric(found)


def same_as_rule_wh(kb):
    w1, w2, w, reln = fresh(4)
    found = run_all((w1, w2), conj(
        kb.wh_wordo(w1),
        kb.depends(w1, "nsubj", w),
        kb.depends(w, reln, w2),
        kb.nouno(w2),
    ))
    return _symmetric(found)


def build_kb(bundle):
    kb = KnowledgeBase(bundle)
    for w in bundle.words:
        kb.word_map.add(w)
    for e in bundle.edges:
        kb.depends.add(bundle.word(e.dep), e.reln, bundle.word(e.gov))
    for a, b in (same_as_rule_coref(kb, bundle) + same_as_rule_nn(kb)
                 + same_as_rule_wh(kb)):
        kb.same_as.add(a, b)
    return kb
