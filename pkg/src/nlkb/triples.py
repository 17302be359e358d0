"""
Triple builders and reification.

Each builder is a goal over the knowledge base that binds its output variable
to ``(subject, predicate, object, builder)``. Subjects and objects are word
maps; predicates are either word maps or derived keywords such as ``":be"``.
``extract_triples`` runs them all as one disjunction in catalog order.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass

from .kb import ADJECTIVE_TAGS, NOUN_TAGS, PRONOUN_TAGS, WH_TAGS, DETERMINER_TAGS
from .logiq import (committed, conde, conj, eq, fail, fresh, membero, project,
                    run_all, succeed)
from .nlpdoc import WordMap, _Record

FINITE_VERB_TAGS = ("VBD", "VBP", "VBZ")
NOMINAL_TAGS = tuple(t for t in NOUN_TAGS if t not in PRONOUN_TAGS)


@dataclass(frozen=True)
class Triple:
    subject: WordMap
    predicate: object  # WordMap or ":keyword"
    object: WordMap
    builder: str


def predicate_display(p):
    return p if isinstance(p, str) else p.lemma


def _derived(out, s, keyword_var, o, name):
    """Bind ``out`` to a triple whose predicate is ``":" + keyword``."""
    return project([keyword_var], lambda k: eq(out, (s, ":" + k.lower(), o, name)))


def _lacks(goal):
    return committed([[goal, fail], [succeed]])


# --- builders -------------------------------------------------------------------

def nsubj_amod(kb, out, name="nsubj-amod"):
    n, a = fresh(2)
    return conj(kb.depends(a, "amod", n), kb.nouno(n), kb.adjectiveo(a),
                eq(out, (n, ":be", a, name)))


def nsubj_pred_dobj(kb, out, name="nsubj-pred-dobj"):
    s, v, o = fresh(3)
    return conj(kb.depends(s, "nsubj", v), kb.verbo(v), kb.nouno(s),
                kb.depends(o, "dobj", v), eq(out, (s, v, o, name)))


def nsubj_vb(kb, out, name="nsubj-VB"):
    # The finite verb is either the subject's governor or, when the governor
    # is a copular predicate, its copula.
    s, x, v = fresh(3)
    return conj(kb.depends(s, "nsubj", x), kb.nouno(s),
                conde([eq(v, x)], [kb.depends(v, "cop", x)]),
                kb.tago(v, FINITE_VERB_TAGS),
                eq(out, (s, ":be", v, name)))


def nsubj_adj_cop(kb, out, name="nsubj-adj-cop"):
    s, a, c, u = fresh(4)
    return conj(kb.depends(s, "nsubj", a), kb.adjectiveo(a), kb.depends(c, "cop", a),
                _lacks(kb.depends(u, "npadvmod", a)),
                eq(out, (s, c, a, name)))


def nsubj_advmod(kb, out, name="nsubj-advmod"):
    s, a, c, u = fresh(4)
    return conj(kb.depends(s, "nsubj", a), kb.adjectiveo(a), kb.depends(c, "cop", a),
                kb.depends(u, "npadvmod", a),
                eq(out, (s, c, a, name)))


def nsubj_pred_acomp(kb, out, name="nsubj-pred-acomp"):
    s, v, a = fresh(3)
    return conj(kb.depends(s, "nsubj", v), kb.verbo(v), kb.depends(a, "acomp", v),
                eq(out, (s, v, a, name)))


def nsubj_pred_xcomp(kb, out, name="nsubj-pred-xcomp"):
    s, v1, v2, o = fresh(4)
    return conj(kb.depends(s, "nsubj", v1), kb.depends(v2, "xcomp", v1), conde(
        [eq(out, (s, v1, v2, name))],
        [kb.depends(o, "dobj", v2), eq(out, (s, v2, o, name))],
    ))


def nsubjpass_pred_agent(kb, out, name="nsubjpass-pred-agent"):
    s, v, a = fresh(3)
    return conj(kb.depends(s, "nsubjpass", v), kb.depends(a, "agent", v),
                eq(out, (a, v, s, name)))


def agent_ccomp_dobj(kb, out, name="agent-ccomp-dobj"):
    a, v, c, o = fresh(4)
    return conj(kb.depends(a, "agent", v), kb.depends(c, "ccomp", v),
                kb.depends(o, "dobj", c), eq(out, (a, ":about", o, name)))


def possessive(kb, out, name="possessive"):
    p, n = fresh(2)
    return conj(kb.depends(p, "poss", n), eq(out, (p, ":have", n, name)))


def nsubjpass_ccomp(kb, out, name="nsubjpass-ccomp", clause_relations=("nsubjpass", "ccomp")):
    v, n1, n2, r, c = fresh(5)
    return conj(
        kb.depends(n2, ("conj", c), n1), kb.nouno(n1), kb.nouno(n2),
        kb.depends(n1, r, v), membero(r, list(clause_relations)), kb.verbo(v),
        conde([eq(out, (n1, v, n2, name))], [eq(out, (n2, v, n1, name))]),
    )


def prep_noun(kb, out, name="prep-noun"):
    s, o, p = fresh(3)
    return conj(kb.depends(o, ("prep", p), s), kb.nouno(s), kb.nouno(o),
                _derived(out, s, p, o, name))


def noun_prep_noun(kb, out, name="noun-prep-noun"):
    s, v, m, p = fresh(4)
    return conj(kb.depends(s, "nsubj", v), kb.verbo(v), kb.depends(m, ("prep", p), v),
                kb.nouno(m), conde(
                    [eq(out, (s, v, m, name))],
                    [_derived(out, s, p, m, name)],
                ))


def noun_num(kb, out, name="noun-num"):
    num, n = fresh(2)
    return conj(kb.depends(num, "num", n), kb.nouno(n), eq(out, (n, ":be", num, name)))


def advmod_npadvmod_num(kb, out, name="advmod-npadvmod-num"):
    u, a = fresh(2)
    return conj(kb.depends(u, "npadvmod", a), kb.adjectiveo(a), eq(out, (a, ":be", u, name)))


BUILDERS = {
    "nsubj-amod": nsubj_amod,
    "nsubj-pred-dobj": nsubj_pred_dobj,
    "nsubj-VB": nsubj_vb,
    "nsubj-adj-cop": nsubj_adj_cop,
    "nsubj-advmod": nsubj_advmod,
    "nsubj-pred-acomp": nsubj_pred_acomp,
    "nsubj-pred-xcomp": nsubj_pred_xcomp,
    "nsubjpass-pred-agent": nsubjpass_pred_agent,
    "agent-ccomp-dobj": agent_ccomp_dobj,
    "possessive": possessive,
    "nsubjpass-ccomp": nsubjpass_ccomp,
    "prep-noun": prep_noun,
    "noun-prep-noun": noun_prep_noun,
    "noun-num": noun_num,
    "advmod-npadvmod-num": advmod_npadvmod_num,
}


def all_builders(kb, out, advcl_as_ccomp=False, only=None):
    branches = []
    for name, builder in BUILDERS.items():
        if only is not None and name not in only:
            continue
        if builder is nsubjpass_ccomp and advcl_as_ccomp:
            branches.append([nsubjpass_ccomp(kb, out, clause_relations=("nsubjpass", "ccomp", "advcl"))])
        else:
            branches.append([builder(kb, out)])
    return conde(*branches)


def extract_triples(kb, advcl_as_ccomp=False, only=None):
    q = fresh()
    return [Triple(*t) for t in run_all(q, all_builders(kb, q, advcl_as_ccomp, only))]


# --- grouping -------------------------------------------------------------------

def word_groups(kb):
    """Map every word to its ``same_as`` connected component, as a tuple
    sorted by (sentence, index). Unlinked words map to a singleton."""
    adjacent = defaultdict(set)
    for a, b in kb.same_as.facts:
        adjacent[a].add(b)
        adjacent[b].add(a)
    component = {}
    for w in kb.words:
        if w in component:
            continue
        seen = {w}
        stack = [w]
        while stack:
            for v in adjacent[stack.pop()]:
                if v not in seen:
                    seen.add(v)
                    stack.append(v)
        group = tuple(sorted(seen, key=lambda x: x.key))
        for v in seen:
            component[v] = group
    return component


@dataclass(frozen=True)
class GroupedTriple:
    subject: tuple
    predicate: object
    object: tuple
    builder: str


def group_triples(kb, triples):
    component = word_groups(kb)

    def group(w):
        return component.get(w, (w,))
    return [GroupedTriple(group(t.subject), t.predicate, group(t.object), t.builder)
            for t in triples]


# --- reification ----------------------------------------------------------------

@dataclass(frozen=True, eq=False, repr=False)
class WordGroup(_Record):
    symbol: str
    group: tuple

    _keys = ("symbol", "group")

    @property
    def members(self):
        return self.group

    def __repr__(self):
        return self.symbol


@dataclass(frozen=True, eq=False, repr=False)
class ReifiedTriple(_Record):
    subject: WordGroup
    predicate: str
    object: WordGroup

    _keys = ("subject", "predicate", "object")

    def __repr__(self):
        return f"({self.subject.symbol} {self.predicate} {self.object.symbol})"


def _clean(s):
    return "_".join(s.lower().split())


def base_name(group):
    nouns = sorted({_clean(w.lemma) for w in group if w.tag in NOMINAL_TAGS})
    if nouns:
        return "-".join(nouns)
    numbers = [w for w in group if w.tag == "CD"]
    if numbers:
        return "num-" + _clean(numbers[0].token)
    content = [w for w in group if w.tag not in WH_TAGS + DETERMINER_TAGS] or list(group)
    return "-".join(sorted({_clean(w.lemma) for w in content}))


def name_groups(groups):
    """Symbols for distinct groups. Groups sharing a base name are numbered
    from 0 in order of their first word's (sentence, index)."""
    by_base = defaultdict(list)
    for g in dict.fromkeys(groups):
        by_base[base_name(g)].append(g)
    names = {}
    for base, gs in by_base.items():
        for k, g in enumerate(sorted(gs, key=lambda g: g[0].key)):
            names[g] = f"{base}-{k}"
    return names


def reify_predicate(p):
    return p if isinstance(p, str) else ":" + _clean(p.lemma)


def reify(grouped):
    """Returns ``(reified_triples, word_groups)``. Exact duplicates (same
    subject group, predicate and object group) are kept once."""
    groups = [g for t in grouped for g in (t.subject, t.object)]
    names = name_groups(groups)
    refs = {g: WordGroup(names[g], g) for g in names}
    out = []
    seen = set()
    for t in grouped:
        r = ReifiedTriple(refs[t.subject], reify_predicate(t.predicate), refs[t.object])
        if r not in seen:
            seen.add(r)
            out.append(r)
    word_groups_ = sorted(refs.values(), key=lambda g: g.symbol)
    return out, word_groups_


def extend_kb_with_triples(kb, reified):
    """A copy of ``kb`` sharing its word/edge/same-as facts, with a fresh
    ``triple`` relation holding ``reified``."""
    out = kb.with_triples()
    for r in reified:
        out.add_triple(r)
    return out
