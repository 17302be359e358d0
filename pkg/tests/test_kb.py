from itertools import combinations

import networkx as nx
import pytest

from conftest import BUNDLES, bundle, pipeline
from nlkb.kb import (KnowledgeBase, build_kb, mention_words, same_as_rule_coref,
                     same_as_rule_nn, same_as_rule_wh)
from nlkb.logiq import fresh, run_all
from nlkb.nlpdoc import empty_bundle
from nlkb.triples import word_groups
from reference_tables import EDGE_TEST, END, NONAME, START


def keys(pairs):
    return {(a.key, b.key) for a, b in pairs}


def test_felix_facts():
    kb = build_kb(bundle("felix"))
    assert len(kb.word_map) == 4
    assert sorted(r for _, r, _ in kb.depends.facts) == ["cop", "det", "nsubj"]


def test_empty():
    kb = build_kb(empty_bundle())
    assert len(kb.word_map) == len(kb.depends) == len(kb.same_as) == 0


def test_coref_felix_cat():
    b = bundle("felix")
    kb = build_kb(b)
    felix, _, a, cat = b.words
    got = keys(same_as_rule_coref(kb, b))
    # the determiner of "a cat" passes the noun-or-determiner filter
    linked = [felix, a, cat]
    assert got == {(x.key, y.key) for x in linked for y in linked}


def test_coref_matches_brute_force():
    b = bundle("draw")
    kb = build_kb(b)
    expected = set()
    for c in b.clusters:
        ws = [w for m in c.mentions for w in b.words
              if w.sentence == m.sentence and m.index_span[0] <= w.index < m.index_span[1]
              and w.tag in ("NNP", "NN", "NNS", "PRP", "PRP$", "NNPS", "DT")]
        expected |= {(w.key, w.key) for w in ws}
        for x, y in combinations(ws, 2):
            expected |= {(x.key, y.key), (y.key, x.key)}
    assert keys(same_as_rule_coref(kb, b)) == expected


def test_mention_words_interval():
    b = bundle("draw")
    kb = build_kb(b)
    m = b.clusters[1].mentions[0]
    assert [w.key for w in mention_words(kb, m)] == [(m.sentence, i) for i in range(*m.index_span)]


def test_nn_rule():
    b = bundle("draw")
    kb = build_kb(b)
    got = keys(same_as_rule_nn(kb))
    assert ((0, 1), (0, 2)) in got and ((0, 2), (0, 1)) in got and ((0, 1), (0, 1)) in got


def test_nn_rule_empty():
    assert same_as_rule_nn(build_kb(bundle("felix"))) == []


def test_wh_rule():
    b = bundle("wh_relative")
    kb = build_kb(b)
    got = keys(same_as_rule_wh(kb))
    node, which = b.word((0, 2)), b.word((0, 3))
    assert (which.key, node.key) in got and (node.key, which.key) in got


def test_wh_rule_without_wh_words():
    assert same_as_rule_wh(build_kb(bundle("draw"))) == []


@pytest.mark.parametrize("name", sorted(p.stem for p in BUNDLES.glob("*.json")))
def test_same_as_symmetric_and_reflexive(name):
    kb = build_kb(bundle(name))
    a, b = fresh(2)
    forward = set(map(tuple, run_all((a, b), kb.same_as(a, b))))
    backward = {(y, x) for x, y in run_all((b, a), kb.same_as(b, a))}
    assert forward == {(y, x) for x, y in backward} or forward == backward
    for x, y in forward:
        assert (y, x) in forward and (x, x) in forward and (y, y) in forward


@pytest.mark.parametrize("name", sorted(p.stem for p in BUNDLES.glob("*.json")))
def test_depends_resolve(name):
    kb = build_kb(bundle(name))
    words = set(kb.words)
    for dep, _, gov in kb.depends.facts:
        assert dep in words and gov in words


def test_draw_components():
    kb = pipeline("draw").kb
    g = nx.Graph()
    g.add_nodes_from(w.key for w in kb.words)
    g.add_edges_from((a.key, b.key) for a, b in kb.same_as.facts)
    components = [c for c in nx.connected_components(g) if len(c) > 1]
    assert sorted(map(sorted, components)) == sorted(map(sorted, [EDGE_TEST, START, NONAME, END]))
    ours = {tuple(w.key for w in grp) for grp in word_groups(kb).values()}
    assert ours == {tuple(sorted(c)) for c in nx.connected_components(g)}


def test_helper_goals():
    b = bundle("b01_nsubj_amod")
    kb = build_kb(b)
    hungry, eats = b.word((0, 2)), b.word((0, 4))
    assert run_all(fresh(), kb.verbo(eats))
    assert not run_all(fresh(), kb.nouno(hungry))
    assert not run_all(fresh(), kb.tago(eats, []))
    assert run_all(fresh(), kb.adjectiveo(hungry))


def test_linked():
    p = pipeline("draw")
    it = p.word(1, 1)
    assert {w.key for w in p.kb.linked(it)} == EDGE_TEST


def test_knowledge_base_repr():
    assert "0 words" in repr(KnowledgeBase())
