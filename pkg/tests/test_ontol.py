import pytest
import rdflib
from rdflib.namespace import OWL, RDF, RDFS

from conftest import BUNDLES, pipeline
from nlkb.ontol import BASE, export_turtle, literal, property_name, term

NS = rdflib.Namespace(BASE)


def graph(text):
    g = rdflib.Graph()
    g.parse(data=text, format="turtle")
    return g


def export(name, verbose=False):
    p = pipeline(name)
    return export_turtle(p.reified, p.groups, verbose=verbose)


def test_draw_parses():
    g = graph(export("draw"))
    assert (NS["node-noname-0"], NS["have"], NS["distance-0"]) in g
    assert (NS["edge-test-0"], NS["start"], NS["node-start-0"]) in g


@pytest.mark.parametrize("name", sorted(p.stem for p in BUNDLES.glob("*.json")))
def test_counts(name):
    p = pipeline(name)
    g = graph(export_turtle(p.reified, p.groups))
    classes = set(g.subjects(RDF.type, OWL.Class)) - {OWL.Thing}
    individuals = set(g.subjects(RDF.type, OWL.NamedIndividual))
    assert len(classes) == len(individuals) == len(p.groups)
    assert classes == individuals
    assert all((c, RDFS.subClassOf, OWL.Thing) in g for c in classes)
    props = set(g.subjects(RDF.type, OWL.ObjectProperty))
    assertions = {(s, pr, o) for s, pr, o in g if pr in props}
    assert len(assertions) == len(set(p.reified))


def test_tokens_and_lemmas():
    p = pipeline("draw")
    g = graph(export("draw"))
    for grp in p.groups:
        tokens = {str(o) for o in g.objects(NS[grp.symbol], NS.hasToken)}
        lemmas = {str(o) for o in g.objects(NS[grp.symbol], NS.hasLemma)}
        assert tokens == {w.token for w in grp.group}
        assert lemmas == {w.lemma for w in grp.group}


def test_sparql_query_by_token():
    g = graph(export("draw"))
    rows = g.query("""
        PREFIX : <%s>
        SELECT ?e WHERE { ?e :start ?s . ?s :hasLemma "Start" }""" % BASE)
    assert {str(r.e) for r in rows} == {BASE + "edge-test-0"}


def test_byte_identical():
    assert export("draw") == export("draw")
    p = pipeline("draw")
    assert export_turtle(list(reversed(p.reified)), list(reversed(p.groups))) == export("draw")


def test_empty():
    text = export_turtle([], [])
    g = graph(text)
    assert set(g.subjects(RDF.type, OWL.Class)) == {OWL.Thing}
    assert not set(g.subjects(RDF.type, OWL.NamedIndividual))


def test_verbose_provenance():
    p = pipeline("draw")
    g = graph(export("draw", verbose=True))
    for grp in p.groups:
        got = set()
        for node in g.objects(NS[grp.symbol], NS.hasWord):
            got.add((int(g.value(node, NS.hasSentenceIndex)), int(g.value(node, NS.hasTokenIndex))))
        assert got == {w.key for w in grp.group}
    plain = graph(export("draw"))
    assert not list(plain.triples((None, NS.hasWord, None)))


def test_terms():
    assert term("edge-test-0") == ":edge-test-0"
    assert term("num-2.5-0").startswith(":")
    assert term("a b") == f"<{BASE}a%20b>"
    assert property_name(":connect") == "connect"
    quoted = literal('say "hi"\n')
    g = graph(f"@prefix : <{BASE}> . :a :b {quoted} .")
    assert str(g.value(NS.a, NS.b)) == 'say "hi"\n'
