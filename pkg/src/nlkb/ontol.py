"""Turtle export of reified triples.

Every word group is punned: the same IRI is an ``owl:Class`` below
``owl:Thing`` and an ``owl:NamedIndividual``. Predicates become object
properties and each reified triple one property assertion.
"""

import re

BASE = "http://clide.informatik.uni-bremen.de/clide-nlp#"

PREFIXES = (
    ("", BASE),
    ("owl", "http://www.w3.org/2002/07/owl#"),
    ("rdf", "http://www.w3.org/1999/02/22-rdf-syntax-ns#"),
    ("rdfs", "http://www.w3.org/2000/01/rdf-schema#"),
    ("xsd", "http://www.w3.org/2001/XMLSchema#"),
)

# a conservative subset of PN_LOCAL; anything else is written as a full IRI
_LOCAL = re.compile(r"^[A-Za-z_][A-Za-z0-9_-]*(?:[A-Za-z0-9_.-]*[A-Za-z0-9_-])?$")
_IRI_UNSAFE = re.compile(r'[\x00-\x20<>"{}|^`\\]')


def term(name):
    if _LOCAL.match(name):
        return ":" + name
    return "<" + BASE + _IRI_UNSAFE.sub(lambda m: "%%%02X" % ord(m.group()), name) + ">"


def literal(s):
    s = (s.replace("\\", "\\\\").replace('"', '\\"')
         .replace("\n", "\\n").replace("\r", "\\r").replace("\t", "\\t"))
    return f'"{s}"'


def property_name(predicate):
    return predicate[1:] if predicate.startswith(":") else predicate


def export_turtle(reified, groups, verbose=False):
    """``verbose`` adds one blank node per member word carrying its
    sentence and token index."""
    lines = [f"@prefix {p}: <{iri}> ." for p, iri in PREFIXES]
    lines += ["", "owl:Thing a owl:Class ."]

    groups = sorted(groups, key=lambda g: g.symbol)
    if groups:
        lines += ["", ":hasToken a owl:DatatypeProperty .", ":hasLemma a owl:DatatypeProperty ."]
        if verbose:
            lines += [":hasWord a owl:ObjectProperty .",
                      ":hasSentenceIndex a owl:DatatypeProperty .",
                      ":hasTokenIndex a owl:DatatypeProperty ."]

    properties = sorted({property_name(t.predicate) for t in reified})
    if properties:
        lines.append("")
        lines += [f"{term(p)} a owl:ObjectProperty ." for p in properties]

    for g in groups:
        words = sorted(g.group, key=lambda w: w.key)
        tokens = sorted({w.token for w in words})
        lemmas = sorted({w.lemma for w in words})
        body = ["a owl:Class, owl:NamedIndividual", "rdfs:subClassOf owl:Thing"]
        if tokens:
            body.append(":hasToken " + ", ".join(map(literal, tokens)))
        if lemmas:
            body.append(":hasLemma " + ", ".join(map(literal, lemmas)))
        if verbose:
            for w in words:
                body.append(f":hasWord [ :hasToken {literal(w.token)} ; "
                            f":hasSentenceIndex {w.sentence} ; :hasTokenIndex {w.index} ]")
        lines += ["", term(g.symbol) + " " + " ;\n    ".join(body) + " ."]

    assertions = sorted({(t.subject.symbol, property_name(t.predicate), t.object.symbol)
                         for t in reified})
    if assertions:
        lines.append("")
        lines += [f"{term(s)} {term(p)} {term(o)} ." for s, p, o in assertions]
    return "\n".join(lines) + "\n"
