"""Tab-separated text renderings of triples at each stage."""

from .triples import predicate_display


def word(w):
    return f"{w.token}({w.sentence},{w.index})"


def group(g):
    return " ".join(word(w) for w in g)


def _tsv(header, rows):
    return "\n".join("\t".join(map(str, r)) for r in [header, *rows]) + "\n"


def triples_table(triples):
    return _tsv(("subject", "predicate", "object", "builder"),
                [(word(t.subject), predicate_display(t.predicate), word(t.object), t.builder)
                 for t in triples])


def grouped_table(grouped):
    return _tsv(("subject", "predicate", "object", "builder"),
                [(group(t.subject), predicate_display(t.predicate), group(t.object), t.builder)
                 for t in grouped])


def reified_table(reified):
    return _tsv(("subject", "predicate", "object"),
                [(t.subject.symbol, t.predicate, t.object.symbol) for t in reified])


def groups_table(groups):
    return _tsv(("symbol", "members"), [(g.symbol, group(g.group)) for g in groups])
