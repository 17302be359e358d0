import functools
import sys
from pathlib import Path

import pytest

from nlkb.kb import build_kb
from nlkb.nlpdoc import load_parse_bundle
from nlkb.triples import extend_kb_with_triples, extract_triples, group_triples, reify

FIXTURES = Path(__file__).parent / "fixtures"
BUNDLES = FIXTURES / "bundles"


@functools.lru_cache(maxsize=None)
def bundle(name):
    return load_parse_bundle((BUNDLES / f"{name}.json").read_bytes())


class Pipeline:
    def __init__(self, name):
        self.bundle = bundle(name)
        self.kb = build_kb(self.bundle)
        self.triples = extract_triples(self.kb)
        self.grouped = group_triples(self.kb, self.triples)
        self.reified, self.groups = reify(self.grouped)
        self.rkb = extend_kb_with_triples(self.kb, self.reified)

    def word(self, sentence, index):
        return self.bundle.word((sentence, index))

    def group(self, symbol):
        return next(g for g in self.groups if g.symbol == symbol)


@functools.lru_cache(maxsize=None)
def pipeline(name):
    return Pipeline(name)


@pytest.fixture
def draw_run():
    return pipeline("draw")


def pytest_terminal_summary(terminalreporter):
    acceptance = sys.modules.get("test_acceptance")
    results = getattr(acceptance, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for n in sorted(results):
            terminalreporter.write_line(results[n])
