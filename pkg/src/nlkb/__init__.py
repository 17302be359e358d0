"""Knowledge extraction from dependency-parsed text with a small relational
logic engine."""

from .drawspec import GraphSpec, draw, to_dot
from .kb import KnowledgeBase, build_kb
from .nlpdoc import BundleError, ParseBundle, load_parse_bundle
from .ontol import export_turtle
from .reconciler import (FixtureProvider, ReconcilerState, annotation_value, apply_edits,
                         chunk_text, reconcile)
from .triples import extend_kb_with_triples, extract_triples, group_triples, reify

__all__ = [
    "BundleError", "FixtureProvider", "GraphSpec", "KnowledgeBase", "ParseBundle",
    "ReconcilerState", "annotation_value", "apply_edits", "build_kb", "chunk_text", "draw",
    "export_turtle", "extend_kb_with_triples", "extract_triples", "group_triples",
    "load_parse_bundle", "reconcile", "reify", "to_dot",
]
