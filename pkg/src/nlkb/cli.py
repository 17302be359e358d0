"""Command-line driver.

Exit codes: 0 on success, 2 when a chunk has no usable parse bundle,
3 for malformed bundles, manifests, edit scripts or documents.
"""

import argparse
import json
import os
import sys

from . import tables
from .annotate import ANNOTATOR_NAMES, annotate_document, stream_to_json
from .bundles import MissingBundle, resolve
from .drawspec import to_dot
from .nlpdoc import BundleError
from .reconciler import (EditError, FixtureProvider, ReconcilerState, UnparsedChunk,
                         annotation_value, ops_from_json, reconcile)

EMITS = ("triples", "grouped", "reified", "ontology", "draw", "warnings")
EXIT_MISSING = 2
EXIT_INVALID = 3


class CliError(Exception):
    def __init__(self, code, message):
        super().__init__(message)
        self.code = code


def _read(path):
    try:
        with open(path, encoding="utf-8") as f:
            return f.read()
    except (OSError, UnicodeDecodeError) as e:
        raise CliError(EXIT_INVALID, f"cannot read {path}: {e}") from None


def _bundle_dir(args):
    d = args.bundles or os.environ.get("SPECFORGE_BUNDLES")
    if not d:
        raise CliError(EXIT_MISSING, "no bundle directory (use --bundles or SPECFORGE_BUNDLES)")
    if not os.path.isdir(d):
        raise CliError(EXIT_MISSING, f"bundle directory {d} does not exist")
    return d


def _provider(args, state):
    try:
        return resolve(_bundle_dir(args), state.chunks)
    except MissingBundle as e:
        raise CliError(EXIT_MISSING, f"missing parse bundle for {e}") from None
    except BundleError as e:
        raise CliError(EXIT_INVALID, f"invalid bundle: {e}") from None


def warnings_json(warnings):
    """A JSON list with one warning per line."""
    if not warnings:
        return "[]\n"
    return "[\n" + ",\n".join("  " + json.dumps(w.to_json()) for w in warnings) + "\n]\n"


def emit(chunk, what, parses):
    """``[(suffix, text)]`` for one chunk."""
    value = lambda key: annotation_value(chunk, key, parses)  # noqa: E731
    if what == "triples":
        return [("tsv", tables.triples_table(value("triples")))]
    if what == "grouped":
        return [("tsv", tables.grouped_table(value("grouped-triples")))]
    if what == "reified":
        return [("tsv", tables.reified_table(value("reified-triples")[0]))]
    if what == "ontology":
        return [("ttl", value("ontology"))]
    result = value("draw")
    warnings = warnings_json(result.warnings)
    if what == "draw":
        return [("dot", to_dot(result.graph)), ("warnings.json", warnings)]
    return [("warnings.json", warnings)]


def _write_outputs(state, what, parses, out_dir, prefix="chunk", tag=""):
    many = len(state.chunks) > 1
    for c in state.chunks:
        for suffix, text in emit(c, what, parses):
            if out_dir:
                os.makedirs(out_dir, exist_ok=True)
                with open(os.path.join(out_dir, f"{prefix}-{c.index}{tag}.{suffix}"), "w",
                          encoding="utf-8", newline="\n") as f:
                    f.write(text)
            else:
                if many:
                    sys.stdout.write(f"# chunk {c.index} {suffix}\n")
                sys.stdout.write(text)


def cmd_run(args):
    state = ReconcilerState.initial(_read(args.document))
    _write_outputs(state, args.emit, _provider(args, state), args.out)


def cmd_annotate(args):
    state = ReconcilerState.initial(_read(args.document))
    if not 0 <= args.offset <= len(state.document):
        raise CliError(EXIT_INVALID, f"offset {args.offset} outside document of length {len(state.document)}")
    if args.annotator == "chunk-separators":
        parses = FixtureProvider()
    else:
        chunk = state.chunk_at(args.offset)
        parses = _provider(args, state) if chunk is not None else FixtureProvider()
    ops = annotate_document(state, args.annotator, args.offset, parses)
    sys.stdout.write(json.dumps(stream_to_json(ops)) + "\n")


def _edit_batches(data):
    if not isinstance(data, list):
        raise EditError("edit script must be a JSON list")
    if data and all(isinstance(b, list) and (not b or isinstance(b[0], list)) for b in data):
        return [ops_from_json(b) for b in data]
    return [ops_from_json(data)]


def cmd_replay(args):
    state = ReconcilerState.initial(_read(args.document))
    try:
        batches = _edit_batches(json.loads(_read(args.edits)))
    except (json.JSONDecodeError, EditError) as e:
        raise CliError(EXIT_INVALID, f"bad edit script: {e}") from None
    for step, ops in enumerate(batches, 1):
        try:
            state = reconcile(state, ops)
        except EditError as e:
            raise CliError(EXIT_INVALID, f"step {step}: {e}") from None
        if state.reinitialized:
            sys.stdout.write(f"step {step}: reinitialized ({len(state.chunks)} chunks)\n")
        else:
            which = ", ".join(map(str, state.invalidated)) or "none"
            sys.stdout.write(f"step {step}: invalidated chunks: {which}\n")
        if args.emit:
            _write_outputs(state, args.emit, _provider(args, state), args.out, f"step-{step}-chunk")
    sys.stdout.write("--- document ---\n" + state.document)
    if not state.document.endswith("\n"):
        sys.stdout.write("\n")


def cmd_report(args):
    from .report import builder_figure, draw_figure

    state = ReconcilerState.initial(_read(args.document))
    parses = _provider(args, state)
    os.makedirs(args.out, exist_ok=True)
    for what in ("triples", "reified"):
        _write_outputs(state, what, parses, args.out, tag=f"-{what}")
    _write_outputs(state, "draw", parses, args.out)
    for c in state.chunks:
        draw_figure(annotation_value(c, "draw", parses).graph,
                    os.path.join(args.out, f"chunk-{c.index}-draw.png"), f"chunk {c.index}")
        builder_figure(annotation_value(c, "triples", parses),
                       os.path.join(args.out, f"chunk-{c.index}-builders.png"),
                       f"triples per builder, chunk {c.index}")
        sys.stdout.write(f"chunk {c.index}: wrote report to {args.out}\n")


def build_parser():
    p = argparse.ArgumentParser(prog="nlkb", description=(
        "Extract triples, ontologies and drawings from pre-parsed text."))
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("document", help="UTF-8 text file; chunks are separated by a '----' line")
        sp.add_argument("--bundles", help="parse-bundle directory (default: $SPECFORGE_BUNDLES)")

    r = sub.add_parser("run", help="emit one artifact per chunk")
    common(r)
    r.add_argument("--emit", choices=EMITS, required=True)
    r.add_argument("--out", help="write chunk-N.<ext> files here instead of stdout")
    r.set_defaults(func=cmd_run)

    a = sub.add_parser("annotate", help="print an annotation stream as JSON")
    common(a)
    a.add_argument("--annotator", choices=ANNOTATOR_NAMES, required=True)
    a.add_argument("--offset", type=int, default=0, help="cursor position in the document")
    a.set_defaults(func=cmd_annotate)

    e = sub.add_parser("replay", help="apply an edit script and report invalidated chunks")
    common(e)
    e.add_argument("edits", help='JSON list of ["retain",n] | ["insert",s] | ["delete",n], '
                                 "or a list of such lists")
    e.add_argument("--emit", choices=EMITS)
    e.add_argument("--out")
    e.set_defaults(func=cmd_replay)

    rp = sub.add_parser("report", help="tables plus PNG figures for every chunk")
    common(rp)
    rp.add_argument("--out", required=True)
    rp.set_defaults(func=cmd_report)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        args.func(args)
    except CliError as e:
        print(f"nlkb: {e}", file=sys.stderr)
        return e.code
    except UnparsedChunk as e:
        print(f"nlkb: {e}", file=sys.stderr)
        return EXIT_MISSING
    return 0


if __name__ == "__main__":
    sys.exit(main())
