"""Resolve parse bundles for the chunks of a document on disk.

A bundle directory holds parse-bundle JSON files and optionally a
``manifest.json``::

    {"chunks": {"0": {"bundle": "draw.json", "sha256": "<hex of chunk text>"}}}

With a manifest each chunk index maps to one file and the recorded hash must
match the chunk text. Without one, bundles are matched by their own text.
"""

import hashlib
import json
import os

from .nlpdoc import BundleError, load_parse_bundle
from .reconciler import FixtureProvider

MANIFEST = "manifest.json"


class MissingBundle(LookupError):
    def __init__(self, index, reason):
        self.index = index
        super().__init__(f"chunk {index}: {reason}")


def text_hash(text):
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def _load(path):
    with open(path, "rb") as f:
        try:
            return load_parse_bundle(f.read())
        except BundleError as e:
            raise BundleError(f"{os.path.basename(path)}: {e.where}", e.msg) from None


def load_manifest(directory):
    path = os.path.join(directory, MANIFEST)
    if not os.path.exists(path):
        return None
    with open(path, encoding="utf-8") as f:
        try:
            data = json.load(f)
        except json.JSONDecodeError as e:
            raise BundleError(MANIFEST, str(e)) from None
    chunks = data.get("chunks") if isinstance(data, dict) else None
    if not isinstance(chunks, dict):
        raise BundleError(MANIFEST, "expected an object with a 'chunks' object")
    out = {}
    for k, v in chunks.items():
        if not (k.isdigit() and isinstance(v, dict) and isinstance(v.get("bundle"), str)
                and isinstance(v.get("sha256"), str)):
            raise BundleError(f"{MANIFEST}.chunks.{k}", "expected {bundle, sha256}")
        out[int(k)] = v
    return out


def resolve(directory, chunks):
    """A provider covering every chunk; raises :class:`MissingBundle` for
    the first chunk without a usable bundle."""
    manifest = load_manifest(directory)
    provider = FixtureProvider()
    if manifest is None:
        pool = FixtureProvider.from_dir(directory)
        for c in chunks:
            if pool.lookup(c.text) is None:
                raise MissingBundle(c.index, "no bundle in the directory has this text")
        return pool
    for c in chunks:
        entry = manifest.get(c.index)
        if entry is None:
            if c.text.strip():
                raise MissingBundle(c.index, "not listed in the manifest")
            continue
        if entry["sha256"] != text_hash(c.text):
            raise MissingBundle(c.index, "manifest hash does not match the chunk text (stale bundle?)")
        path = os.path.join(directory, entry["bundle"])
        if not os.path.exists(path):
            raise MissingBundle(c.index, f"bundle file {entry['bundle']} not found")
        bundle = _load(path)
        if bundle.text != c.text:
            raise MissingBundle(c.index, f"bundle {entry['bundle']} was made for different text")
        provider.add(bundle)
    return provider


def write_manifest(directory, chunks, names):
    """Record ``names[i]`` as the bundle of chunk ``i``."""
    data = {"chunks": {str(c.index): {"bundle": names[c.index], "sha256": text_hash(c.text)}
                       for c in chunks if c.index in names}}
    with open(os.path.join(directory, MANIFEST), "w", encoding="utf-8") as f:
        json.dump(data, f, indent=2, sort_keys=True)
        f.write("\n")
