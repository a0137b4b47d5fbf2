"""Pair documents: JSON with 1-based element lists (or hex masks) and built-in names."""

from __future__ import annotations

import json
import re
import sys
from pathlib import Path

from .constructions import aharoni_counterexample, canonical_pair, hexad_pair
from .setcore import RecoveringPair, SetSystem, elements_of, mask_from_elements


class DocumentError(ValueError):
    """Malformed pair document or unknown built-in name."""


BUILTIN_NAMES = ("hexad", "aharoni-counterexample", "canonical:<n>:<C>")

_CANONICAL = re.compile(r"^canonical:(\d+):([\d,]*)$")


def builtin(name: str) -> RecoveringPair:
    if name == "hexad":
        return hexad_pair()
    if name == "aharoni-counterexample":
        return aharoni_counterexample()
    m = _CANONICAL.match(name)
    if m:
        n = int(m.group(1))
        elems = [int(x) for x in m.group(2).split(",") if x]
        try:
            return canonical_pair(n, mask_from_elements(elems, n))
        except ValueError as exc:
            raise DocumentError(str(exc)) from exc
    raise DocumentError(f"unknown built-in pair {name!r}")


def _parse_set(item, n: int) -> int:
    if isinstance(item, str):
        try:
            mask = int(item, 16)
        except ValueError as exc:
            raise DocumentError(f"bad hex set {item!r}") from exc
        if mask < 0 or mask >> n:
            raise DocumentError(f"hex set {item!r} does not fit [1, {n}]")
        return mask
    if not isinstance(item, list) or not all(isinstance(e, int) and not isinstance(e, bool) for e in item):
        raise DocumentError(f"set must be a list of integers or a hex string, got {item!r}")
    try:
        return mask_from_elements(item, n)
    except ValueError as exc:
        raise DocumentError(str(exc)) from exc


def _parse_family(raw, n: int, key: str) -> SetSystem:
    if not isinstance(raw, list):
        raise DocumentError(f"field {key!r} must be a list of sets")
    masks = tuple(_parse_set(item, n) for item in raw)
    try:
        return SetSystem(n, masks)
    except ValueError as exc:
        raise DocumentError(f"family {key}: {exc}") from exc


def pair_from_document(doc: dict) -> RecoveringPair:
    if not isinstance(doc, dict):
        raise DocumentError("pair document must be a JSON object")
    missing = [k for k in ("n", "A", "B") if k not in doc]
    if missing:
        raise DocumentError(f"pair document missing fields {missing}")
    n = doc["n"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise DocumentError(f"n must be a positive integer, got {n!r}")
    meta = doc.get("meta") or {}
    if not isinstance(meta, dict):
        raise DocumentError("meta must be an object")
    try:
        return RecoveringPair(
            _parse_family(doc["A"], n, "A"), _parse_family(doc["B"], n, "B"), name=meta.get("name")
        )
    except ValueError as exc:
        if isinstance(exc, DocumentError):
            raise
        raise DocumentError(str(exc)) from exc


def pair_to_document(pair: RecoveringPair, meta: dict | None = None) -> dict:
    doc = {
        "n": pair.n,
        "A": [elements_of(m) for m in pair.a.members],
        "B": [elements_of(m) for m in pair.b.members],
    }
    meta = dict(meta or {})
    if pair.name and "name" not in meta:
        meta["name"] = pair.name
    if meta:
        doc["meta"] = meta
    return doc


def parse(text: str) -> RecoveringPair:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"invalid JSON: {exc}") from exc
    return pair_from_document(doc)


def emit(pair: RecoveringPair, meta: dict | None = None) -> str:
    return json.dumps(pair_to_document(pair, meta), indent=2) + "\n"


def load(source: str) -> RecoveringPair:
    """Read a pair from a path, ``-`` (stdin) or a built-in name."""
    if source == "-":
        return parse(sys.stdin.read())
    path = Path(source)
    if path.exists():
        return parse(path.read_text())
    if source in ("hexad", "aharoni-counterexample") or source.startswith("canonical:"):
        return builtin(source)
    raise DocumentError(f"no such file or built-in pair: {source!r}")
