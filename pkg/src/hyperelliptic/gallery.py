"""Built-in examples with hand-checked expected invariants.

Entries live as JSON files in the ``gallery`` package directory; set
``HYPERELLIPTIC_GALLERY_DIR`` to read them from elsewhere.  Each file holds an
``id``, a ``description``, the input ``document`` and ``expected`` values keyed by
dotted report paths, each with a ``provenance`` note.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .crystal import CrystalData
from .document import ParseError, parse
from .invariants import full_report
from .report import lookup, report_dict

GALLERY_ENV = "HYPERELLIPTIC_GALLERY_DIR"


@dataclass(frozen=True)
class GalleryEntry:
    id: str
    description: str
    document: dict
    expected: dict  # path -> {"value": ..., "provenance": ...}

    def data(self) -> CrystalData:
        return parse(self.document)


@dataclass(frozen=True)
class Mismatch:
    entry: str
    path: str
    expected: object
    actual: object


def gallery_dir() -> Path:
    override = os.environ.get(GALLERY_ENV)
    if override:
        return Path(override)
    return Path(str(resources.files("hyperelliptic") / "gallery"))


def gallery(directory: Path | None = None) -> list[GalleryEntry]:
    directory = directory or gallery_dir()
    out = []
    for path in sorted(Path(directory).glob("*.json")):
        try:
            raw = json.loads(path.read_text())
        except json.JSONDecodeError as exc:
            raise ParseError(f"{path.name}: invalid JSON: {exc}") from None
        for key in ("id", "document", "expected"):
            if key not in raw:
                raise ParseError(f"{path.name}: missing '{key}'")
        out.append(GalleryEntry(raw["id"], raw.get("description", ""), raw["document"], raw["expected"]))
    return sorted(out, key=lambda e: e.id)


def entry(entry_id: str, directory: Path | None = None) -> GalleryEntry:
    for e in gallery(directory):
        if e.id == entry_id:
            return e
    raise KeyError(f"no gallery entry '{entry_id}'")


def check_entry(e: GalleryEntry) -> list[Mismatch]:
    d = e.data()
    rep = report_dict(d, full_report(d))
    out = []
    for path, golden in sorted(e.expected.items()):
        try:
            actual = lookup(rep, path)
        except (KeyError, IndexError, TypeError):
            actual = "<missing>"
        if actual != golden["value"]:
            out.append(Mismatch(e.id, path, golden["value"], actual))
    return out
