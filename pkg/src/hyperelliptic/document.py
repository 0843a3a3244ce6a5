"""Reading and writing crystallographic data as JSON documents.

A document looks like::

    {
      "rank": 4,
      "group": {"invariant_factors": [2]},
      "action": {
        "0": {"matrix": [[1,0,0,0], ...], "translation": ["0","0","0","0"]},
        "1": {"matrix": [[1,0,0,0], ...], "translation": ["1/2","0","0","0"]}
      },
      "complex_structure": [["0","-1","0","0"], ...],
      "tangent_characters": [{"character": ["1/2"], "multiplicity": 1}, ...]
    }

Group elements are numbered 0..|G|-1.  For ``invariant_factors`` the numbering
runs through coordinate vectors in lexicographic order; for ``table`` it is the
row order of the multiplication table.  Characters are listed by their values
on the group generators.  Rationals are strings "p/q" (integers may be bare).
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from .crystal import MAX_RANK, CrystalData, CrystalError
from .exact.matrices import IntMatrix, RatMatrix, format_rational, parse_rational
from .finite_group import (MAX_GROUP_ORDER, FiniteGroup, GroupError, abelian_group,
                           character_from_generator_values)


class ParseError(ValueError):
    """The document is malformed or describes an inconsistent datum."""


def _int(x, where: str) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise ParseError(f"{where}: expected an integer, got {x!r}")
    return x


def _rat(x, where: str) -> Fraction:
    try:
        return parse_rational(x)
    except (ValueError, TypeError) as exc:
        raise ParseError(f"{where}: {exc}") from None


def _list(x, where: str) -> list:
    if not isinstance(x, list):
        raise ParseError(f"{where}: expected a list, got {type(x).__name__}")
    return x


def parse_group(obj) -> FiniteGroup:
    if not isinstance(obj, dict):
        raise ParseError("group: expected an object")
    try:
        if "invariant_factors" in obj:
            factors = [_int(x, "group.invariant_factors") for x in _list(obj["invariant_factors"],
                                                                          "group.invariant_factors")]
            order = 1
            for f in factors:
                order *= max(f, 1)
            if order > MAX_GROUP_ORDER:
                raise ParseError(f"group order {order} exceeds the supported bound {MAX_GROUP_ORDER}")
            return abelian_group(factors)
        if "table" in obj:
            table = [[_int(x, "group.table") for x in _list(row, "group.table")]
                     for row in _list(obj["table"], "group.table")]
            if len(table) > MAX_GROUP_ORDER:
                raise ParseError(f"group order {len(table)} exceeds the supported bound {MAX_GROUP_ORDER}")
            gens = tuple(_int(x, "group.generators") for x in obj.get("generators", []))
            return FiniteGroup(tuple(map(tuple, table)), gens)
    except GroupError as exc:
        raise ParseError(f"group: {exc}") from None
    raise ParseError("group: give either 'invariant_factors' or 'table'")


def parse(document) -> CrystalData:
    """Build a :class:`CrystalData` from a parsed JSON object (or a JSON string)."""
    if isinstance(document, (str, bytes)):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc}") from None
    if not isinstance(document, dict):
        raise ParseError("document must be a JSON object")
    unknown = set(document) - {"rank", "group", "action", "complex_structure",
                               "tangent_characters", "description"}
    if unknown:
        raise ParseError(f"unknown field(s): {', '.join(sorted(unknown))}")
    for key in ("rank", "group", "action"):
        if key not in document:
            raise ParseError(f"missing field '{key}'")
    r = _int(document["rank"], "rank")
    if r <= 0 or r % 2:
        raise ParseError(f"rank must be a positive even number, got {r}")
    if r > MAX_RANK:
        raise ParseError(f"rank {r} exceeds the supported bound {MAX_RANK}")
    G = parse_group(document["group"])

    action = document["action"]
    if not isinstance(action, dict):
        raise ParseError("action: expected an object keyed by group element")
    keys = {str(g) for g in G.elements()}
    extra = set(action) - keys
    if extra:
        raise ParseError(f"action: unknown group element(s) {sorted(extra)}")
    missing = keys - set(action)
    if missing:
        raise ParseError(f"action: no entry for group element(s) "
                         f"{sorted(missing, key=int)}")
    linear, trans = [], []
    for g in G.elements():
        entry = action[str(g)]
        where = f"action[{g}]"
        if not isinstance(entry, dict) or "matrix" not in entry or "translation" not in entry:
            raise ParseError(f"{where}: needs 'matrix' and 'translation'")
        rows = _list(entry["matrix"], f"{where}.matrix")
        if len(rows) != r or any(not isinstance(row, list) or len(row) != r for row in rows):
            raise ParseError(f"{where}.matrix: matrix must be {r}x{r}")
        linear.append(IntMatrix([[_int(x, f"{where}.matrix") for x in row] for row in rows], ncols=r))
        u = _list(entry["translation"], f"{where}.translation")
        if len(u) != r:
            raise ParseError(f"{where}: translation length {len(u)}, expected {r}")
        trans.append(tuple(_rat(x, f"{where}.translation") for x in u))

    J = None
    if document.get("complex_structure") is not None:
        rows = _list(document["complex_structure"], "complex_structure")
        if len(rows) != r or any(not isinstance(row, list) or len(row) != r for row in rows):
            raise ParseError(f"complex_structure: matrix must be {r}x{r}")
        J = RatMatrix([[_rat(x, "complex_structure") for x in row] for row in rows], ncols=r)

    tc = None
    if document.get("tangent_characters") is not None:
        tc = []
        for k, item in enumerate(_list(document["tangent_characters"], "tangent_characters")):
            where = f"tangent_characters[{k}]"
            if not isinstance(item, dict) or "character" not in item:
                raise ParseError(f"{where}: needs 'character'")
            vals = [_rat(x, where) for x in _list(item["character"], where)]
            try:
                chi = character_from_generator_values(G, vals)
            except GroupError as exc:
                raise ParseError(f"{where}: {exc}") from None
            tc.append((chi, _int(item.get("multiplicity", 1), f"{where}.multiplicity")))

    try:
        return CrystalData(r // 2, G, tuple(linear), tuple(trans), J, tuple(tc) if tc is not None else None)
    except CrystalError as exc:
        raise ParseError(str(exc)) from None


def load(path) -> CrystalData:
    """Read a document, or the ``document`` part of a gallery entry file."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from None
    if isinstance(obj, dict) and "document" in obj and "rank" not in obj:
        obj = obj["document"]
    return parse(obj)


def serialize(d: CrystalData) -> dict:
    """Inverse of :func:`parse`: ``parse(serialize(d)) == d``."""
    G = d.group
    if G.invariant_factors is not None:
        group = {"invariant_factors": list(G.invariant_factors)}
    else:
        group = {"table": [list(row) for row in G.mul], "generators": list(G.generators)}
    doc = {"rank": d.rank, "group": group, "action": {}}
    for g in G.elements():
        doc["action"][str(g)] = {
            "matrix": d.linear[g].tolist(),
            "translation": [format_rational(x) for x in d.translations[g]],
        }
    if d.complex_structure is not None:
        doc["complex_structure"] = [[format_rational(x) for x in row]
                                    for row in d.complex_structure.tolist()]
    if d.tangent_characters is not None:
        doc["tangent_characters"] = [
            {"character": [format_rational(v) for v in chi.on_generators(G)], "multiplicity": k}
            for chi, k in d.tangent_characters]
    return doc


def dumps(d: CrystalData) -> str:
    return json.dumps(serialize(d), indent=2)
