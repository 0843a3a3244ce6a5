"""Command-line interface: ``hyperelliptic <command> ...``.

Exit codes: 0 success, 1 validation failure, 2 parse error, 3 golden mismatch.
"""

from __future__ import annotations

import argparse
import json
import sys

from .crystal import validate
from .document import ParseError, load
from .gallery import check_entry, gallery
from .invariants import (DecompositionError, betti_numbers, chern_verdict, full_report,
                         hodge_numbers, tangent_decomposition)
from .report import character_list, report_dict, to_json, to_text

EXIT_OK, EXIT_INVALID, EXIT_PARSE, EXIT_MISMATCH = 0, 1, 2, 3


def _emit(obj, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(obj, indent=2))
    else:
        for k, v in obj.items():
            print(f"{k}: {v}")


def _load_valid(path, fmt):
    d = load(path)
    v = validate(d)
    if not v.valid:
        _emit({"valid": False, "offending_element": v.offending_element,
               "messages": list(v.messages)}, fmt)
        return d, None
    return d, v


def cmd_validate(args) -> int:
    d = load(args.file)
    v = validate(d)
    _emit({"valid": v.valid, "faithful": v.faithful, "no_translations": v.no_translations,
           "free": v.free, "torsion_free": v.torsion_free,
           "offending_element": v.offending_element, "even": v.even, "bdf": v.bdf,
           "messages": list(v.messages)}, args.format)
    return EXIT_OK if v.valid else EXIT_INVALID


def cmd_betti(args) -> int:
    d, v = _load_valid(args.file, args.format)
    if v is None:
        return EXIT_INVALID
    _emit({"betti": betti_numbers(d)}, args.format)
    return EXIT_OK


def cmd_hodge(args) -> int:
    d, v = _load_valid(args.file, args.format)
    if v is None:
        return EXIT_INVALID
    try:
        h = hodge_numbers(d)
    except DecompositionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    _emit({"hodge": h}, args.format)
    return EXIT_OK


def cmd_chern(args) -> int:
    d, v = _load_valid(args.file, args.format)
    if v is None:
        return EXIT_INVALID
    try:
        c = chern_verdict(d, tangent_decomposition(d))
    except DecompositionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    _emit({"characters": [{"character": character_list(d, x.character),
                           "multiplicity": x.multiplicity,
                           "in_image_of_psi": x.in_image_of_psi} for x in c.characters],
           "total_c1_trivial": c.total_c1_trivial, "all_ci_trivial": c.all_ci_trivial,
           "canonical_trivial_in_pic": c.canonical_trivial_in_pic,
           "canonical_c1_trivial": c.canonical_c1_trivial}, args.format)
    return EXIT_OK


def cmd_invariants(args) -> int:
    d, v = _load_valid(args.file, args.format)
    if v is None:
        return EXIT_INVALID
    r = report_dict(d, full_report(d))
    keys = ("betti", "hodge", "h1_group", "tors_h2", "h2_full", "aut0_dim", "ns_rank")
    _emit({k: r[k] for k in keys}, args.format)
    return EXIT_OK


def cmd_report(args) -> int:
    d = load(args.file)
    rep = full_report(d)
    sys.stdout.write(to_json(d, rep) if args.format == "json" else to_text(d, rep))
    return EXIT_OK if rep.validation.valid else EXIT_INVALID


def cmd_gallery(args) -> int:
    entries = gallery()
    if args.gallery_command == "list":
        for e in entries:
            print(f"{e.id}: {e.description}")
        return EXIT_OK
    if args.id:
        entries = [e for e in entries if e.id in args.id]
        unknown = set(args.id) - {e.id for e in entries}
        if unknown:
            print(f"error: unknown gallery entries {sorted(unknown)}", file=sys.stderr)
            return EXIT_PARSE
    failed = 0
    for e in entries:
        mismatches = check_entry(e)
        status = "ok" if not mismatches else "MISMATCH"
        print(f"{e.id}: {status} ({len(e.expected)} expected values)")
        for m in mismatches:
            print(f"  {m.path}: expected {json.dumps(m.expected)}, got {json.dumps(m.actual)}")
        failed += bool(mismatches)
    return EXIT_MISMATCH if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hyperelliptic",
                                description="Invariants of hyperelliptic manifolds T/G from crystallographic data.")
    sub = p.add_subparsers(dest="command", required=True)
    for name, fn, fmt_default in (("validate", cmd_validate, "text"), ("invariants", cmd_invariants, "text"),
                                  ("chern", cmd_chern, "text"), ("betti", cmd_betti, "text"),
                                  ("hodge", cmd_hodge, "text"), ("report", cmd_report, "text")):
        sp = sub.add_parser(name)
        sp.add_argument("file")
        sp.add_argument("--format", choices=("json", "text"), default=fmt_default)
        sp.set_defaults(func=fn)
    g = sub.add_parser("gallery")
    gsub = g.add_subparsers(dest="gallery_command", required=True)
    gsub.add_parser("list").set_defaults(func=cmd_gallery)
    run = gsub.add_parser("run")
    run.add_argument("id", nargs="*", help="restrict to these entries")
    run.set_defaults(func=cmd_gallery)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
