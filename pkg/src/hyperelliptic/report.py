"""Serialization of :class:`InvariantReport` to JSON-ready dicts and plain text.

Field names and order are fixed so that JSON output is byte-stable and can be
diffed against golden files.
"""

from __future__ import annotations

import json

from .crystal import CrystalData
from .exact.abelian import FgAbelianGroup
from .exact.matrices import format_rational
from .finite_group import QmodZCharacter
from .invariants import InvariantReport


def group_dict(a: FgAbelianGroup | None):
    if a is None:
        return None
    return {"free_rank": a.free_rank, "torsion": list(a.torsion)}


def character_list(d: CrystalData, chi: QmodZCharacter) -> list[str]:
    return [format_rational(v) for v in chi.on_generators(d.group)]


def report_dict(d: CrystalData, rep: InvariantReport) -> dict:
    v = rep.validation
    out = {
        "n": rep.n,
        "group_order": rep.group_order,
        "validation": {
            "valid": v.valid,
            "faithful": v.faithful,
            "no_translations": v.no_translations,
            "free": v.free,
            "torsion_free": v.torsion_free,
            "offending_element": v.offending_element,
            "even": v.even,
            "bdf": v.bdf,
            "messages": list(v.messages),
        },
        "betti": rep.betti,
        "hodge": rep.hodge,
        "h1_free_rank": rep.h1.group.free_rank if rep.h1 else None,
        "h1_group": group_dict(rep.h1.group) if rep.h1 else None,
        "h1_embedding": [list(x) for x in rep.h1.embedding] if rep.h1 else None,
        "gamma_ab": group_dict(rep.gamma_ab),
        "coinvariants": group_dict(rep.coinvariants),
        "tors_h2": None,
        "h2_full": group_dict(rep.h2_full),
        "psi": None,
        "phi_kernel": group_dict(rep.phi_kernel),
        "tangent": None,
        "chern": None,
        "aut0_dim": rep.aut0_dim,
        "ns_rank": rep.ns_rank,
        "unavailable": dict(sorted(rep.unavailable.items())),
    }
    if rep.tors_h2 is not None:
        out["tors_h2"] = {
            "group": group_dict(rep.tors_h2.group),
            "status": rep.tors_h2.status,
            "gamma_ab_torsion": group_dict(rep.tors_h2.gamma_torsion),
        }
    if rep.psi is not None:
        out["psi"] = {
            "h2_group": group_dict(rep.psi.space),
            "invariant_functionals": [list(x) for x in rep.psi.functionals],
            "image": group_dict(rep.psi.image),
            "cokernel": group_dict(rep.psi.cokernel),
        }
    if rep.tangent is not None:
        out["tangent"] = {
            "source": rep.tangent.source,
            "characters": [{"character": character_list(d, chi), "multiplicity": k}
                           for chi, k in rep.tangent.characters],
        }
    if rep.chern is not None:
        c = rep.chern
        out["chern"] = {
            "characters": [{"character": character_list(d, x.character),
                            "multiplicity": x.multiplicity,
                            "bockstein": list(x.bockstein),
                            "in_image_of_psi": x.in_image_of_psi} for x in c.characters],
            "determinant_character": character_list(d, c.determinant),
            "total_c1": list(c.total_c1),
            "total_c1_trivial": c.total_c1_trivial,
            "all_ci_trivial": c.all_ci_trivial,
            "canonical_trivial_in_pic": c.canonical_trivial_in_pic,
            "canonical_c1_trivial": c.canonical_c1_trivial,
        }
    return out


def to_json(d: CrystalData, rep: InvariantReport) -> str:
    return json.dumps(report_dict(d, rep), indent=2) + "\n"


def group_str(g: dict | None) -> str:
    if g is None:
        return "unavailable"
    parts = [f"Z/{t}" for t in g["torsion"]]
    if g["free_rank"]:
        parts.append("Z" if g["free_rank"] == 1 else f"Z^{g['free_rank']}")
    return " + ".join(parts) or "0"


def to_text(d: CrystalData, rep: InvariantReport) -> str:
    r = report_dict(d, rep)
    v = r["validation"]
    lines = [f"complex dimension {r['n']}, |G| = {r['group_order']}",
             f"valid: {v['valid']} (faithful {v['faithful']}, free {v['free']}, "
             f"even {v['even']}, bdf {v['bdf']})"]
    lines += [f"  note: {m}" for m in v["messages"]]
    if not v["valid"]:
        return "\n".join(lines) + "\n"
    lines.append(f"betti: {r['betti']}")
    lines.append(f"hodge h^(0,q): {r['hodge'] if r['hodge'] is not None else 'unavailable'}")
    lines.append(f"H^1(X,Z) = {group_str(r['h1_group'])}")
    lines.append(f"Gamma^ab = {group_str(r['gamma_ab'])}")
    t = r["tors_h2"]
    lines.append(f"Tors H^2(X,Z) = {group_str(t['gamma_ab_torsion'])}; "
                 f"H^1(G, dual lattice) = {group_str(t['group'])} ({t['status']})")
    if r["h2_full"] is not None:
        lines.append(f"H^2(X,Z) = {group_str(r['h2_full'])}")
    p = r["psi"]
    lines.append(f"psi: H^2(G,Z) = {group_str(p['h2_group'])}, image {group_str(p['image'])}, "
                 f"cokernel {group_str(p['cokernel'])}")
    if r["tangent"] is not None:
        chars = ", ".join(f"({' '.join(c['character'])}) x{c['multiplicity']}"
                          for c in r["tangent"]["characters"])
        lines.append(f"tangent characters [{r['tangent']['source']}]: {chars}")
    if r["chern"] is not None:
        c = r["chern"]
        for x in c["characters"]:
            lines.append(f"  c1 of ({' '.join(x['character'])}): "
                         f"{'zero' if x['in_image_of_psi'] else 'nonzero'} in H^2(X,Z)")
        lines.append(f"all c_i trivial: {c['all_ci_trivial']}; c1 trivial: {c['total_c1_trivial']}")
        lines.append(f"K_X trivial in Pic: {c['canonical_trivial_in_pic']}; "
                     f"c1(K_X) = 0: {c['canonical_c1_trivial']}")
    lines.append(f"dim Aut^0(X): {r['aut0_dim'] if r['aut0_dim'] is not None else 'unavailable'}")
    lines.append(f"invariant NS rank: {r['ns_rank'] if r['ns_rank'] is not None else 'unavailable'}")
    for k, why in r["unavailable"].items():
        lines.append(f"  {k} unavailable: {why}")
    return "\n".join(lines) + "\n"


def lookup(report: dict, path: str):
    """Value at a dotted path such as ``"chern.all_ci_trivial"``; KeyError if absent."""
    cur = report
    for part in path.split("."):
        if cur is None:
            raise KeyError(path)
        cur = cur[int(part)] if isinstance(cur, list) else cur[part]
    return cur
