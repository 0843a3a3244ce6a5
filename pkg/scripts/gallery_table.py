"""Print the gallery invariants as a markdown table.

    python scripts/gallery_table.py
"""

from __future__ import annotations

import sys
from dataclasses import dataclass

from _config import parse_config

from hyperelliptic.gallery import gallery
from hyperelliptic.invariants import full_report
from hyperelliptic.report import group_str, report_dict


@dataclass(frozen=True)
class TableConfig:
    gallery_dir: str = ""


def _fmt(x):
    return "n/a" if x is None else str(x)


def main(argv=None) -> int:
    cfg = parse_config(TableConfig, __doc__.splitlines()[0], argv)
    entries = gallery(cfg.gallery_dir or None)
    print("| entry | n | G | betti | h^{0,q} | Tors H^2 | coker psi | all c_i = 0 | K_X in Pic | Aut^0 | NS |")
    print("|---|---|---|---|---|---|---|---|---|---|---|")
    for e in entries:
        d = e.data()
        r = report_dict(d, full_report(d))
        c = r["chern"] or {}
        print(f"| {e.id} | {r['n']} | {r['group_order']} | {r['betti']} | {_fmt(r['hodge'])} "
              f"| {group_str(r['tors_h2']['gamma_ab_torsion'])} | {group_str(r['psi']['cokernel'])} "
              f"| {_fmt(c.get('all_ci_trivial'))} | {_fmt(c.get('canonical_trivial_in_pic'))} "
              f"| {_fmt(r['aut0_dim'])} | {_fmt(r['ns_rank'])} |")
    return 0


if __name__ == "__main__":
    sys.exit(main())
