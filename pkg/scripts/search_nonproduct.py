"""Search free cyclic quotients that are not products (E x A)/G for psi not onto.

For such data the tangent line bundles can have c_1 != 0.  Hits are written as
documents that every CLI command accepts.

    python scripts/search_nonproduct.py --count 2000 --max-rank 8 --out-dir hits/
"""

from __future__ import annotations

import random
import sys
from dataclasses import dataclass
from pathlib import Path

from _config import parse_config

from hyperelliptic.document import dumps
from hyperelliptic.invariants import full_report
from hyperelliptic.random_data import random_free_cyclic
from hyperelliptic.report import group_str, report_dict


@dataclass(frozen=True)
class SearchConfig:
    seed: int = 0
    count: int = 600
    max_rank: int = 8
    orders: tuple = (2, 3, 4, 6)
    out_dir: str = ""


def search(cfg: SearchConfig):
    hits = []
    for k in range(cfg.count):
        # one seed per draw so a hit can be regenerated on its own
        d = random_free_cyclic(random.Random(cfg.seed + k), max_rank=cfg.max_rank, orders=cfg.orders)
        r = full_report(d)
        if not r.psi.cokernel.is_trivial:
            hits.append((cfg.seed + k, d, r))
    return hits


def main(argv=None) -> int:
    cfg = parse_config(SearchConfig, __doc__.splitlines()[0], argv)
    hits = search(cfg)
    print(f"{len(hits)} of {cfg.count} free cyclic data have psi not onto")
    for seed, d, r in hits:
        out = report_dict(d, r)
        print(f"  seed {seed}: |G| = {d.group.order}, rank {d.rank}, "
              f"coker psi = {group_str(out['psi']['cokernel'])}, "
              f"Tors H^2 = {group_str(out['tors_h2']['gamma_ab_torsion'])}, "
              f"H^1(G, dual) = {group_str(out['tors_h2']['group'])}, "
              f"all c_i trivial = {r.chern.all_ci_trivial}")
        if cfg.out_dir:
            Path(cfg.out_dir).mkdir(parents=True, exist_ok=True)
            (Path(cfg.out_dir) / f"nonproduct-seed{seed}.json").write_text(dumps(d))
    return 0


if __name__ == "__main__":
    sys.exit(main())
