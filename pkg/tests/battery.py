"""Shared random batteries and independent oracles for the test suite."""

from __future__ import annotations

import random
from functools import lru_cache
from itertools import combinations
from math import gcd

from hyperelliptic.exact import IntMatrix
from hyperelliptic.gallery import gallery
from hyperelliptic.invariants import full_report
from hyperelliptic.random_data import random_bdf, random_cyclic_module

BDF_SEED = 20261018
BDF_COUNT = 110
MODULE_SEED = 7
MODULE_COUNT = 200


@lru_cache(maxsize=None)
def bdf_battery():
    """(data, report) pairs for random valid Bagnera-de Franchis data."""
    rng = random.Random(BDF_SEED)
    out = []
    for _ in range(BDF_COUNT):
        d = random_bdf(rng, max_rank=10)
        out.append((d, full_report(d)))
    return tuple(out)


@lru_cache(maxsize=None)
def gallery_reports():
    return tuple((e, e.data(), full_report(e.data())) for e in gallery())


@lru_cache(maxsize=None)
def cyclic_modules():
    rng = random.Random(MODULE_SEED)
    return tuple(random_cyclic_module(rng, max_order=12, max_rank=8) for _ in range(MODULE_COUNT))


def principal_minor_sums(a: IntMatrix) -> list[int]:
    """e_k of the eigenvalues as the sum of principal k x k minors."""
    r = a.nrows
    out = [1]
    for k in range(1, r + 1):
        total = 0
        for idx in combinations(range(r), k):
            total += IntMatrix([[a[i, j] for j in idx] for i in idx]).det()
        out.append(total)
    return out


def betti_oracle(d) -> list[int]:
    totals = [0] * (d.rank + 1)
    for g in d.group.elements():
        for k, e in enumerate(principal_minor_sums(d.linear[g])):
            totals[k] += e
    assert all(t % d.group.order == 0 for t in totals)
    return [t // d.group.order for t in totals]


def determinantal_divisors(a: IntMatrix) -> list[int]:
    """gcd of all k x k minors, k = 1..min(m, n)."""
    m, n = a.shape
    out = []
    for k in range(1, min(m, n) + 1):
        g = 0
        for rows in combinations(range(m), k):
            for cols in combinations(range(n), k):
                g = gcd(g, IntMatrix([[a[i, j] for j in cols] for i in rows]).det())
        out.append(g)
    return out


def random_int_matrix(rng: random.Random, max_dim: int = 6, bound: int = 9) -> IntMatrix:
    m, n = rng.randint(1, max_dim), rng.randint(1, max_dim)
    return IntMatrix([[rng.randint(-bound, bound) for _ in range(n)] for _ in range(m)], ncols=n)
