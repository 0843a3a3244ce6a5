"""Acceptance criteria, one test each.  Every test prints a single PASS/FAIL line;
run ``python tests/test_acceptance.py`` to see only those lines."""

from __future__ import annotations

import random
import sys
from fractions import Fraction
from math import lcm
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from battery import (bdf_battery, cyclic_modules, determinantal_divisors,  # noqa: E402
                     gallery_reports, random_int_matrix)
from hyperelliptic.cohomology import cohomology, cyclic_cohomology_oracle  # noqa: E402
from hyperelliptic.exact import FgAbelianGroup, smith_normal_form  # noqa: E402
from hyperelliptic.exact.cyclotomic import CycloNumber  # noqa: E402
from hyperelliptic.invariants import complex_determinants  # noqa: E402


def _report(number: int, ok: bool, detail: str) -> None:
    print(f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}")


@pytest.fixture
def announce(capsys):
    def emit(number, ok, detail):
        with capsys.disabled():
            print()
            _report(number, ok, detail)
        assert ok, detail
    return emit


def _entry(entry_id):
    for e, d, rep in gallery_reports():
        if e.id == entry_id:
            return d, rep
    raise KeyError(entry_id)


# the criteria ------------------------------------------------------------------

def criterion_1():
    """Every tangent character's Bockstein class lies in Im psi for BdF data."""
    d, rep = _entry("bdf-threefold-z2")
    cases = [(d, rep)] + list(bdf_battery())
    failures = sum(1 for _, r in cases
                   if not all(c.in_image_of_psi for c in r.chern.characters))
    return failures == 0, f"{len(cases)} BdF data (gallery + {len(cases) - 1} random), {failures} failures"


def criterion_2():
    """coker psi = 0 for every cyclic datum of the battery."""
    cases = list(bdf_battery())
    bad = [r for _, r in cases if not r.psi.cokernel.is_trivial]
    return not bad, f"{len(cases)} random BdF data, {len(bad)} with nonzero coker psi"


def criterion_3():
    """H^1(G, Lambda^dual) = Tors Gamma^ab on the battery, killed by m; (Z/2)^4 for the gallery 3-fold."""
    d0, rep0 = _entry("bdf-threefold-z2")
    ok = rep0.tors_h2.group == FgAbelianGroup((2, 2, 2, 2), 0)
    bad = 0
    cases = [(d0, rep0)] + list(bdf_battery())
    for d, rep in cases:
        t = rep.tors_h2
        m = d.group.order
        same = list(t.group.torsion) == list(t.gamma_torsion.torsion) and t.proven
        killed = all(t.group.is_zero(t.group.scale(m, x)) for x in t.group.elements())
        bad += not (same and killed)
    return ok and bad == 0, (f"gallery 3-fold gives {rep0.tors_h2.group}; "
                             f"{len(cases)} data, {bad} mismatches")


def criterion_4():
    """(Z/2)^2 fourfold: no invariant H^1, psi = 0, characters c1, c2, c3, c3, c_1 != 0."""
    d, rep = _entry("hyperelliptic-4fold-z2z2")
    G = d.group
    # g12, g13, g23 as element indices; chi_ij is determined by its values on them
    g12, g13 = G.generators
    g23 = G.mul[g12][g13]
    half = Fraction(1, 2)
    expected = {(half, half, 0): 1, (half, 0, half): 1, (0, half, half): 2}
    got = {(chi(g12), chi(g13), chi(g23)): k for chi, k in rep.tangent.characters}
    checks = {
        "H^1(T,Z)^G = 0": len(rep.psi.functionals) == 0 and rep.betti[1] == 0,
        "Im psi = 0": rep.psi.image.is_trivial,
        "tangent characters": got == expected,
        "total c1 nonzero": rep.chern.total_c1_trivial is False,
    }
    failed = [k for k, v in checks.items() if not v]
    return not failed, "all four facts hold" if not failed else f"failed: {failed}"


def criterion_5():
    """Z/2 hyperelliptic surface: integral classes vanish but K_X is not trivial in Pic."""
    d, rep = _entry("hyperelliptic-surface-z2")
    c = rep.chern
    ok = (c.all_ci_trivial is True and c.canonical_trivial_in_pic is False
          and rep.hodge[1] == 1 and rep.hodge[2] == 0)
    return ok, (f"all_ci_trivial={c.all_ci_trivial}, canonical_trivial_in_pic="
                f"{c.canonical_trivial_in_pic}, h01={rep.hodge[1]}, h02={rep.hodge[2]}")


def criterion_6():
    """canonical_trivial_in_pic iff the determinant character is trivial, checked
    against det_C L(g) on the tangent space where a complex structure is given."""
    checked, with_j, bad = 0, 0, []
    for e, d, rep in gallery_reports():
        c = rep.chern
        if c is None:
            continue
        checked += 1
        if c.canonical_trivial_in_pic != c.determinant.is_trivial():
            bad.append(e.id)
            continue
        if d.complex_structure is None:
            continue
        with_j += 1
        dets = complex_determinants(d)
        one = CycloNumber.rational(1, 4)
        unimodular = all(x == one for x in dets)
        cond = lcm(4, c.determinant.order())
        matches = all(dets[g].embed(cond) == CycloNumber.root_of_unity(c.determinant(g), cond)
                      for g in d.group.elements())
        if unimodular != c.canonical_trivial_in_pic or not matches:
            bad.append(e.id)
    return not bad, f"{checked} gallery entries, {with_j} checked against det_C L(g), mismatches {bad}"


def criterion_7():
    """Bar-complex cohomology agrees with the cyclic closed form in degrees 1 and 2."""
    mods = cyclic_modules()
    bad = 0
    for M in mods:
        for n in (1, 2):
            if cohomology(M.group, M, n) != cyclic_cohomology_oracle(M.group.order, M, n):
                bad += 1
    orders = {M.group.order for M in mods}
    ranks = {M.rank for M in mods}
    return bad == 0, (f"{len(mods)} modules (orders {min(orders)}..{max(orders)}, "
                      f"ranks {min(ranks)}..{max(ranks)}), {bad} disagreements")


def criterion_8():
    """Euler sum, Poincare duality, b1 = 2 h01 and rank H^1 two ways, on every valid datum."""
    cases = [(d, r) for _, d, r in gallery_reports()] + list(bdf_battery())
    bad = 0
    for d, r in cases:
        b, n = r.betti, d.n
        ok = (d.group.order == 1 or sum((-1) ** k * x for k, x in enumerate(b)) == 0)
        ok &= all(b[k] == b[2 * n - k] for k in range(2 * n + 1))
        ok &= b[1] == 2 * r.hodge[1]
        ok &= r.gamma_ab.free_rank == r.h1.group.free_rank == len(r.h1.embedding) == b[1]
        bad += not ok
    return bad == 0, f"{len(cases)} valid data, {bad} violations"


def criterion_9():
    """Smith normal form on random small matrices: UAV = D, unimodular, chain, minors."""
    rng = random.Random(9)
    bad = 0
    count = 1000
    for _ in range(count):
        a = random_int_matrix(rng, 6, 9)
        s = smith_normal_form(a)
        U, V, D = s.U, s.V, s.D
        ok = U @ a @ V == D
        ok &= U.det() in (1, -1) and V.det() in (1, -1)
        diag = list(s.invariant_factors)
        nz = [x for x in diag if x]
        ok &= all(x > 0 for x in nz) and diag[:len(nz)] == nz
        ok &= all(nz[i + 1] % nz[i] == 0 for i in range(len(nz) - 1))
        dk = determinantal_divisors(a)
        prod = 1
        for k, x in enumerate(diag):
            prod *= x
            ok &= prod == dk[k]
        bad += not ok
    return bad == 0, f"{count} random matrices, {bad} failures"


def criterion_10():
    """aut0 >= 1 on cyclic data, 0 on the (Z/2)^2 fourfold, and aut0 = 0 iff h01 = 0."""
    cases = [(d, r) for _, d, r in gallery_reports()] + list(bdf_battery())
    bad = 0
    for d, r in cases:
        if d.group.is_cyclic() and r.aut0_dim < 1:
            bad += 1
        if (r.aut0_dim == 0) != (r.hodge[1] == 0):
            bad += 1
    _, rep = _entry("hyperelliptic-4fold-z2z2")
    zero = rep.aut0_dim == 0
    return bad == 0 and zero, f"{len(cases)} data, {bad} violations; fourfold aut0 = {rep.aut0_dim}"


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9, criterion_10]


@pytest.mark.parametrize("number", range(1, 11))
def test_criterion(number, announce):
    ok, detail = CRITERIA[number - 1]()
    announce(number, ok, detail)


if __name__ == "__main__":
    failed = 0
    for i, fn in enumerate(CRITERIA, 1):
        try:
            ok, detail = fn()
        except Exception as exc:  # report and continue with the next criterion
            ok, detail = False, f"raised {type(exc).__name__}: {exc}"
        _report(i, ok, detail)
        failed += not ok
    sys.exit(1 if failed else 0)
