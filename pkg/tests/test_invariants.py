import dataclasses
import random
from math import comb
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from battery import bdf_battery, betti_oracle, gallery_reports, principal_minor_sums
from hyperelliptic.cohomology import cohomology
from hyperelliptic.crystal import CrystalData, gamma_abelianized, validate
from hyperelliptic.document import load
from hyperelliptic.exact import FgAbelianGroup, IntMatrix
from hyperelliptic.gallery import entry
from hyperelliptic.invariants import (CrossCheckError, DecompositionError, betti_numbers,
                                      char_poly, check_report, full_report, hodge_numbers,
                                      ns_invariant_rank, tangent_decomposition)
from hyperelliptic.random_data import _random_unimodular, random_bdf
from hyperelliptic.report import report_dict


def _reports():
    return [(e.id, d, r) for e, d, r in gallery_reports()]


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 6).flatmap(
    lambda n: st.lists(st.lists(st.integers(-4, 4), min_size=n, max_size=n), min_size=n, max_size=n)))
def test_char_poly_matches_minors(rows):
    a = IntMatrix(rows)
    cp = char_poly(a)  # det(xI - a) = x^r - e1 x^{r-1} + e2 x^{r-2} - ...
    assert [c * (-1) ** k for k, c in enumerate(cp)] == principal_minor_sums(a)


def test_betti_gallery_oracle():
    for _, d, r in _reports():
        assert r.betti == betti_oracle(d)


def test_betti_battery_oracle():
    for d, r in bdf_battery()[:40]:
        assert r.betti == betti_oracle(d)


@pytest.mark.parametrize("entry_id,hodge", [
    ("torus-1d", [1, 1]),
    ("torus-3d", [1, 3, 3, 1]),
    ("hyperelliptic-surface-z2", [1, 1, 0]),
    ("hyperelliptic-surface-z3", [1, 1, 0]),
    ("hyperelliptic-surface-z4", [1, 1, 0]),
    ("hyperelliptic-surface-z6", [1, 1, 0]),
    ("bdf-threefold-z2", [1, 1, 1, 1]),
    ("bdf-threefold-z4", [1, 1, 0, 0]),
    ("hyperelliptic-4fold-z2z2", [1, 0, 1, 2, 0]),
])
def test_hodge(entry_id, hodge):
    d = entry(entry_id).data()
    assert hodge_numbers(d) == hodge
    assert all(h <= comb(d.n, q) for q, h in enumerate(hodge))


def test_torus_invariants():
    d = entry("torus-3d").data()
    r = full_report(d)
    assert r.betti == [comb(6, k) for k in range(7)]
    assert r.tors_h2.group.is_trivial and r.aut0_dim == 3
    assert r.ns_rank == 9


def test_surfaces_betti():
    for k in (2, 3, 4, 6):
        r = full_report(entry(f"hyperelliptic-surface-z{k}").data())
        assert r.betti == [1, 2, 2, 2, 1]
        assert r.aut0_dim == 1
        assert r.ns_rank in (2, None)  # None without a complex structure


def test_non_real_characters_need_structure():
    d = entry("hyperelliptic-surface-z3").data()
    assert tangent_decomposition(d).source == "given"
    bare = dataclasses.replace(d, tangent_characters=None)
    with pytest.raises(DecompositionError, match="not real"):
        tangent_decomposition(bare)
    r = full_report(bare)
    assert r.hodge is None and "tangent" in r.unavailable and r.betti == [1, 2, 2, 2, 1]


def test_real_characters_are_forced():
    d = entry("bdf-threefold-z2").data()
    bare = dataclasses.replace(d, complex_structure=None)
    dec = tangent_decomposition(bare)
    assert dec.source == "forced"
    assert dec == dataclasses.replace(tangent_decomposition(d), source="forced")


def test_given_characters_must_match_structure():
    d = entry("bdf-threefold-z2").data()
    trivial, sign = sorted(tangent_decomposition(d).characters, key=lambda p: p[1])
    wrong = ((trivial[0], 2), (sign[0], 1))
    with pytest.raises(DecompositionError):
        tangent_decomposition(dataclasses.replace(d, tangent_characters=wrong))


def test_ns_rank_oracle():
    # for doubled-block data NS rank is sum of squared tangent multiplicities
    for d, r in bdf_battery():
        expected = sum(k * k for _, k in r.tangent.characters)
        assert r.ns_rank == expected


def test_invalid_datum_degrades():
    d = entry("bdf-threefold-z2").data()
    bad = CrystalData(d.n, d.group, d.linear, (d.translations[0], (0,) * 6))
    assert not validate(bad).valid
    r = full_report(bad)
    assert r.betti is None and "pipeline" in r.unavailable
    out = report_dict(bad, r)
    assert out["validation"]["valid"] is False and out["validation"]["offending_element"] == 1


def test_cross_check_detects_corruption():
    d = entry("bdf-threefold-z2").data()
    r = full_report(d)
    r.betti = [1, 2, 6, 8, 5, 2, 1]
    with pytest.raises(CrossCheckError, match="Euler"):
        check_report(d, r)


def test_torsion_product_identity():
    for _, d, r in _reports():
        if r.phi_kernel is None:
            continue
        assert r.tors_h2.gamma_torsion.order() == r.psi.cokernel.order() * r.phi_kernel.order()


def test_fourfold_candidate_flagged():
    r = full_report(entry("hyperelliptic-4fold-z2z2").data())
    assert not r.tors_h2.proven
    assert r.tors_h2.status == "candidate, unproven for this G"
    assert r.tors_h2.gamma_torsion == FgAbelianGroup((2, 2, 2, 2, 2, 4, 4), 0)


def _conjugate(d, P):
    Pi = P.unimodular_inverse()
    lin = tuple(P @ a @ Pi for a in d.linear)
    trans = tuple(tuple(P.apply(u)) for u in d.translations)
    J = None if d.complex_structure is None else P @ d.complex_structure @ Pi
    return CrystalData(d.n, d.group, lin, trans, J, d.tangent_characters)


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 2 ** 32))
def test_invariant_under_change_of_basis(seed):
    rng = random.Random(seed)
    d = random_bdf(rng, max_rank=8)
    e = _conjugate(d, _random_unimodular(rng, d.rank))
    a, b = report_dict(d, full_report(d)), report_dict(e, full_report(e))
    for key in ("betti", "hodge", "gamma_ab", "coinvariants", "tors_h2", "h2_full",
                "phi_kernel", "tangent", "aut0_dim", "ns_rank"):
        assert a[key] == b[key], key
    assert a["chern"]["total_c1_trivial"] == b["chern"]["total_c1_trivial"]


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 2 ** 32))
def test_isogenous_sublattice_same_rational_invariants(seed):
    # the sublattice option only changes the integral structure
    d = random_bdf(random.Random(seed), max_rank=8, sublattice=True)
    r = full_report(d)
    assert r.betti == betti_numbers(d)
    assert r.hodge[1] * 2 == r.betti[1]
    assert ns_invariant_rank(d) == sum(k * k for _, k in r.tangent.characters)


NONPRODUCT = Path(__file__).parent / "data" / "nonproduct-z4.json"


def test_nonproduct_cyclic_quotient():
    # a free Z/4 quotient whose lattice does not split off the translation direction:
    # psi misses half of H^2(G, Z) and a tangent line bundle has c_1 != 0
    d = load(NONPRODUCT)
    r = full_report(d)
    assert r.validation.valid and r.validation.bdf
    assert r.psi.space == FgAbelianGroup((4,), 0)
    assert r.psi.cokernel == FgAbelianGroup((2,), 0)
    assert r.chern.all_ci_trivial is False
    assert r.tors_h2.group == FgAbelianGroup((2, 2, 2), 0)
    assert r.tors_h2.gamma_torsion == FgAbelianGroup((2, 2, 2, 2), 0)
    assert not r.tors_h2.proven and r.tors_h2.status == "quotient of Tors H^2 by coker psi"
    assert r.coinvariants.torsion_subgroup() == FgAbelianGroup((2, 2, 2), 0)


def test_nonproduct_order_from_gamma_alone():
    # |coker psi| = |Tors Gamma^ab| / |H^1(G, Lambda^dual)| needs no psi computation
    d = load(NONPRODUCT)
    h1 = cohomology(d.group, d.dual_module, 1)
    assert gamma_abelianized(d).torsion_subgroup().order() // h1.order() == 2
