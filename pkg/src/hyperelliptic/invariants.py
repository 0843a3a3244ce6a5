"""Topological and holomorphic invariants of a hyperelliptic manifold X = T/G.

Everything here is read off a validated :class:`CrystalData`.  The integral
pieces come from the extension 0 -> Lambda -> Gamma -> G -> 1: H_1(X, Z) is
Gamma^ab, the map psi : (Lambda^dual)^G -> H^2(G, Z) pairs invariant functionals
with the factor set, and its image is exactly the kernel of H^2(G, Z) -> H^2(X, Z).
The holomorphic pieces come from the tangent representation of G on
V = (Lambda (x) R, J).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb, lcm
from typing import Sequence

from .cohomology import (BudgetExceeded, CohomologyClass, bockstein, cohomology,
                         cup_with_extension, trivial_module)
from .crystal import (CrystalData, ValidationReport, coinvariants, factor_set,
                      gamma_abelianized, sum_characters, trace_multiplicities, validate)
from .exact.abelian import FgAbelianGroup, Subgroup, hom_kernel, preimage_generators
from .exact.cyclotomic import CycloNumber
from .exact.matrices import IntMatrix, RatMatrix, rational_rank, solve_rational
from .exact.smith import lattice_basis, smith_normal_form
from .finite_group import QmodZCharacter, character_group, is_real_valued


class CrossCheckError(ArithmeticError):
    """Two independent computations of the same invariant disagree."""

    def __init__(self, identity: str, detail: str = ""):
        self.identity = identity
        super().__init__(f"cross-check failed: {identity}" + (f" ({detail})" if detail else ""))


class DecompositionError(ValueError):
    pass


# Betti and Hodge numbers ---------------------------------------------------------

def char_poly(a: IntMatrix) -> list[int]:
    """Coefficients c_0 = 1, c_1, ..., c_r of det(x I - a) = sum c_k x^{r-k} (Faddeev-LeVerrier).

    For an integer matrix every intermediate stays integral, and k divides tr(a M_k).
    """
    r = a.nrows
    coeffs = [1]
    m = IntMatrix.zeros(r, r)
    ident = IntMatrix.identity(r)
    for k in range(1, r + 1):
        m = a @ m + ident.scale(coeffs[-1])
        t = (a @ m).trace()
        if t % k:
            raise ArithmeticError("characteristic polynomial of an integer matrix is not integral")
        coeffs.append(-t // k)
    return coeffs


def exterior_traces(a: IntMatrix) -> list[int]:
    """tr(Lambda^k a) for k = 0..r, i.e. the coefficients of det(I + t a)."""
    c = char_poly(a)
    return [(-1) ** k * x for k, x in enumerate(c)]


def betti_numbers(d: CrystalData) -> list[int]:
    """b_k = dim H^k(T, Q)^G = (1/|G|) sum_g tr(Lambda^k L(g))."""
    G = d.group
    r = d.rank
    totals = [0] * (r + 1)
    for g in G.elements():
        for k, t in enumerate(exterior_traces(d.linear[g])):
            totals[k] += t
    out = []
    for k, t in enumerate(totals):
        if t % G.order or t < 0:
            raise ArithmeticError(f"average of tr(Lambda^{k} L(g)) is {Fraction(t, G.order)}; "
                                  "the action is not a valid representation")
        out.append(t // G.order)
    return out


@dataclass(frozen=True)
class TangentDecomposition:
    characters: tuple[tuple[QmodZCharacter, int], ...]
    source: str  # "given", "computed-from-J" or "forced"

    def multiplicity(self, chi: QmodZCharacter) -> int:
        return sum(k for c, k in self.characters if c == chi)

    def expanded(self) -> list[QmodZCharacter]:
        out = []
        for chi, k in self.characters:
            out.extend([chi] * k)
        return out

    @property
    def dimension(self) -> int:
        return sum(k for _, k in self.characters)


def _complex_traces(d: CrystalData, conductor: int) -> list[CycloNumber]:
    """tr_C L(g) on (Lambda (x) R, J) = (tr L - i tr(J L)) / 2."""
    J = d.complex_structure
    i = CycloNumber.root_of_unity(Fraction(1, 4), conductor)
    out = []
    for g in d.group.elements():
        a = d.linear[g]
        tj = (J @ RatMatrix(a.tolist())).trace()
        out.append((CycloNumber.rational(a.trace(), conductor) - i * tj) * Fraction(1, 2))
    return out


def _decomposition_from_j(d: CrystalData) -> dict[tuple, int]:
    G = d.group
    conductor = lcm(G.exponent(), 4)
    traces = _complex_traces(d, conductor)
    out = {}
    for chi in character_group(G):
        total = CycloNumber.rational(0, conductor)
        for g in G.elements():
            total = total + traces[g] * chi.cyclo(g, conductor).conjugate()
        total = total / G.order
        if not total.is_rational():
            raise DecompositionError(f"tangent multiplicity of {_label(G, chi)} is not rational")
        p = total.rational_part()
        if p.denominator != 1 or p < 0:
            raise DecompositionError(f"tangent multiplicity of {_label(G, chi)} is {p}, "
                                     "not a non-negative integer")
        out[chi.on_generators(G)] = int(p)
    return out


def _label(G, chi) -> str:
    return "(" + ", ".join(str(v) for v in chi.on_generators(G)) + ")"


def tangent_decomposition(d: CrystalData) -> TangentDecomposition:
    G = d.group
    if not G.is_abelian():
        raise DecompositionError("tangent decomposition needs an abelian group")
    chars = character_group(G)
    by_key = {chi.on_generators(G): chi for chi in chars}
    m = trace_multiplicities(d)
    from_j = _decomposition_from_j(d) if d.complex_structure is not None else None
    if d.tangent_characters is not None:
        p = {key: 0 for key in by_key}
        for chi, k in d.tangent_characters:
            p[chi.on_generators(G)] += k
        source = "given"
        if from_j is not None and from_j != p:
            raise DecompositionError("given tangent characters disagree with the complex structure")
    elif from_j is not None:
        p, source = from_j, "computed-from-J"
    else:
        unresolved = [chi for chi in chars if not is_real_valued(chi) and m[chi.on_generators(G)]]
        if unresolved:
            raise DecompositionError(
                f"character {_label(G, unresolved[0])} is not real and occurs in the lattice; "
                "give a complex structure or tangent characters to split it")
        p, source = {key: mk // 2 for key, mk in m.items()}, "forced"
    for chi in chars:
        key, bar = chi.on_generators(G), (-chi).on_generators(G)
        if is_real_valued(chi):
            if 2 * p[key] != m[key]:
                raise DecompositionError(f"real character {_label(G, chi)} has tangent multiplicity "
                                         f"{p[key]} but lattice multiplicity {m[key]}")
        elif p[key] + p[bar] != m[key]:
            raise DecompositionError(f"multiplicities of {_label(G, chi)} and its conjugate sum to "
                                     f"{p[key] + p[bar]}, expected {m[key]}")
    if sum(p.values()) != d.n:
        raise DecompositionError(f"tangent multiplicities sum to {sum(p.values())}, expected {d.n}")
    pairs = tuple((by_key[key], p[key]) for key in sorted(p) if p[key])
    return TangentDecomposition(pairs, source)


def hodge_numbers(d: CrystalData, decomposition: TangentDecomposition | None = None) -> list[int]:
    """h^{0,q}: trivial-character multiplicity of Lambda^q of the conjugate tangent representation."""
    dec = decomposition or tangent_decomposition(d)
    chars = dec.expanded()
    out = []
    for q in range(d.n + 1):
        count = 0
        for subset in combinations(range(len(chars)), q):
            total = sum_characters(d.group, [(chars[i], 1) for i in subset])
            count += total.is_trivial()
        out.append(count)
    return out


# psi, H^1 and the torsion of H^2 ---------------------------------------------------

@dataclass(frozen=True)
class PsiImage:
    space: FgAbelianGroup                    # H^2(G, Z)
    functionals: tuple[tuple[int, ...], ...]  # Z-basis of (Lambda^dual)^G
    images: tuple[tuple[int, ...], ...]       # psi of each basis functional, H^2 coordinates
    subgroup: Subgroup

    def contains(self, c: CohomologyClass) -> bool:
        return self.subgroup.contains(c.coordinates)

    @property
    def image(self) -> FgAbelianGroup:
        return self.subgroup.group

    @property
    def cokernel(self) -> FgAbelianGroup:
        return self.subgroup.quotient


def psi_image(d: CrystalData) -> PsiImage:
    G = d.group
    space = cohomology(G, trivial_module(G), 2)
    funcs = tuple(d.dual_module.fixed_lattice())
    ext = factor_set(d)
    images = tuple(cup_with_extension(ext, phi, 0).coordinates for phi in funcs)
    return PsiImage(space, funcs, images, space.subgroup(images))


@dataclass(frozen=True)
class H1Result:
    group: FgAbelianGroup
    embedding: tuple[tuple[int, ...], ...]  # Z-basis of ker psi inside Lambda^dual


def h1_integral(d: CrystalData, psi: PsiImage | None = None) -> H1Result:
    """H^1(X, Z) = Hom(Gamma, Z), once as the free part of Gamma^ab and once as ker psi."""
    psi = psi or psi_image(d)
    rank_a = gamma_abelianized(d).free_rank
    k = len(psi.functionals)
    t = psi.space.ngens
    if k == 0:
        kernel = []
    elif t == 0:
        kernel = [tuple(int(i == j) for i in range(k)) for j in range(k)]
    else:
        f = IntMatrix.from_columns(psi.images, nrows=t)
        kernel = lattice_basis(preimage_generators(f, psi.space.relation_matrix()), k)
    if len(kernel) != rank_a:
        raise CrossCheckError("rank Gamma^ab = rank ker psi", f"{rank_a} vs {len(kernel)}")
    r = d.rank
    emb = tuple(tuple(sum(c * phi[i] for c, phi in zip(v, psi.functionals)) for i in range(r))
                for v in kernel)
    return H1Result(FgAbelianGroup((), rank_a), emb)


@dataclass(frozen=True)
class TorsionH2:
    group: FgAbelianGroup      # H^1(G, Lambda^dual)
    proven: bool               # identification with Tors H^2(X, Z) holds (G cyclic, psi onto)
    gamma_torsion: FgAbelianGroup  # Tors Gamma^ab, which is Tors H^2(X, Z) by universal coefficients
    cyclic: bool = True

    @property
    def status(self) -> str:
        if self.proven:
            return "proven"
        if self.cyclic:
            return "quotient of Tors H^2 by coker psi"
        return "candidate, unproven for this G"


def tors_h2(d: CrystalData, psi: PsiImage | None = None) -> TorsionH2:
    G = d.group
    h1 = cohomology(G, d.dual_module, 1)
    h1 = FgAbelianGroup(h1.torsion, h1.free_rank)
    gt = gamma_abelianized(d).torsion_subgroup()
    cyclic = G.is_cyclic()
    proven = False
    if cyclic:
        if any(G.order % t for t in h1.torsion):
            raise CrossCheckError("m-torsion of H^1(G, Lambda^dual)", str(h1))
        proven = (psi or psi_image(d)).cokernel.is_trivial
        if proven and h1 != gt:
            raise CrossCheckError("H^1(G, Lambda^dual) = Tors Gamma^ab when psi is onto", f"{h1} vs {gt}")
    return TorsionH2(h1, proven, gt, cyclic)


def phi_kernel(d: CrystalData) -> FgAbelianGroup | None:
    """Kernel of H^1(G, Lambda^dual) -> H^3(G, Z), cup with the extension class.

    None when H^3(G, Z) is out of the cochain budget.
    """
    G = d.group
    dual = d.dual_module
    src = cohomology(G, dual, 1)
    if G.is_cyclic():
        # H^3 of a cyclic group with trivial Z coefficients vanishes
        return FgAbelianGroup(src.torsion, src.free_rank)
    try:
        tgt = cohomology(G, trivial_module(G), 3)
    except BudgetExceeded:
        return None
    ext = factor_set(d)
    images = []
    for j in range(src.ngens):
        rep = src.lift([int(i == j) for i in range(src.ngens)])
        images.append(cup_with_extension(ext, rep, 1).coordinates)
    k = hom_kernel(src, tgt, images)
    return FgAbelianGroup(k.torsion, k.free_rank)


# Chern classes, canonical bundle, automorphisms -----------------------------------

@dataclass(frozen=True)
class CharacterChern:
    character: QmodZCharacter
    multiplicity: int
    bockstein: tuple[int, ...]   # coordinates in H^2(G, Z)
    in_image_of_psi: bool        # c_1 of the line bundle vanishes in H^2(X, Z)


@dataclass(frozen=True)
class ChernVerdict:
    characters: tuple[CharacterChern, ...]
    determinant: QmodZCharacter
    total_c1: tuple[int, ...]
    total_c1_trivial: bool
    all_ci_trivial: bool
    canonical_trivial_in_pic: bool
    canonical_c1_trivial: bool


def chern_verdict(d: CrystalData, decomposition: TangentDecomposition | None = None,
                  psi: PsiImage | None = None) -> ChernVerdict:
    dec = decomposition or tangent_decomposition(d)
    psi = psi or psi_image(d)
    G = d.group
    rows = []
    for chi, k in dec.characters:
        b = bockstein(G, chi)
        rows.append(CharacterChern(chi, k, b.coordinates, psi.contains(b)))
    det = sum_characters(G, dec.characters)
    bdet = bockstein(G, det)
    total = psi.contains(bdet)
    all_ci = all(c.in_image_of_psi for c in rows)
    verdict = ChernVerdict(tuple(rows), det, bdet.coordinates, total, all_ci,
                           det.is_trivial(), total)
    if all_ci and not total:
        raise CrossCheckError("all c_i trivial implies c_1 trivial")
    if verdict.canonical_trivial_in_pic and not verdict.canonical_c1_trivial:
        raise CrossCheckError("K_X trivial in Pic implies c_1(K_X) = 0")
    return verdict


def aut0_dimension(d: CrystalData, decomposition: TangentDecomposition | None = None,
                   hodge: Sequence[int] | None = None) -> int:
    """dim Aut^0(X): the multiplicity of the trivial character in the tangent representation."""
    dec = decomposition or tangent_decomposition(d)
    G = d.group
    p = sum(k for chi, k in dec.characters if chi.is_trivial())
    h = hodge if hodge is not None else hodge_numbers(d, dec)
    if (p == 0) != (h[1] == 0):
        raise CrossCheckError("Aut^0 trivial iff h^{0,1} = 0", f"p_triv={p}, h01={h[1]}")
    if G.is_cyclic() and G.order > 1 and p < 1 and validate(d).free:
        raise CrossCheckError("cyclic free action has a nontrivial fixed torus")
    return p


def ns_invariant_rank(d: CrystalData) -> int:
    """Rank of the G-invariant Neron-Severi lattice: integral alternating forms E
    with E(Lx, Ly) = E(x, y) for all g and E(Jx, Jy) = E(x, y)."""
    J = d.complex_structure
    if J is None:
        raise ValueError("the Neron-Severi rank needs a complex structure")
    r = d.rank
    pairs = [(i, j) for i in range(r) for j in range(i + 1, r)]
    # the unknown E is sum_{i<j} e_ij (E_ij - E_ji); each constraint M^T E M - E = 0
    # contributes its upper-triangular entries as linear equations in e_ij; J is
    # scaled by D to clear denominators, turning the constraint into (DJ)^T E (DJ) = D^2 E
    mats = [(1, d.linear[g].tolist()) for g in d.group.generators]
    den = lcm(*(x.denominator for row in J.tolist() for x in row))
    mats.append((den, [[int(x * den) for x in row] for row in J.tolist()]))
    rows = []
    for scale, m in mats:
        s2 = scale * scale
        for a, b in pairs:
            rows.append([m[i][a] * m[j][b] - m[j][a] * m[i][b] - s2 * ((i, j) == (a, b))
                         for i, j in pairs])
    if not rows:
        return len(pairs)
    return len(pairs) - smith_normal_form(IntMatrix(rows, ncols=len(pairs))).rank


def complex_determinants(d: CrystalData) -> list[CycloNumber]:
    """det of L(g) as a complex-linear map of (Lambda (x) Q, J), in Q(i)."""
    J = d.complex_structure
    if J is None:
        raise ValueError("complex determinants need a complex structure")
    r, n = d.rank, d.n
    basis: list[tuple] = []
    k = 0
    while len(basis) < r:
        e = tuple(Fraction(int(i == k)) for i in range(r))
        cand = basis + [e, J.apply(e)]
        if rational_rank(RatMatrix.from_columns(cand, nrows=r)) == len(cand):
            basis = cand
        k += 1
    bmat = RatMatrix.from_columns(basis, nrows=r)
    i = CycloNumber.zeta(4)
    out = []
    for g in d.group.elements():
        a = RatMatrix(d.linear[g].tolist())
        m = [[None] * n for _ in range(n)]
        for col in range(n):
            coeff = solve_rational(bmat, a.apply(basis[2 * col]))
            for row in range(n):
                m[row][col] = CycloNumber(4, [coeff[2 * row], coeff[2 * row + 1]])
        out.append(_cyclo_det(m, i))
    return out


def _cyclo_det(m: list[list[CycloNumber]], unit: CycloNumber) -> CycloNumber:
    n = len(m)
    m = [row[:] for row in m]
    det = CycloNumber.rational(1, unit.conductor)
    for c in range(n):
        p = next((r for r in range(c, n) if not m[r][c].is_zero()), None)
        if p is None:
            return CycloNumber.rational(0, unit.conductor)
        if p != c:
            m[c], m[p] = m[p], m[c]
            det = -det
        det = det * m[c][c]
        inv = m[c][c].inverse()
        for r in range(c + 1, n):
            if not m[r][c].is_zero():
                f = m[r][c] * inv
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return det


# the assembled report ------------------------------------------------------------

@dataclass
class InvariantReport:
    n: int
    group_order: int
    validation: ValidationReport
    betti: list[int] | None = None
    hodge: list[int] | None = None
    h1: H1Result | None = None
    tors_h2: TorsionH2 | None = None
    h2_full: FgAbelianGroup | None = None
    gamma_ab: FgAbelianGroup | None = None
    coinvariants: FgAbelianGroup | None = None
    psi: PsiImage | None = None
    phi_kernel: FgAbelianGroup | None = None
    tangent: TangentDecomposition | None = None
    chern: ChernVerdict | None = None
    aut0_dim: int | None = None
    ns_rank: int | None = None
    unavailable: dict[str, str] = field(default_factory=dict)


def full_report(d: CrystalData) -> InvariantReport:
    v = validate(d)
    rep = InvariantReport(d.n, d.group.order, v)
    if not v.valid:
        rep.unavailable["pipeline"] = "datum failed validation"
        return rep
    G = d.group
    rep.betti = betti_numbers(d)
    rep.gamma_ab = gamma_abelianized(d)
    rep.coinvariants = coinvariants(d)
    rep.psi = psi_image(d)
    rep.h1 = h1_integral(d, rep.psi)
    rep.tors_h2 = tors_h2(d, rep.psi)
    rep.phi_kernel = phi_kernel(d)
    if rep.phi_kernel is None:
        rep.unavailable["phi_kernel"] = "H^3(G, Z) exceeds the cochain budget"
    if v.bdf:
        rep.h2_full = FgAbelianGroup(rep.tors_h2.gamma_torsion.torsion, rep.betti[2])
    else:
        rep.unavailable["h2_full"] = "only determined for cyclic G"
    if G.is_abelian():
        try:
            rep.tangent = tangent_decomposition(d)
        except DecompositionError as exc:
            rep.unavailable["tangent"] = str(exc)
    else:
        rep.unavailable["tangent"] = "G is not abelian"
    if rep.tangent is not None:
        rep.hodge = hodge_numbers(d, rep.tangent)
        rep.chern = chern_verdict(d, rep.tangent, rep.psi)
        rep.aut0_dim = aut0_dimension(d, rep.tangent, rep.hodge)
    else:
        for key in ("hodge", "chern", "aut0_dim"):
            rep.unavailable[key] = "no tangent decomposition"
    if d.complex_structure is not None:
        rep.ns_rank = ns_invariant_rank(d)
    else:
        rep.unavailable["ns_rank"] = "no complex structure"
    check_report(d, rep)
    return rep


def check_report(d: CrystalData, rep: InvariantReport) -> None:
    """Assert the identities every valid datum satisfies; raises CrossCheckError."""
    b, n, G = rep.betti, d.n, d.group
    if G.order > 1 and sum((-1) ** k * x for k, x in enumerate(b)):
        raise CrossCheckError("Euler characteristic sum (-1)^k b_k = 0", str(b))
    if any(b[k] != b[2 * n - k] for k in range(2 * n + 1)):
        raise CrossCheckError("Poincare duality b_k = b_{2n-k}", str(b))
    if b[0] != 1:
        raise CrossCheckError("b_0 = 1", str(b))
    if b[1] != rep.h1.group.free_rank:
        raise CrossCheckError("b_1 = rank H^1(X, Z)", f"{b[1]} vs {rep.h1.group.free_rank}")
    if rep.hodge is not None:
        if b[1] != 2 * rep.hodge[1]:
            raise CrossCheckError("b_1 = 2 h^{0,1}", f"{b[1]} vs {rep.hodge}")
        if any(h > comb(n, q) for q, h in enumerate(rep.hodge)):
            raise CrossCheckError("h^{0,q} bounded by the torus value")
    if rep.gamma_ab.torsion_subgroup() != rep.tors_h2.gamma_torsion:
        raise CrossCheckError("Tors Gamma^ab computed consistently")
    if rep.phi_kernel is not None:
        # Tors H^2(X, Z) is filtered with pieces coker psi and ker phi
        lhs = rep.tors_h2.gamma_torsion.order()
        rhs = rep.psi.cokernel.order() * rep.phi_kernel.order()
        if lhs != rhs:
            raise CrossCheckError("|Tors H^2(X,Z)| = |coker psi| * |ker phi|", f"{lhs} vs {rhs}")
    if rep.validation.bdf and G.order > 1:
        if trace_multiplicities(d)[(Fraction(0),) * len(G.generators)] < 2:
            raise CrossCheckError("cyclic free action fixes a real subspace of dimension >= 2")
        # a product (E x A)/G has psi onto; the rest follows from that
        if rep.psi.cokernel.is_trivial:
            if rep.gamma_ab.torsion_subgroup() != rep.coinvariants.torsion_subgroup():
                raise CrossCheckError("Tors Gamma^ab = Tors Lambda_G when psi is onto")
            if rep.chern is not None and not rep.chern.all_ci_trivial:
                raise CrossCheckError("tangent line bundles have c_1 = 0 when psi is onto")
    if rep.tangent is not None and d.complex_structure is not None:
        dets = complex_determinants(d)
        det = rep.chern.determinant
        c = lcm(4, det.order())
        for g in G.elements():
            if dets[g].embed(c) != CycloNumber.root_of_unity(det(g), c):
                raise CrossCheckError("determinant character = det_C L(g)", f"element {g}")
