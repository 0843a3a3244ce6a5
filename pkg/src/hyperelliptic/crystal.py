"""Crystallographic data for X = T/G and the checks that make it a hyperelliptic manifold.

A datum is a lattice Lambda = Z^{2n}, a finite group G, for each g an integer
matrix L(g) (the linear part) and a rational vector u_g (the translation part),
so that g acts on Lambda (x) R by x -> L(g) x + u_g.  Composition gives the
factor set lambda(g, h) = u_g + L(g) u_h - u_{gh}, which has to lie in Lambda.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from .cohomology import ExtensionClass, GModule
from .exact.abelian import FgAbelianGroup, cokernel
from .exact.cyclotomic import CycloNumber
from .exact.matrices import IntMatrix, RatMatrix, format_rational
from .exact.smith import smith_normal_form, solve_integer
from .finite_group import (FiniteGroup, GroupError, QmodZCharacter, character_group,
                           is_real_valued)

MAX_RANK = 32


class CrystalError(ValueError):
    """A crystallographic datum violates one of its structural invariants."""


@dataclass(frozen=True, eq=False)
class CrystalData:
    n: int
    group: FiniteGroup
    linear: tuple[IntMatrix, ...]
    translations: tuple[tuple[Fraction, ...], ...]
    complex_structure: RatMatrix | None = None
    tangent_characters: tuple[tuple[QmodZCharacter, int], ...] | None = None

    def __post_init__(self):
        G, n = self.group, self.n
        r = 2 * n
        if n < 1:
            raise CrystalError("complex dimension must be at least 1")
        if r > MAX_RANK:
            raise CrystalError(f"lattice rank {r} exceeds the supported bound {MAX_RANK}")
        lin = tuple(a if isinstance(a, IntMatrix) else IntMatrix(a) for a in self.linear)
        if len(lin) != G.order:
            raise CrystalError(f"need a linear part for each of the {G.order} group elements, "
                               f"got {len(lin)}")
        for g, a in enumerate(lin):
            if a.shape != (r, r):
                raise CrystalError(f"linear part of element {g} has shape {a.shape}, expected {(r, r)}")
        trans = tuple(tuple(Fraction(x) for x in u) for u in self.translations)
        if len(trans) != G.order:
            raise CrystalError(f"need a translation for each of the {G.order} group elements, "
                               f"got {len(trans)}")
        for g, u in enumerate(trans):
            if len(u) != r:
                raise CrystalError(f"translation length of element {g} is {len(u)}, expected {r}")
        e = G.identity
        if not lin[e].is_identity():
            raise CrystalError("linear part of the identity is not the identity matrix")
        for g in G.elements():
            d = lin[g].det()
            if d not in (1, -1):
                raise CrystalError(f"linear part of element {g} has determinant {d}, not +-1")
        for g in G.elements():
            for h in G.elements():
                if lin[g] @ lin[h] != lin[G.mul[g][h]]:
                    raise CrystalError(f"linear parts are not a representation: "
                                       f"L({g})L({h}) != L({G.mul[g][h]})")
        if any(x.denominator != 1 for x in trans[e]):
            raise CrystalError("translation of the identity is not a lattice vector")
        trans = tuple((Fraction(0),) * r if g == e else u for g, u in enumerate(trans))
        object.__setattr__(self, "linear", lin)
        object.__setattr__(self, "translations", trans)
        for g in G.elements():
            for h in G.elements():
                lam = self._raw_factor(g, h)
                for i, x in enumerate(lam):
                    if x.denominator != 1:
                        raise CrystalError(
                            f"closure fails at ({g},{h}): lambda has non-integer coordinate {i} "
                            f"(value {format_rational(x)})")
        J = self.complex_structure
        if J is not None:
            J = J if isinstance(J, RatMatrix) else RatMatrix(J)
            object.__setattr__(self, "complex_structure", J)
            if J.shape != (r, r):
                raise CrystalError(f"complex structure has shape {J.shape}, expected {(r, r)}")
            if J @ J != -RatMatrix.identity(r):
                raise CrystalError("complex structure does not square to -I")
            for g in G.elements():
                if J @ lin[g] != lin[g] @ J:
                    raise CrystalError(f"complex structure does not commute with L({g})")
        if self.tangent_characters is not None:
            tc = tuple((chi, int(k)) for chi, k in self.tangent_characters)
            if any(k < 0 for _, k in tc):
                raise CrystalError("tangent character multiplicities must be non-negative")
            if sum(k for _, k in tc) != n:
                raise CrystalError(f"tangent character multiplicities sum to "
                                   f"{sum(k for _, k in tc)}, expected {n}")
            object.__setattr__(self, "tangent_characters", tc)

    def _raw_factor(self, g: int, h: int) -> tuple[Fraction, ...]:
        u, a = self.translations, self.linear[g]
        gh = self.group.mul[g][h]
        au = a.apply(u[h])
        return tuple(x + y - z for x, y, z in zip(u[g], au, u[gh]))

    @property
    def rank(self) -> int:
        return 2 * self.n

    # short names matching the usual notation
    G = property(lambda self: self.group)
    L = property(lambda self: self.linear)
    u = property(lambda self: self.translations)
    J = property(lambda self: self.complex_structure)

    def _key(self):
        tc = None
        if self.tangent_characters is not None:
            tc = tuple(sorted((chi.values, k) for chi, k in self.tangent_characters if k))
        return (self.n, self.group, self.linear, self.translations, self.complex_structure, tc)

    def __eq__(self, other):
        return isinstance(other, CrystalData) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    @cached_property
    def lattice_module(self) -> GModule:
        return GModule(self.group, self.linear)

    @cached_property
    def dual_module(self) -> GModule:
        return self.lattice_module.dual()


# validation -------------------------------------------------------------------

@dataclass(frozen=True)
class ValidationReport:
    faithful: bool
    no_translations: bool
    free: bool
    offending_element: int | None
    even: bool | None
    bdf: bool
    messages: tuple[str, ...] = field(default=())

    @property
    def torsion_free(self) -> bool:
        # a crystallographic group is torsion free exactly when G acts freely
        return self.free

    @property
    def valid(self) -> bool:
        return self.faithful and self.no_translations and self.free and self.even is not False


def validate(d: CrystalData) -> ValidationReport:
    G = d.group
    msgs = []
    trivial_linear = [g for g in G.elements() if g != G.identity and d.linear[g].is_identity()]
    faithful = not trivial_linear
    if not faithful:
        msgs.append(f"element {trivial_linear[0]} has trivial linear part: "
                    "the action is not faithful and G contains a translation")
    offending = next((g for g in G.elements() if g != G.identity and not free_action(d, g)), None)
    free = offending is None
    if not free:
        msgs.append(f"element {offending} has a fixed point on the torus")
    even = None
    if G.is_abelian():
        even = evenness(d)
        if not even:
            msgs.append("some real isotypic component has odd dimension")
    else:
        msgs.append("evenness not checked: G is not abelian")
    bdf = G.is_cyclic()
    return ValidationReport(faithful, faithful, free, offending, even, bdf, tuple(msgs))


def free_action(d: CrystalData, g: int) -> bool:
    """True iff x -> L(g) x + u_g has no fixed point on the torus."""
    G = d.group
    if g == G.identity:
        raise ValueError("freeness is only asked of non-identity elements")
    r = d.rank
    a = IntMatrix.identity(r) - d.linear[g]
    # rows of `annihilator` cut out the rational image of (I - L(g))
    annihilator = smith_normal_form(a.T).kernel_basis()
    if not annihilator:
        return False
    p = IntMatrix(annihilator, ncols=r)
    target = p.apply(d.translations[g])
    if any(x.denominator != 1 for x in target):
        return True
    return solve_integer(p, [int(x) for x in target]) is None


def trace_multiplicities(d: CrystalData) -> dict[tuple, int]:
    """m_chi: multiplicity of each character chi of G in Lambda (x) C (abelian G)."""
    G = d.group
    chars = character_group(G)
    e = G.exponent()
    out = {}
    for chi in chars:
        total = CycloNumber.rational(0, e)
        for g in G.elements():
            total = total + chi.cyclo(g, e).conjugate() * d.linear[g].trace()
        total = total / G.order
        if not total.is_rational():
            raise ArithmeticError("character multiplicity is not rational")
        m = total.rational_part()
        if m.denominator != 1 or m < 0:
            raise ArithmeticError(f"character multiplicity {m} is not a non-negative integer")
        out[chi.on_generators(G)] = int(m)
    return out


def evenness(d: CrystalData) -> bool:
    G = d.group
    if not G.is_abelian():
        raise GroupError("evenness is implemented for abelian G only")
    mult = trace_multiplicities(d)
    for chi in character_group(G):
        if is_real_valued(chi) and mult[chi.on_generators(G)] % 2:
            return False
    return True


# the extension and its abelianization --------------------------------------------

def factor_set(d: CrystalData) -> ExtensionClass:
    G = d.group
    values = []
    for g in G.elements():
        for h in G.elements():
            values.extend(int(x) for x in d._raw_factor(g, h))
    return ExtensionClass(d.lattice_module, tuple(values))


def gamma_abelianized(d: CrystalData) -> FgAbelianGroup:
    """Gamma^ab = H_1(X, Z), from generators {e_i} u {gamma_g} and the relations
    (L(g) - 1) e_i = 0 and gamma_g + gamma_h - gamma_gh - lambda(g, h) = 0."""
    G, r = d.group, d.rank
    q = G.order
    ext = factor_set(d)
    cols = []
    for g in G.elements():
        a = d.linear[g]
        for i in range(r):
            v = [a[k, i] - int(k == i) for k in range(r)] + [0] * q
            cols.append(v)
    for g in G.elements():
        for h in G.elements():
            v = [-x for x in ext.value(g, h)] + [0] * q
            v[r + g] += 1
            v[r + h] += 1
            v[r + G.mul[g][h]] -= 1
            cols.append(v)
    return cokernel(IntMatrix.from_columns(cols, nrows=r + q))


def coinvariants(d: CrystalData) -> FgAbelianGroup:
    """Lambda_G = Lambda / sum_g im(I - L(g))."""
    r = d.rank
    ident = IntMatrix.identity(r)
    blocks = [ident - d.linear[g] for g in d.group.elements()]
    return cokernel(blocks[0].hstack(*blocks[1:]))


def character_label(group: FiniteGroup, chi: QmodZCharacter) -> list[str]:
    return [format_rational(v) for v in chi.on_generators(group)]


def sum_characters(group: FiniteGroup, pairs: Sequence[tuple[QmodZCharacter, int]]) -> QmodZCharacter:
    total = QmodZCharacter((Fraction(0),) * group.order)
    for chi, k in pairs:
        total = total + chi * k
    return total
