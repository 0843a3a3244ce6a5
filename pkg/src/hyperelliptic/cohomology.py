"""Cohomology H^n(G, M), n <= 3, from the inhomogeneous bar complex.

Cochains in C^n(G, M) are flat integer vectors: the value on the tuple
``(g_1, ..., g_n)`` occupies the block starting at ``r * index(g_1, ..., g_n)``
where ``index`` is the base-|G| number with digits ``g_1 ... g_n`` and ``r`` is
the rank of the underlying module.

For a lattice M and n >= 1 the groups H^n(G, M) are killed by |G|, so the
cocycles Z^n are exactly the saturation of the coboundaries B^n and

    H^n(G, M) = Tors(C^n / d C^{n-1}).

That identity is what :func:`cohomology` uses; it only needs d^{n-1}, never the
much larger d^n.  :func:`cohomology_direct` computes ker d^n / im d^{n-1}
literally and is kept for finite coefficient modules and cross-checks.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Sequence

from .exact.abelian import FgAbelianGroup, Subgroup, preimage_generators, subquotient
from .exact.matrices import IntMatrix, SparseIntMatrix
from .exact.smith import smith_normal_form
from .finite_group import FiniteGroup, QmodZCharacter

# cap on the number of rows of an assembled differential (r * |G|^(n+1))
COCHAIN_BUDGET = 250_000


class BudgetExceeded(RuntimeError):
    pass


class CocycleError(ValueError):
    pass


@dataclass(frozen=True)
class GModule:
    """Z^r / (moduli) with G acting through integer matrices, one per element.

    ``moduli[i] == 0`` means coordinate i is free; an empty ``moduli`` means the
    module is the lattice Z^r.
    """

    group: FiniteGroup
    action: tuple[IntMatrix, ...]
    moduli: tuple[int, ...] = ()

    def __post_init__(self):
        acts = tuple(a if isinstance(a, IntMatrix) else IntMatrix(a) for a in self.action)
        object.__setattr__(self, "action", acts)
        G = self.group
        if len(acts) != G.order:
            raise ValueError(f"need one matrix per group element ({G.order}), got {len(acts)}")
        r = acts[0].nrows
        if any(a.shape != (r, r) for a in acts):
            raise ValueError("action matrices must all be square of the same size")
        mod = tuple(int(d) for d in self.moduli)
        if mod and len(mod) != r:
            raise ValueError("one modulus per coordinate")
        if mod and not any(mod):
            mod = ()
        object.__setattr__(self, "moduli", mod)
        if not self.equal(acts[G.identity].rows(), IntMatrix.identity(r).rows()):
            raise ValueError("identity does not act trivially")
        if mod:
            for g in G.elements():
                for i in range(r):
                    for j in range(r):
                        x = acts[g][i, j]
                        if mod[i] == 0 and mod[j] and x:
                            raise ValueError("action does not preserve the relations")
                        if mod[i] and mod[j] and (x * mod[j]) % mod[i]:
                            raise ValueError("action does not preserve the relations")
        for g in G.elements():
            for h in G.elements():
                if not self.equal((acts[g] @ acts[h]).rows(), acts[G.mul[g][h]].rows()):
                    raise ValueError(f"action is not a homomorphism at ({g},{h})")

    @property
    def rank(self) -> int:
        return self.action[0].nrows

    @property
    def is_lattice(self) -> bool:
        return not self.moduli

    def equal(self, rows_a, rows_b) -> bool:
        if not self.moduli:
            return tuple(map(tuple, rows_a)) == tuple(map(tuple, rows_b))
        # row i lives in coordinate i, compared modulo its modulus
        for ra, rb, d in zip(rows_a, rows_b, self.moduli):
            for x, y in zip(ra, rb):
                if (x - y) % d if d else x != y:
                    return False
        return True

    def relations(self) -> list[list[int]]:
        r = self.rank
        out = []
        for i, d in enumerate(self.moduli):
            if d:
                v = [0] * r
                v[i] = d
                out.append(v)
        return out

    def dual(self) -> "GModule":
        """Hom(M, Z) with g acting by the inverse transpose."""
        if not self.is_lattice:
            raise ValueError("dual is only defined for lattice modules")
        G = self.group
        return GModule(G, tuple(self.action[G.inverse[g]].T for g in G.elements()))

    def fixed_lattice(self) -> list[tuple[int, ...]]:
        """Z-basis of M^G (lattice modules)."""
        G, r = self.group, self.rank
        rows = []
        for g in G.elements():
            a = self.action[g]
            rows.extend([[a[i, j] - int(i == j) for j in range(r)] for i in range(r)])
        return [tuple(v) for v in smith_normal_form(IntMatrix(rows, ncols=r)).kernel_basis()]


def trivial_module(group: FiniteGroup, rank: int = 1) -> GModule:
    return GModule(group, tuple(IntMatrix.identity(rank) for _ in group.elements()))


# cochains -----------------------------------------------------------------

def cochain_dim(group: FiniteGroup, module: GModule, n: int) -> int:
    return module.rank * group.order ** n


def _tuples(group: FiniteGroup, n: int):
    return product(range(group.order), repeat=n)


def _index(tup: Sequence[int], order: int) -> int:
    k = 0
    for g in tup:
        k = k * order + g
    return k


def differential(group: FiniteGroup, module: GModule, n: int) -> SparseIntMatrix:
    """d^n : C^n(G, M) -> C^{n+1}(G, M) as a sparse matrix."""
    G, r, q = group, module.rank, group.order
    nrows = r * q ** (n + 1)
    if nrows > COCHAIN_BUDGET:
        raise BudgetExceeded(f"C^{n + 1} has {nrows} coordinates, over the budget {COCHAIN_BUDGET}")
    ncols = r * q ** n
    rows: list[dict] = [dict() for _ in range(nrows)]
    act = module.action
    for tup in _tuples(G, n + 1):
        base = r * _index(tup, q)
        # g_1 . f(g_2, ..., g_{n+1})
        a = act[tup[0]]
        col0 = r * _index(tup[1:], q)
        for i in range(r):
            row = rows[base + i]
            for j in range(r):
                x = a[i, j]
                if x:
                    row[col0 + j] = row.get(col0 + j, 0) + x
        for k in range(1, n + 1):
            merged = tup[:k - 1] + (G.mul[tup[k - 1]][tup[k]],) + tup[k + 1:]
            col = r * _index(merged, q)
            sign = -1 if k % 2 else 1
            for i in range(r):
                row = rows[base + i]
                row[col + i] = row.get(col + i, 0) + sign
        col = r * _index(tup[:n], q)
        sign = -1 if (n + 1) % 2 else 1
        for i in range(r):
            row = rows[base + i]
            row[col + i] = row.get(col + i, 0) + sign
    return SparseIntMatrix(nrows, ncols, rows)


def apply_differential(group: FiniteGroup, module: GModule, n: int,
                       f: Sequence[int]) -> tuple[int, ...]:
    """(d^n f) evaluated directly from the bar formula, without assembling d^n."""
    G, r, q = group, module.rank, group.order
    if len(f) != r * q ** n:
        raise ValueError(f"cochain of length {len(f)} is not in C^{n}")
    out = []
    for tup in _tuples(G, n + 1):
        block = [0] * r
        a = module.action[tup[0]]
        c0 = r * _index(tup[1:], q)
        v = f[c0:c0 + r]
        for i in range(r):
            block[i] += sum(a[i, j] * v[j] for j in range(r))
        for k in range(1, n + 1):
            merged = tup[:k - 1] + (G.mul[tup[k - 1]][tup[k]],) + tup[k + 1:]
            c = r * _index(merged, q)
            s = -1 if k % 2 else 1
            for i in range(r):
                block[i] += s * f[c + i]
        c = r * _index(tup[:n], q)
        s = -1 if (n + 1) % 2 else 1
        for i in range(r):
            block[i] += s * f[c + i]
        out.extend(block)
    return tuple(out)


def is_cocycle(group, module, n, f) -> bool:
    d = apply_differential(group, module, n, f)
    if module.is_lattice:
        return not any(d)
    mods = module.moduli
    r = module.rank
    return all((x % mods[k % r]) == 0 if mods[k % r] else x == 0 for k, x in enumerate(d))


def cochain_complex(group: FiniteGroup, module: GModule, n_max: int = 3) -> list[IntMatrix]:
    """The differentials d^0, ..., d^{n_max - 1} as dense integer matrices."""
    return [differential(group, module, n).to_dense() for n in range(n_max)]


# cohomology ----------------------------------------------------------------

@lru_cache(maxsize=256)
def cohomology(group: FiniteGroup, module: GModule, n: int) -> FgAbelianGroup:
    """H^n(G, M) in invariant-factor form.

    The witness maps n-cocycles (flat vectors) to normal-form coordinates and
    coordinates back to representative cocycles.
    """
    if module.group != group:
        raise ValueError("module is over a different group")
    if not 0 <= n <= 3:
        raise ValueError("cohomology is implemented for degrees 0..3")
    if not module.is_lattice or n == 0:
        return cohomology_direct(group, module, n)
    d_prev = differential(group, module, n - 1)
    snf = smith_normal_form(d_prev)
    diag = list(snf.invariant_factors)
    tors_idx = [i for i, d in enumerate(diag) if d > 1]
    rank = snf.rank
    N = d_prev.nrows

    def to_normal(z):
        if len(z) != N:
            raise CocycleError(f"cochain of length {len(z)} is not in C^{n}")
        y = snf.apply_U(z)
        if any(y[rank:]):
            raise CocycleError(f"cochain is not a {n}-cocycle")
        return [y[i] for i in tors_idx]

    def from_normal(c):
        y = [0] * N
        for i, ci in zip(tors_idx, c):
            y[i] = ci
        return snf.apply_U_inv(y)

    return FgAbelianGroup(tuple(diag[i] for i in tors_idx), 0, to_normal, from_normal)


def cohomology_direct(group: FiniteGroup, module: GModule, n: int) -> FgAbelianGroup:
    """ker d^n / im d^{n-1}, computed literally (mod the module relations)."""
    G, r, q = group, module.rank, group.order
    dim = r * q ** n
    rel_n = _cochain_relations(module, q ** n)
    rel_next = _cochain_relations(module, q ** (n + 1))
    d = differential(G, module, n).to_dense()
    rel_mat = IntMatrix.from_columns(rel_next, nrows=d.nrows) if rel_next \
        else IntMatrix.zeros(d.nrows, 0)
    cocycles = preimage_generators(d, rel_mat)
    bounds = list(rel_n)
    if n > 0:
        bounds += [tuple(c) for c in differential(G, module, n - 1).to_dense().columns()]
    return subquotient(cocycles, bounds, dim)


def _cochain_relations(module: GModule, blocks: int) -> list[tuple[int, ...]]:
    r = module.rank
    out = []
    for b in range(blocks):
        for v in module.relations():
            w = [0] * (r * blocks)
            w[b * r:(b + 1) * r] = v
            out.append(tuple(w))
    return out


@dataclass(frozen=True)
class CohomologyClass:
    group: FiniteGroup
    module: GModule
    degree: int
    representative: tuple[int, ...]
    coordinates: tuple[int, ...] = field(default=())

    def __post_init__(self):
        rep = tuple(int(x) for x in self.representative)
        object.__setattr__(self, "representative", rep)
        if not is_cocycle(self.group, self.module, self.degree, rep):
            raise CocycleError(f"representative is not a {self.degree}-cocycle")
        coords = self.space.coordinates(rep)
        if self.coordinates and tuple(self.space.reduce(self.coordinates)) != coords:
            raise CocycleError("coordinates inconsistent with the representative")
        object.__setattr__(self, "coordinates", coords)

    @property
    def space(self) -> FgAbelianGroup:
        return cohomology(self.group, self.module, self.degree)

    def is_zero(self) -> bool:
        return self.space.is_zero(self.coordinates)

    def __add__(self, other: "CohomologyClass") -> "CohomologyClass":
        return CohomologyClass(self.group, self.module, self.degree,
                               tuple(a + b for a, b in zip(self.representative, other.representative)))

    def __neg__(self):
        return CohomologyClass(self.group, self.module, self.degree,
                               tuple(-a for a in self.representative))

    def __sub__(self, other):
        return self + (-other)


def class_from_coordinates(group, module, n, coords) -> CohomologyClass:
    H = cohomology(group, module, n)
    return CohomologyClass(group, module, n, H.lift(coords))


# cyclic groups ---------------------------------------------------------------

def cyclic_cohomology_oracle(m: int, module: GModule, n: int) -> FgAbelianGroup:
    """Closed-form H^n(Z/m, M): ker N / im(g - 1) in odd degree, M^G / N M in even
    degree >= 2, M^G in degree 0.  Independent of the bar complex."""
    G = module.group
    if G.order != m or not G.is_cyclic():
        raise ValueError(f"module is not over a cyclic group of order {m}")
    g = G.cyclic_generator()
    a = module.action[g]
    r = module.rank
    ident = IntMatrix.identity(r)
    norm = IntMatrix.zeros(r, r)
    power = ident
    for _ in range(m):
        norm = norm + power
        power = power @ a
    minus = a - ident
    rel = module.relations()
    rel_mat = IntMatrix.from_columns(rel, nrows=r) if rel else IntMatrix.zeros(r, 0)
    if n == 0:
        return subquotient(preimage_generators(minus, rel_mat), rel, r)
    if n % 2 == 1:
        top, bottom = norm, minus
    else:
        top, bottom = minus, norm
    big = preimage_generators(top, rel_mat)
    small = [tuple(c) for c in bottom.columns()] + [tuple(v) for v in rel]
    return subquotient(big, small, r)


# Bockstein, cup products, images ----------------------------------------------

def bockstein(group: FiniteGroup, chi: QmodZCharacter) -> CohomologyClass:
    """The class in H^2(G, Z) of (g, h) -> c(g) + c(h) - c(gh), c the lift of chi to [0, 1)."""
    q = group.order
    z = [0] * (q * q)
    for g in group.elements():
        for h in group.elements():
            v = chi(g) + chi(h) - chi(group.mul[g][h])
            if v.denominator != 1:
                raise ArithmeticError("Bockstein cocycle is not integral; chi is not a character")
            z[g * q + h] = int(v)
    return CohomologyClass(group, trivial_module(group), 2, tuple(z))


@dataclass(frozen=True)
class ExtensionClass:
    """A lattice-valued 2-cocycle: the factor set of an extension 0 -> M -> E -> G -> 1."""

    module: GModule
    factor_set: tuple[int, ...]

    def __post_init__(self):
        fs = tuple(int(x) for x in self.factor_set)
        object.__setattr__(self, "factor_set", fs)
        if not is_cocycle(self.module.group, self.module, 2, fs):
            raise CocycleError("factor set violates the 2-cocycle identity")

    def value(self, g: int, h: int) -> tuple[int, ...]:
        r = self.module.rank
        k = g * self.module.group.order + h
        return self.factor_set[r * k:r * (k + 1)]


def cup_with_extension(ext: ExtensionClass, c: Sequence[int], p: int) -> CohomologyClass:
    """Pair a class in H^p(G, M^dual) with the extension class, landing in H^{p+2}(G, Z).

    ``c`` is an invariant functional (p = 0) or a 1-cocycle G -> M^dual (p = 1);
    the product is the Alexander-Whitney cup followed by evaluation.
    """
    M = ext.module
    G, r = M.group, M.rank
    dual = M.dual()
    if p not in (0, 1):
        raise ValueError("cup_with_extension supports p = 0 and p = 1")
    c = tuple(c)
    if not is_cocycle(G, dual, p, c):
        raise CocycleError(f"argument is not a {p}-cocycle of the dual module")
    if p == 0:
        z = [sum(a * b for a, b in zip(c, ext.value(g, h)))
             for g in G.elements() for h in G.elements()]
    else:
        z = []
        for g in G.elements():
            fg = c[r * g:r * (g + 1)]
            a = M.action[g]
            for h in G.elements():
                for k in G.elements():
                    v = a.apply(ext.value(h, k))
                    z.append(sum(x * y for x, y in zip(fg, v)))
    return CohomologyClass(G, trivial_module(G), p + 2, tuple(z))


def image_subgroup(space: FgAbelianGroup,
                   classes: Sequence[CohomologyClass]) -> Subgroup:
    """Subgroup of ``space`` generated by the given classes, with a ``contains`` test."""
    for c in classes:
        if c.space is not space and c.space != space:
            raise ValueError("classes live in different cohomology groups")
    return space.subgroup([c.coordinates for c in classes])


def character_sum(chars: Sequence[QmodZCharacter], mults: Sequence[int], order: int) -> QmodZCharacter:
    total = QmodZCharacter((Fraction(0),) * order)
    for chi, k in zip(chars, mults):
        total = total + chi * k
    return total
