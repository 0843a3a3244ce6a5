"""Finitely generated abelian groups in invariant-factor form.

A group is ``Z/d_1 + ... + Z/d_s + Z^r`` with ``d_1 | d_2 | ... | d_s`` and all
``d_i >= 2``.  Groups produced as cokernels or subquotients carry a witness: a
pair of maps between the presentation space they came from and normal-form
coordinates (torsion coordinates first, reduced mod ``d_i``, then the free ones).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import prod
from typing import Callable, Sequence

from .matrices import IntMatrix, as_int_matrix
from .smith import lattice_basis, smith_normal_form, solve_integer


@dataclass(frozen=True, eq=False)
class FgAbelianGroup:
    torsion: tuple[int, ...] = ()
    free_rank: int = 0
    # presentation vector -> normal-form coordinates, and back
    to_normal: Callable | None = field(default=None, repr=False)
    from_normal: Callable | None = field(default=None, repr=False)

    def __post_init__(self):
        t = tuple(int(d) for d in self.torsion)
        if any(d < 2 for d in t):
            raise ValueError(f"torsion factors must be >= 2, got {t}")
        if any(t[i + 1] % t[i] for i in range(len(t) - 1)):
            raise ValueError(f"torsion factors {t} do not form a divisibility chain")
        object.__setattr__(self, "torsion", t)

    @classmethod
    def trivial(cls) -> "FgAbelianGroup":
        return cls((), 0, lambda x: (), lambda c: ())

    # iso-type data ------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, FgAbelianGroup):
            return NotImplemented
        return self.torsion == other.torsion and self.free_rank == other.free_rank

    def __hash__(self):
        return hash((self.torsion, self.free_rank))

    def __str__(self):
        parts = [f"Z/{d}" for d in self.torsion]
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        return " + ".join(parts) if parts else "0"

    @property
    def ngens(self) -> int:
        return len(self.torsion) + self.free_rank

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    @property
    def is_trivial(self) -> bool:
        return not self.torsion and not self.free_rank

    def order(self) -> int | None:
        return prod(self.torsion) if self.is_finite else None

    def exponent(self) -> int | None:
        if not self.is_finite:
            return None
        return self.torsion[-1] if self.torsion else 1

    def torsion_subgroup(self) -> "FgAbelianGroup":
        return FgAbelianGroup(self.torsion, 0)

    def as_dict(self) -> dict:
        return {"free_rank": self.free_rank, "torsion": list(self.torsion)}

    # element arithmetic in normal-form coordinates ----------------------
    def reduce(self, coords: Sequence[int]) -> tuple[int, ...]:
        if len(coords) != self.ngens:
            raise ValueError(f"expected {self.ngens} coordinates, got {len(coords)}")
        t = len(self.torsion)
        return tuple(c % self.torsion[i] if i < t else c for i, c in enumerate(coords))

    def is_zero(self, coords: Sequence[int]) -> bool:
        return not any(self.reduce(coords))

    def add(self, a, b):
        return self.reduce([x + y for x, y in zip(a, b)])

    def scale(self, k: int, a):
        return self.reduce([k * x for x in a])

    def zero(self) -> tuple[int, ...]:
        return (0,) * self.ngens

    def relation_matrix(self) -> IntMatrix:
        """Columns spanning the relations ``d_i e_i`` in Z^ngens."""
        n = self.ngens
        cols = []
        for i, d in enumerate(self.torsion):
            v = [0] * n
            v[i] = d
            cols.append(v)
        return IntMatrix.from_columns(cols, nrows=n) if cols else IntMatrix.zeros(n, 0)

    def elements(self):
        """All elements of a finite group, as coordinate tuples."""
        if not self.is_finite:
            raise ValueError("cannot enumerate an infinite group")
        from itertools import product
        return product(*[range(d) for d in self.torsion])

    def element_order(self, coords) -> int | None:
        c = self.reduce(coords)
        t = len(self.torsion)
        if any(c[t:]):
            return None
        from math import gcd, lcm
        out = 1
        for x, d in zip(c, self.torsion):
            out = lcm(out, d // gcd(x, d))
        return out

    # witness ------------------------------------------------------------
    def coordinates(self, x: Sequence[int]) -> tuple[int, ...]:
        if self.to_normal is None:
            raise ValueError("group carries no presentation witness")
        return self.reduce(self.to_normal(list(x)))

    def lift(self, coords: Sequence[int]) -> tuple[int, ...]:
        if self.from_normal is None:
            raise ValueError("group carries no presentation witness")
        return tuple(self.from_normal(list(coords)))

    # subgroups ----------------------------------------------------------
    def subgroup(self, gens: Sequence[Sequence[int]]) -> "Subgroup":
        return Subgroup(self, tuple(self.reduce(g) for g in gens))


def _from_snf(snf, pre=None, post=None) -> FgAbelianGroup:
    """Group Z^m / A Z^n read off a Smith decomposition of A.

    ``pre`` maps a presentation vector into Z^m, ``post`` maps Z^m back out.
    """
    d = list(snf.invariant_factors) + [0] * (snf.nrows - len(snf.invariant_factors))
    tors_idx = [i for i, x in enumerate(d) if x > 1]
    free_idx = [i for i, x in enumerate(d) if x == 0]
    idx = tors_idx + free_idx
    m = snf.nrows

    def to_normal(x):
        y = snf.apply_U(pre(x) if pre else x)
        return [y[i] for i in idx]

    def from_normal(c):
        y = [0] * m
        for i, ci in zip(idx, c):
            y[i] = ci
        v = snf.apply_U_inv(y)
        return post(v) if post else v

    return FgAbelianGroup(tuple(d[i] for i in tors_idx), len(free_idx), to_normal, from_normal)


def cokernel(a) -> FgAbelianGroup:
    """Z^rows / a Z^cols in invariant-factor form, with witness on Z^rows."""
    a = as_int_matrix(a)
    return _from_snf(smith_normal_form(a))


def subquotient(big: Sequence[Sequence[int]], small: Sequence[Sequence[int]],
                dim: int) -> FgAbelianGroup:
    """<big> / <small> for lattices small <= big in Z^dim, given by generators.

    The witness works on vectors of Z^dim lying in <big>.
    """
    basis = lattice_basis(list(big) + list(small), dim)
    k = len(basis)
    if k == 0:
        return FgAbelianGroup.trivial()
    bmat = IntMatrix.from_columns(basis, nrows=dim)
    bsnf = smith_normal_form(bmat)

    def in_basis(x):
        y = bsnf.solve(list(x))
        if y is None:
            raise ValueError("vector does not lie in the ambient lattice of the subquotient")
        return y

    rel = [in_basis(s) for s in small]
    cmat = IntMatrix.from_columns(rel, nrows=k) if rel else IntMatrix.zeros(k, 0)

    def post(y):
        return list(bmat.apply(y))

    return _from_snf(smith_normal_form(cmat), pre=in_basis, post=post)


def preimage_generators(f: IntMatrix, target_relations: IntMatrix) -> list[tuple[int, ...]]:
    """Generators of {x : f x in column span of target_relations}."""
    f = as_int_matrix(f)
    n = f.ncols
    stacked = f.hstack(target_relations) if target_relations.ncols else f
    kern = smith_normal_form(stacked).kernel_basis()
    return [tuple(v[:n]) for v in kern]


@dataclass(frozen=True)
class Subgroup:
    """Subgroup of ``ambient`` generated by elements given in normal-form coordinates."""

    ambient: FgAbelianGroup
    generators: tuple

    def _stacked(self) -> IntMatrix:
        n = self.ambient.ngens
        gens = IntMatrix.from_columns(self.generators, nrows=n) if self.generators \
            else IntMatrix.zeros(n, 0)
        return gens.hstack(self.ambient.relation_matrix())

    def contains(self, x: Sequence[int]) -> bool:
        n = self.ambient.ngens
        if n == 0:
            return True
        stacked = self._stacked()
        if stacked.ncols == 0:
            return not any(x)
        return solve_integer(stacked, list(x)) is not None

    @property
    def group(self) -> FgAbelianGroup:
        """Isomorphism type of the subgroup itself."""
        n = self.ambient.ngens
        rel = self.ambient.relation_matrix().columns()
        return subquotient(list(self.generators) + rel, rel, n)

    @property
    def quotient(self) -> FgAbelianGroup:
        """ambient / subgroup."""
        n = self.ambient.ngens
        if n == 0:
            return FgAbelianGroup.trivial()
        return cokernel(self._stacked())

    def is_everything(self) -> bool:
        return self.quotient.is_trivial


def hom_kernel(source: FgAbelianGroup, target: FgAbelianGroup,
               images: Sequence[Sequence[int]]) -> FgAbelianGroup:
    """Kernel of the homomorphism sending the i-th normal-form generator of
    ``source`` to ``images[i]`` (target coordinates).  Witness on source coordinates."""
    a, b = source.ngens, target.ngens
    if len(images) != a:
        raise ValueError("need one image per source generator")
    if a == 0:
        return FgAbelianGroup.trivial()
    f = IntMatrix.from_columns(images, nrows=b) if b else IntMatrix.zeros(0, a)
    gens = preimage_generators(f, target.relation_matrix())
    rel = source.relation_matrix().columns()
    for r in rel:
        if b and not target.is_zero(f.apply(r)):
            raise ValueError("images do not define a homomorphism (relation not respected)")
    return subquotient(gens, rel, a)
