"""Finite groups given by multiplication tables, and their Q/Z-valued characters."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import lcm, prod
from typing import Sequence

from .exact.cyclotomic import CycloNumber

MAX_GROUP_ORDER = 64


class GroupError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    """Group on elements ``0..order-1``; ``mul[a][b]`` is the index of ``a*b``.

    ``invariant_factors`` is set for groups built by :func:`abelian_group`, whose
    element ``k`` has coordinates ``coords[k]`` (itertools.product order).
    """

    mul: tuple[tuple[int, ...], ...]
    generators: tuple[int, ...] = ()
    invariant_factors: tuple[int, ...] | None = None
    coords: tuple[tuple[int, ...], ...] | None = field(default=None, repr=False)

    def __post_init__(self):
        mul = tuple(tuple(int(x) for x in r) for r in self.mul)
        object.__setattr__(self, "mul", mul)
        n = len(mul)
        if n == 0:
            raise GroupError("a group has at least one element")
        if n > MAX_GROUP_ORDER:
            raise GroupError(f"group order {n} exceeds the supported bound {MAX_GROUP_ORDER}")
        for r in mul:
            if len(r) != n or sorted(r) != list(range(n)):
                raise GroupError("multiplication table rows must be permutations of the elements")
        ident = [e for e in range(n) if all(mul[e][x] == x and mul[x][e] == x for x in range(n))]
        if len(ident) != 1:
            raise GroupError("multiplication table has no two-sided identity")
        for a in range(n):
            ma = mul[a]
            for b in range(n):
                mab = mul[ma[b]]
                mb = mul[b]
                for c in range(n):
                    if mab[c] != ma[mb[c]]:
                        raise GroupError(f"associativity fails at ({a},{b},{c})")
        e = ident[0]
        inv = tuple(next(b for b in range(n) if mul[a][b] == e) for a in range(n))
        object.__setattr__(self, "identity", e)
        object.__setattr__(self, "inverse", inv)
        gens = tuple(self.generators) or _greedy_generators(mul, e)
        if self._closure(gens) != n:
            raise GroupError(f"elements {list(gens)} do not generate the group")
        object.__setattr__(self, "generators", gens)

    @property
    def order(self) -> int:
        return len(self.mul)

    def __len__(self):
        return len(self.mul)

    def __eq__(self, other):
        return isinstance(other, FiniteGroup) and self.mul == other.mul \
            and self.generators == other.generators

    def __hash__(self):
        return hash((self.mul, self.generators))

    def elements(self) -> range:
        return range(self.order)

    def m(self, a: int, b: int) -> int:
        return self.mul[a][b]

    def power(self, a: int, k: int) -> int:
        x = self.identity
        if k < 0:
            a, k = self.inverse[a], -k
        for _ in range(k):
            x = self.mul[x][a]
        return x

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != self.identity:
            x = self.mul[x][a]
            k += 1
        return k

    def exponent(self) -> int:
        return lcm(*(self.element_order(a) for a in self.elements()))

    def is_abelian(self) -> bool:
        return all(self.mul[a][b] == self.mul[b][a] for a in self.elements() for b in self.elements())

    def is_cyclic(self) -> bool:
        return any(self.element_order(a) == self.order for a in self.elements())

    def cyclic_generator(self) -> int:
        for g in self.generators + tuple(self.elements()):
            if self.element_order(g) == self.order:
                return g
        raise GroupError("group is not cyclic")

    def _closure(self, gens) -> int:
        seen = {self.identity}
        frontier = [self.identity]
        while frontier:
            x = frontier.pop()
            for g in gens:
                y = self.mul[x][g]
                if y not in seen:
                    seen.add(y)
                    frontier.append(y)
        return len(seen)

    def words(self) -> dict[int, tuple[int, ...]]:
        """For an abelian group: an exponent vector over ``generators`` for every element."""
        out = {self.identity: (0,) * len(self.generators)}
        frontier = [self.identity]
        while frontier:
            x = frontier.pop(0)
            for i, g in enumerate(self.generators):
                y = self.mul[x][g]
                if y not in out:
                    w = list(out[x])
                    w[i] += 1
                    out[y] = tuple(w)
                    frontier.append(y)
        return out


def _greedy_generators(mul, e) -> tuple[int, ...]:
    n = len(mul)
    gens: list[int] = []
    span = {e}
    while len(span) < n:
        g = next(x for x in range(n) if x not in span)
        gens.append(g)
        frontier = list(span)
        span = set(span)
        while frontier:
            x = frontier.pop()
            for h in gens:
                y = mul[x][h]
                if y not in span:
                    span.add(y)
                    frontier.append(y)
    return tuple(gens)


def abelian_group(invariant_factors: Sequence[int]) -> FiniteGroup:
    """Z/d_1 + ... + Z/d_k; element k has coordinates in itertools.product order."""
    factors = tuple(int(d) for d in invariant_factors)
    if any(d < 2 for d in factors):
        raise GroupError(f"invariant factors must be >= 2, got {list(factors)}")
    if prod(factors) > MAX_GROUP_ORDER:
        raise GroupError(f"group order {prod(factors)} exceeds the supported bound {MAX_GROUP_ORDER}")
    coords = list(product(*[range(d) for d in factors]))
    index = {c: k for k, c in enumerate(coords)}
    mul = [[index[tuple((x + y) % d for x, y, d in zip(a, b, factors))] for b in coords]
           for a in coords]
    gens = tuple(index[tuple(int(i == j) for j in range(len(factors)))] for i in range(len(factors)))
    return FiniteGroup(tuple(map(tuple, mul)), gens, factors, tuple(coords))


def cyclic_group(m: int) -> FiniteGroup:
    return abelian_group([m]) if m > 1 else trivial_group()


def trivial_group() -> FiniteGroup:
    return abelian_group([])


# characters -------------------------------------------------------------

@dataclass(frozen=True)
class QmodZCharacter:
    """Homomorphism G -> Q/Z stored by its values in [0, 1) on every element."""

    values: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(Fraction(v) % 1 for v in self.values))

    def __call__(self, g: int) -> Fraction:
        return self.values[g]

    def __add__(self, other: "QmodZCharacter") -> "QmodZCharacter":
        return QmodZCharacter(tuple(a + b for a, b in zip(self.values, other.values)))

    def __neg__(self) -> "QmodZCharacter":
        return QmodZCharacter(tuple(-a for a in self.values))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, k: int) -> "QmodZCharacter":
        return QmodZCharacter(tuple(k * a for a in self.values))

    __rmul__ = __mul__

    def is_trivial(self) -> bool:
        return not any(self.values)

    def order(self) -> int:
        return lcm(*(v.denominator for v in self.values)) if self.values else 1

    def on_generators(self, group: FiniteGroup) -> tuple[Fraction, ...]:
        return tuple(self.values[g] for g in group.generators)

    def cyclo(self, g: int, conductor: int) -> CycloNumber:
        """exp(2 pi i chi(g)) inside Q(zeta_conductor)."""
        return CycloNumber.root_of_unity(self.values[g], conductor)


def trivial_character(group: FiniteGroup) -> QmodZCharacter:
    return QmodZCharacter((Fraction(0),) * group.order)


def is_homomorphism(group: FiniteGroup, values: Sequence[Fraction]) -> bool:
    v = [Fraction(x) % 1 for x in values]
    return all((v[a] + v[b] - v[group.mul[a][b]]) % 1 == 0
               for a in group.elements() for b in group.elements())


def character_from_generator_values(group: FiniteGroup, gen_values: Sequence) -> QmodZCharacter:
    """Extend values prescribed on ``group.generators`` to a character, checking consistency."""
    if not group.is_abelian():
        raise GroupError("characters are only handled for abelian groups")
    if len(gen_values) != len(group.generators):
        raise GroupError(f"character needs {len(group.generators)} generator values, "
                         f"got {len(gen_values)}")
    gv = [Fraction(x) % 1 for x in gen_values]
    words = group.words()
    values = [Fraction(0)] * group.order
    for g, w in words.items():
        values[g] = sum((k * x for k, x in zip(w, gv)), Fraction(0)) % 1
    if not is_homomorphism(group, values):
        raise GroupError(f"generator values {[str(x) for x in gv]} do not define a character")
    return QmodZCharacter(tuple(values))


def character_group(group: FiniteGroup) -> list[QmodZCharacter]:
    """All characters Hom(G, Q/Z) of an abelian group, trivial character first."""
    if not group.is_abelian():
        raise GroupError("character_group needs an abelian group; abelianize first")
    orders = [group.element_order(g) for g in group.generators]
    chars = []
    seen = set()
    for ks in product(*[range(o) for o in orders]):
        gv = [Fraction(k, o) for k, o in zip(ks, orders)]
        try:
            chi = character_from_generator_values(group, gv)
        except GroupError:
            continue
        if chi.values not in seen:
            seen.add(chi.values)
            chars.append(chi)
    chars.sort(key=lambda c: (not c.is_trivial(), c.on_generators(group)))
    if len(chars) != group.order:
        raise ArithmeticError("character count differs from the group order")
    return chars


def is_real_valued(chi: QmodZCharacter) -> bool:
    return all((2 * v) % 1 == 0 for v in chi.values)


def character_key(group: FiniteGroup, chi: QmodZCharacter) -> tuple:
    return chi.on_generators(group)
