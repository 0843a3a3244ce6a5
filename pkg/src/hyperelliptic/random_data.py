"""Random generators for crystallographic data and cyclic modules (test batteries).

``random_bdf`` draws Bagnera-de Franchis data, products (E x A)/G with G = Z/m
acting on the elliptic curve E by a translation of order exactly m and linearly
on A.  The lattice of A is built from doubled blocks diag(B, B), each carrying
the complex structure [[0, -I], [I, 0]], or from single order-4 rotations, and
is optionally replaced by a random G-stable sublattice.  Only the A factor is
changed, so the product structure survives.

``random_free_cyclic`` drops the product requirement: the sublattice is taken in
the whole lattice and the translation runs along any invariant vector.  Its
output is a valid free cyclic quotient but need not be a product.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .cohomology import GModule
from .crystal import CrystalData, CrystalError, validate
from .exact.matrices import IntMatrix, RatMatrix
from .exact.smith import smith_normal_form
from .finite_group import cyclic_group

CYCLIC_ORDERS = (2, 3, 4, 6)


def companion(coeffs) -> list[list[int]]:
    """Companion matrix of the monic polynomial x^k + c_{k-1} x^{k-1} + ... + c_0."""
    k = len(coeffs)
    m = [[0] * k for _ in range(k)]
    for i in range(1, k):
        m[i][i - 1] = 1
    for i in range(k):
        m[i][k - 1] = -coeffs[i]
    return m


# generator matrices of Z/m-modules, keyed by the order they need to divide m
_PHI = {1: [-1], 2: [1], 3: [1, 1], 4: [1, 0], 6: [1, -1]}


def permutation_block(m: int) -> list[list[int]]:
    return [[int(i == (j + 1) % m) for j in range(m)] for i in range(m)]


def _block_choices(m: int):
    out = [("trivial", [[1]])]
    for d, c in _PHI.items():
        if d > 1 and m % d == 0:
            out.append((f"phi{d}", companion(c)))
    if m <= 4:
        out.append(("regular", permutation_block(m)))
    return out


def _block_diag(blocks):
    n = sum(len(b) for b in blocks)
    out = [[0] * n for _ in range(n)]
    o = 0
    for b in blocks:
        for i, row in enumerate(b):
            out[o + i][o:o + len(b)] = row
        o += len(b)
    return out


def _random_unimodular(rng: random.Random, r: int, steps: int = 6) -> IntMatrix:
    a = [[int(i == j) for j in range(r)] for i in range(r)]
    for _ in range(steps):
        i, j = rng.sample(range(r), 2) if r > 1 else (0, 0)
        if i == j:
            continue
        q = rng.choice((-1, 1))
        for k in range(r):
            a[i][k] += q * a[j][k]
    return IntMatrix(a)


def random_bdf(rng: random.Random, max_rank: int = 10, orders=CYCLIC_ORDERS,
               sublattice: bool = True, tries: int = 200) -> CrystalData:
    """A valid BdF datum with G cyclic of order drawn from ``orders``."""
    return _retry(rng, orders, tries, lambda m: _attempt_product(rng, m, max_rank, sublattice))


def random_free_cyclic(rng: random.Random, max_rank: int = 10, orders=CYCLIC_ORDERS,
                       tries: int = 200) -> CrystalData:
    """A valid datum with G cyclic acting freely, not necessarily a product."""
    return _retry(rng, orders, tries, lambda m: _attempt_free(rng, m, max_rank))


def _retry(rng, orders, tries, attempt):
    for _ in range(tries):
        d = attempt(rng.choice(orders))
        if d is not None:
            return d
    raise RuntimeError("no valid datum found; loosen the parameters")


def _doubled(rng, m, max_rank, first=None):
    """(L, J) for doubled blocks plus an optional order-4 rotation, within max_rank."""
    choices = _block_choices(m)
    pieces = [first] if first else []
    budget = max_rank // 2 - len(pieces)
    while budget > 0 and rng.random() < 0.8:
        b = rng.choice(choices)[1]
        if len(b) > budget:
            break
        pieces.append(b)
        budget -= len(b)
    half = _block_diag(pieces) if pieces else []
    k = len(half)
    gen = _block_diag([half, half]) if k else []
    J = [[0] * (2 * k) for _ in range(2 * k)]
    for i in range(k):
        J[i][k + i] = -1
        J[k + i][i] = 1
    if m % 4 == 0 and 2 * k + 2 <= max_rank and (not k or rng.random() < 0.4):
        r4 = [[0, -1], [1, 0]]
        gen = _block_diag([gen, r4]) if k else r4
        sign = rng.choice((1, -1))
        r4j = [[sign * x for x in row] for row in r4]
        J = _block_diag([J, r4j]) if k else r4j
    if not gen:
        return None
    return IntMatrix(gen), RatMatrix(J)


def _powers(L: IntMatrix, m: int):
    powers = [IntMatrix.identity(L.nrows)]
    for _ in range(m - 1):
        powers.append(powers[-1] @ L)
    return powers if (powers[-1] @ L).is_identity() else None


def _build(m, L, J, u1):
    r = L.nrows
    powers = _powers(L, m)
    if powers is None:
        return None
    trans = [tuple(Fraction(0) for _ in range(r))]
    for _ in range(1, m):
        trans.append(tuple(x + y for x, y in zip(L.apply(trans[-1]), u1)))
    # element k is g^k in cyclic_group(m)
    try:
        d = CrystalData(r // 2, cyclic_group(m), tuple(powers), tuple(trans), J)
    except CrystalError:
        return None
    return d if validate(d).valid else None


def _attempt_product(rng, m, max_rank, sublattice):
    a_part = _doubled(rng, m, max_rank - 2)
    if a_part is None:
        return None
    La, Ja = a_part
    if sublattice and rng.random() < 0.5:
        La, Ja = _sublattice(rng, m, La, Ja)
    L = IntMatrix(_block_diag([[[1, 0], [0, 1]], La.tolist()]))
    J = RatMatrix(_block_diag([[[0, -1], [1, 0]], Ja.tolist()]))
    r = L.nrows
    # translation of exact order m on E, moved by a coboundary
    a = rng.choice([x for x in range(1, m) if _gcd(x, m) == 1])
    e = [Fraction(a, m), Fraction(rng.randrange(m), m)] + [Fraction(0)] * (r - 2)
    z = [rng.randint(-2, 2) for _ in range(r)]
    shift = (IntMatrix.identity(r) - L).apply(z)
    return _build(m, L, J, tuple(x + s for x, s in zip(e, shift)))


def _attempt_free(rng, m, max_rank):
    # one copy of the trivial block doubled keeps a fixed torus for the translation
    part = _doubled(rng, m, max_rank, first=[[1]])
    if part is None:
        return None
    L, J = part
    if rng.random() < 0.5:
        L, J = _sublattice(rng, m, L, J)
    r = L.nrows
    powers = _powers(L, m)
    if powers is None:
        return None
    fixed = GModule(cyclic_group(m), tuple(powers)).fixed_lattice()
    f = rng.choice(fixed)
    a = rng.choice([x for x in range(1, m) if _gcd(x, m) == 1])
    z = [rng.randint(-2, 2) for _ in range(r)]
    shift = (IntMatrix.identity(r) - L).apply(z)
    return _build(m, L, J, tuple(Fraction(a * fi, m) + s for fi, s in zip(f, shift)))


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return abs(a)


def _sublattice(rng, m, L: IntMatrix, J: RatMatrix):
    """Rewrite (L, J) in a basis of a random G-stable sublattice (the G-span of a
    random finite-index lattice)."""
    r = L.nrows
    base = [[int(i == j) * rng.choice((1, 1, 2)) for j in range(r)] for i in range(r)]
    for _ in range(2):
        i, j = rng.sample(range(r), 2)
        base[i][j] += rng.randint(-1, 1)
    gens = []
    powers = [IntMatrix.identity(r)]
    for _ in range(m - 1):
        powers.append(powers[-1] @ L)
    cols = IntMatrix(base).columns()
    for p in powers:
        gens.extend(p.apply(c) for c in cols)
    snf = smith_normal_form(IntMatrix.from_columns(gens, nrows=r))
    basis = snf.image_basis()
    if len(basis) != r:
        return L, J
    B = IntMatrix.from_columns(basis, nrows=r)
    Binv = B.inverse()
    Lr = Binv @ RatMatrix(L.tolist()) @ RatMatrix(B.tolist())
    Jr = Binv @ J @ RatMatrix(B.tolist())
    if not Lr.is_integral():
        return L, J
    return Lr.to_int(), Jr


def random_cyclic_module(rng: random.Random, max_order: int = 12, max_rank: int = 8) -> GModule:
    """Z/m acting on Z^r through blocks (trivial, sign, cyclotomic companions,
    regular permutation), conjugated by a random unimodular matrix."""
    while True:
        m = rng.randint(2, max_order)
        blocks = []
        budget = rng.randint(1, max_rank)
        options = [[[1]]]
        if m % 2 == 0:
            options.append([[-1]])
        for d in range(3, m + 1):
            if m % d == 0:
                c = _cyclotomic_coeffs(d)
                if len(c) <= max_rank:
                    options.append(companion(c))
        if m <= max_rank:
            options.append(permutation_block(m))
        while budget > 0:
            fit = [b for b in options if len(b) <= budget]
            if not fit:
                break
            b = rng.choice(fit)
            blocks.append(b)
            budget -= len(b)
        if not blocks:
            continue
        a = IntMatrix(_block_diag(blocks))
        r = a.nrows
        u = _random_unimodular(rng, r)
        a = (u @ a @ u.unimodular_inverse())
        powers = [IntMatrix.identity(r)]
        for _ in range(m - 1):
            powers.append(powers[-1] @ a)
        return GModule(cyclic_group(m), tuple(powers))


def _cyclotomic_coeffs(d: int) -> list[int]:
    """Low-order coefficients of the d-th cyclotomic polynomial (without the leading 1)."""
    from .exact.cyclotomic import cyclotomic_polynomial
    phi = cyclotomic_polynomial(d)
    return list(phi[:-1])
