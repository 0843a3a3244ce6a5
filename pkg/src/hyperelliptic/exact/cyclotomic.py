"""Exact arithmetic in cyclotomic fields Q(zeta_e).

Elements are stored on the power basis 1, z, ..., z^(phi(e)-1) after reduction
modulo the e-th cyclotomic polynomial.  Mixed conductors are embedded into the
lcm conductor.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import lcm
from typing import Sequence

MAX_CONDUCTOR = 256


def _poly_divmod(num: list, den: list) -> tuple[list, list]:
    num = list(num)
    dd = len(den) - 1
    lead = den[-1]
    if len(num) - 1 < dd:
        return [Fraction(0)], num
    q = [Fraction(0)] * (len(num) - dd)
    for k in range(len(num) - 1, dd - 1, -1):
        c = Fraction(num[k]) / lead
        q[k - dd] = c
        if c:
            for j in range(dd + 1):
                num[k - dd + j] -= c * den[j]
    rem = num[:dd] or [Fraction(0)]
    return q, rem


def _trim(p: list) -> list:
    p = list(p)
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p


@lru_cache(maxsize=None)
def cyclotomic_polynomial(e: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_e, lowest degree first."""
    if e < 1:
        raise ValueError("conductor must be positive")
    num = [Fraction(-1)] + [Fraction(0)] * (e - 1) + [Fraction(1)]
    for d in range(1, e):
        if e % d == 0:
            q, r = _poly_divmod(num, [Fraction(c) for c in cyclotomic_polynomial(d)])
            if any(r):
                raise ArithmeticError("cyclotomic division not exact")
            num = q
    return tuple(int(c) for c in _trim(num))


def euler_phi(e: int) -> int:
    return len(cyclotomic_polynomial(e)) - 1


class CycloNumber:
    __slots__ = ("conductor", "coeffs")

    def __init__(self, conductor: int, coeffs: Sequence = ()):
        if not 1 <= conductor <= MAX_CONDUCTOR:
            raise ValueError(f"conductor {conductor} outside 1..{MAX_CONDUCTOR}")
        phi = cyclotomic_polynomial(conductor)
        deg = len(phi) - 1
        c = [Fraction(x) for x in coeffs] or [Fraction(0)]
        if len(c) > deg:
            _, c = _poly_divmod(c, [Fraction(x) for x in phi])
        c = list(c) + [Fraction(0)] * (deg - len(c))
        self.conductor = conductor
        self.coeffs = tuple(c[:deg])

    @classmethod
    def rational(cls, q, conductor: int = 1) -> "CycloNumber":
        return cls(conductor, [q])

    @classmethod
    def zeta(cls, conductor: int, k: int = 1) -> "CycloNumber":
        k %= conductor
        c = [0] * (k + 1)
        c[k] = 1
        return cls(conductor, c)

    @classmethod
    def root_of_unity(cls, frac: Fraction, conductor: int | None = None) -> "CycloNumber":
        """exp(2 pi i * frac) for a rational frac."""
        frac = Fraction(frac)
        e = conductor or frac.denominator
        if e % frac.denominator:
            raise ValueError(f"conductor {e} cannot host exp(2 pi i {frac})")
        return cls.zeta(e, (frac.numerator * (e // frac.denominator)) % e)

    def embed(self, conductor: int) -> "CycloNumber":
        if conductor == self.conductor:
            return self
        if conductor % self.conductor:
            raise ValueError(f"cannot embed Q(zeta_{self.conductor}) in Q(zeta_{conductor})")
        step = conductor // self.conductor
        c = [Fraction(0)] * (step * (len(self.coeffs) - 1) + 1)
        for k, x in enumerate(self.coeffs):
            c[k * step] = x
        return CycloNumber(conductor, c)

    def _common(self, other):
        if not isinstance(other, CycloNumber):
            other = CycloNumber.rational(other, self.conductor)
        e = lcm(self.conductor, other.conductor)
        return self.embed(e), other.embed(e), e

    def __add__(self, other):
        a, b, e = self._common(other)
        return CycloNumber(e, [x + y for x, y in zip(a.coeffs, b.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return CycloNumber(self.conductor, [-x for x in self.coeffs])

    def __sub__(self, other):
        return self + (-other if isinstance(other, CycloNumber) else -Fraction(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        a, b, e = self._common(other)
        prod_ = [Fraction(0)] * (len(a.coeffs) + len(b.coeffs) - 1)
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    if y:
                        prod_[i + j] += x * y
        return CycloNumber(e, prod_)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = CycloNumber.rational(1, self.conductor)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def inverse(self) -> "CycloNumber":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in a cyclotomic field")
        phi = [Fraction(x) for x in cyclotomic_polynomial(self.conductor)]
        # extended Euclid: s * self + t * phi = g (constant)
        r0, r1 = phi, _trim(list(self.coeffs))
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while len(r1) > 1 or r1[0] == 0:
            q, r = _poly_divmod(r0, r1)
            r0, r1 = r1, _trim(r)
            s0, s1 = s1, _trim(_poly_sub(s0, _poly_mul(q, s1)))
        g = r1[0]
        return CycloNumber(self.conductor, [x / g for x in s1])

    def __truediv__(self, other):
        if not isinstance(other, CycloNumber):
            return CycloNumber(self.conductor, [x / Fraction(other) for x in self.coeffs])
        return self * other.inverse()

    def conjugate(self) -> "CycloNumber":
        e = self.conductor
        c = [Fraction(0)] * e
        for k, x in enumerate(self.coeffs):
            c[(-k) % e] += x
        return CycloNumber(e, c)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def rational_part(self) -> Fraction:
        return self.coeffs[0]

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coeffs[0] == other
        if not isinstance(other, CycloNumber):
            return NotImplemented
        a, b, _ = self._common(other)
        return a.coeffs == b.coeffs

    def __hash__(self):
        if self.is_rational():
            return hash(self.coeffs[0])
        return hash((self.conductor, self.coeffs))

    def __repr__(self):
        terms = [f"{x}*z{self.conductor}^{k}" for k, x in enumerate(self.coeffs) if x]
        return f"CycloNumber({' + '.join(terms) or '0'})"


def _poly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _poly_sub(a, b):
    n = max(len(a), len(b))
    a = list(a) + [Fraction(0)] * (n - len(a))
    b = list(b) + [Fraction(0)] * (n - len(b))
    return [x - y for x, y in zip(a, b)]


def cyclo_add(x: CycloNumber, y: CycloNumber) -> CycloNumber:
    return x + y


def cyclo_mul(x: CycloNumber, y: CycloNumber) -> CycloNumber:
    return x * y


def cyclo_rational_part(x: CycloNumber) -> Fraction:
    return x.rational_part()
