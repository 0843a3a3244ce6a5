"""Immutable exact matrices over Z and Q.

Entries are plain Python ints (arbitrary precision) or ``fractions.Fraction``
(always reduced, positive denominator), so structural equality coincides with
mathematical equality.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence


def parse_rational(text) -> Fraction:
    """Parse ``"p/q"``, ``"p"`` or an int into a Fraction. Floats are refused."""
    if isinstance(text, bool) or isinstance(text, float):
        raise ValueError(f"rationals must be given exactly, got {text!r}")
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    if not isinstance(text, str):
        raise ValueError(f"cannot read a rational from {text!r}")
    s = text.strip()
    if "/" in s:
        p, q = s.split("/", 1)
        num, den = int(p), int(q)
        if den <= 0:
            raise ValueError(f"denominator must be positive in {text!r}")
        return Fraction(num, den)
    if "." in s or "e" in s.lower():
        raise ValueError(f"rationals must be written as p/q, got {text!r}")
    return Fraction(int(s))


def format_rational(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


class _Matrix:
    __slots__ = ("_rows", "nrows", "ncols")
    _scalar = int

    def __init__(self, rows: Iterable[Sequence], ncols: int | None = None):
        conv = self._scalar
        data = tuple(tuple(conv(x) for x in r) for r in rows)
        if ncols is None:
            if not data:
                ncols = 0
            else:
                ncols = len(data[0])
        for r in data:
            if len(r) != ncols:
                raise ValueError("ragged matrix rows")
        self._rows = data
        self.nrows = len(data)
        self.ncols = ncols

    # construction -----------------------------------------------------
    @classmethod
    def zeros(cls, m: int, n: int):
        return cls([[0] * n for _ in range(m)], ncols=n)

    @classmethod
    def identity(cls, n: int):
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], ncols=n)

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence], nrows: int | None = None):
        cols = [list(c) for c in cols]
        if nrows is None:
            if not cols:
                raise ValueError("need nrows for an empty column list")
            nrows = len(cols[0])
        return cls([[c[i] for c in cols] for i in range(nrows)], ncols=len(cols))

    @classmethod
    def diagonal(cls, entries: Sequence):
        n = len(entries)
        return cls([[entries[i] if i == j else 0 for j in range(n)] for i in range(n)], ncols=n)

    @classmethod
    def block_diagonal(cls, blocks: Sequence["_Matrix"]):
        n = sum(b.nrows for b in blocks)
        m = sum(b.ncols for b in blocks)
        rows = [[0] * m for _ in range(n)]
        r0 = c0 = 0
        for b in blocks:
            for i in range(b.nrows):
                for j in range(b.ncols):
                    rows[r0 + i][c0 + j] = b[i, j]
            r0 += b.nrows
            c0 += b.ncols
        return cls(rows, ncols=m)

    # access -----------------------------------------------------------
    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self._rows[i][j]

    def row(self, i: int) -> tuple:
        return self._rows[i]

    def col(self, j: int) -> tuple:
        return tuple(r[j] for r in self._rows)

    def rows(self) -> tuple:
        return self._rows

    def columns(self) -> list[tuple]:
        return [self.col(j) for j in range(self.ncols)]

    def tolist(self) -> list[list]:
        return [list(r) for r in self._rows]

    def __iter__(self):
        return iter(self._rows)

    def __eq__(self, other):
        if not isinstance(other, _Matrix):
            return NotImplemented
        return self.shape == other.shape and all(
            a == b for ra, rb in zip(self._rows, other._rows) for a, b in zip(ra, rb))

    def __hash__(self):
        return hash((self.shape, self._rows))

    def __repr__(self):
        return f"{type(self).__name__}({self.tolist()!r})"

    # arithmetic -------------------------------------------------------
    def _result_type(self, other):
        if isinstance(self, RatMatrix) or isinstance(other, RatMatrix):
            return RatMatrix
        return IntMatrix

    @property
    def T(self):
        return type(self)([[r[j] for r in self._rows] for j in range(self.ncols)],
                          ncols=self.nrows)

    def __add__(self, other):
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return self._result_type(other)(
            [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self._rows, other._rows)],
            ncols=self.ncols)

    def __sub__(self, other):
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return self._result_type(other)(
            [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(self._rows, other._rows)],
            ncols=self.ncols)

    def __neg__(self):
        return type(self)([[-a for a in r] for r in self._rows], ncols=self.ncols)

    def scale(self, c):
        kind = RatMatrix if isinstance(c, Fraction) and c.denominator != 1 else type(self)
        return kind([[c * a for a in r] for r in self._rows], ncols=self.ncols)

    def apply(self, v: Sequence) -> tuple:
        if len(v) != self.ncols:
            raise ValueError(f"vector of length {len(v)} for {self.nrows}x{self.ncols} matrix")
        return tuple(sum(a * x for a, x in zip(r, v) if a) for r in self._rows)

    def __matmul__(self, other):
        if isinstance(other, _Matrix):
            if self.ncols != other.nrows:
                raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
            cols = other.columns()
            return self._result_type(other)(
                [[sum(a * b for a, b in zip(r, c) if a) for c in cols] for r in self._rows],
                ncols=other.ncols)
        return self.apply(other)

    def __pow__(self, k: int):
        if self.nrows != self.ncols or k < 0:
            raise ValueError("only non-negative powers of square matrices")
        result = type(self).identity(self.nrows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def is_identity(self) -> bool:
        return self == type(self).identity(self.nrows) if self.nrows == self.ncols else False

    def is_zero(self) -> bool:
        return all(a == 0 for r in self._rows for a in r)

    def trace(self):
        return sum(self._rows[i][i] for i in range(min(self.nrows, self.ncols)))

    def hstack(self, *others):
        mats = (self,) + others
        kind = RatMatrix if any(isinstance(m, RatMatrix) for m in mats) else type(self)
        return kind([sum((list(m.row(i)) for m in mats), []) for i in range(self.nrows)],
                    ncols=sum(m.ncols for m in mats))

    def vstack(self, *others):
        mats = (self,) + others
        kind = RatMatrix if any(isinstance(m, RatMatrix) for m in mats) else type(self)
        return kind([r for m in mats for r in m.rows()], ncols=self.ncols)

    def det(self):
        """Determinant by fraction-free Bareiss elimination."""
        n = self.nrows
        if n != self.ncols:
            raise ValueError("determinant of a non-square matrix")
        if n == 0:
            return self._scalar(1)
        a = [list(r) for r in self._rows]
        sign = 1
        prev = 1
        for k in range(n - 1):
            if a[k][k] == 0:
                swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
                if swap is None:
                    return self._scalar(0)
                a[k], a[swap] = a[swap], a[k]
                sign = -sign
            akk = a[k][k]
            for i in range(k + 1, n):
                aik = a[i][k]
                row_i, row_k = a[i], a[k]
                for j in range(k + 1, n):
                    v = row_i[j] * akk - aik * row_k[j]
                    row_i[j] = v // prev if isinstance(v, int) else v / prev
            prev = akk
        return sign * a[n - 1][n - 1]


class IntMatrix(_Matrix):
    """Integer matrix; entries are unbounded Python ints."""

    __slots__ = ()
    _scalar = staticmethod(lambda x: _as_int(x))

    def inverse(self) -> "RatMatrix":
        return RatMatrix(self._rows, ncols=self.ncols).inverse()

    def unimodular_inverse(self) -> "IntMatrix":
        inv = self.inverse()
        if any(x.denominator != 1 for r in inv for x in r):
            raise ValueError("matrix is not invertible over Z")
        return IntMatrix(inv.rows(), ncols=self.ncols)


class RatMatrix(_Matrix):
    """Rational matrix with Fraction entries."""

    __slots__ = ()
    _scalar = staticmethod(lambda x: parse_rational(x) if isinstance(x, str) else Fraction(x))

    def is_integral(self) -> bool:
        return all(x.denominator == 1 for r in self._rows for x in r)

    def to_int(self) -> IntMatrix:
        if not self.is_integral():
            raise ValueError("matrix has non-integer entries")
        return IntMatrix(self._rows, ncols=self.ncols)

    def inverse(self) -> "RatMatrix":
        n = self.nrows
        if n != self.ncols:
            raise ValueError("inverse of a non-square matrix")
        aug = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(self._rows)]
        red, pivots = _rref(aug, n)
        if len(pivots) < n:
            raise ValueError("singular matrix")
        return RatMatrix([r[n:] for r in red[:n]], ncols=n)


def _as_int(x) -> int:
    if isinstance(x, bool):
        return int(x)
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction) and x.denominator == 1:
        return x.numerator
    if isinstance(x, str):
        return int(x)
    raise ValueError(f"non-integer entry {x!r}")


def as_int_matrix(m) -> IntMatrix:
    return m if isinstance(m, IntMatrix) else IntMatrix(m)


def as_rat_matrix(m) -> RatMatrix:
    return m if isinstance(m, RatMatrix) else RatMatrix(m.rows() if isinstance(m, _Matrix) else m)


# rational linear algebra ------------------------------------------------

def _rref(rows: list[list[Fraction]], ncols: int | None = None):
    """Reduced row echelon form in place on a copy; pivots searched in the first ``ncols`` columns."""
    a = [[Fraction(x) for x in r] for r in rows]
    if not a:
        return a, []
    width = len(a[0]) if ncols is None else ncols
    pivots = []
    r = 0
    for c in range(width):
        p = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                ai, ar = a[i], a[r]
                a[i] = [x - f * y for x, y in zip(ai, ar)]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    return a, pivots


def rational_rank(m) -> int:
    if m.nrows == 0 or m.ncols == 0:
        return 0
    return len(_rref([list(r) for r in m.rows()])[1])


def rational_nullspace(m) -> list[tuple[Fraction, ...]]:
    """Basis of {x in Q^n : m x = 0}."""
    n = m.ncols
    if m.nrows == 0:
        return [tuple(Fraction(int(i == j)) for i in range(n)) for j in range(n)]
    red, pivots = _rref([list(r) for r in m.rows()])
    free = [j for j in range(n) if j not in set(pivots)]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for row, pc in zip(red, pivots):
            v[pc] = -row[f]
        basis.append(tuple(v))
    return basis


def solve_rational(a, b: Sequence) -> tuple[Fraction, ...] | None:
    """A solution x of a x = b over Q, or None when the system is inconsistent."""
    if len(b) != a.nrows:
        raise ValueError(f"right-hand side has length {len(b)}, expected {a.nrows}")
    n = a.ncols
    aug = [list(r) + [Fraction(bi)] for r, bi in zip(a.rows(), b)]
    if not aug:
        return tuple(Fraction(0) for _ in range(n))
    red, pivots = _rref(aug, n)
    for row in red[len(pivots):]:
        if row[n] != 0:
            return None
    x = [Fraction(0)] * n
    for row, pc in zip(red, pivots):
        x[pc] = row[n]
    return tuple(x)


class SparseIntMatrix:
    """Row-sparse integer matrix: ``rows[i]`` maps column index to a nonzero entry."""

    __slots__ = ("nrows", "ncols", "row_dicts")

    def __init__(self, nrows: int, ncols: int, row_dicts: Sequence[dict]):
        if len(row_dicts) != nrows:
            raise ValueError("row count mismatch")
        self.nrows = nrows
        self.ncols = ncols
        self.row_dicts = tuple({j: int(x) for j, x in r.items() if x} for r in row_dicts)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def apply(self, v: Sequence[int]) -> tuple[int, ...]:
        if len(v) != self.ncols:
            raise ValueError(f"vector of length {len(v)} for {self.nrows}x{self.ncols} matrix")
        return tuple(sum(x * v[j] for j, x in r.items()) for r in self.row_dicts)

    def to_dense(self) -> IntMatrix:
        rows = [[0] * self.ncols for _ in range(self.nrows)]
        for i, r in enumerate(self.row_dicts):
            for j, x in r.items():
                rows[i][j] = x
        return IntMatrix(rows, ncols=self.ncols)

    def __matmul__(self, other: "SparseIntMatrix") -> "SparseIntMatrix":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        out = []
        for r in self.row_dicts:
            acc: dict[int, int] = {}
            for k, x in r.items():
                for j, y in other.row_dicts[k].items():
                    acc[j] = acc.get(j, 0) + x * y
            out.append(acc)
        return SparseIntMatrix(self.nrows, other.ncols, out)

    def is_zero(self) -> bool:
        return not any(self.row_dicts)
