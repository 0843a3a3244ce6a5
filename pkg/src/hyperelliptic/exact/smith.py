"""Smith normal form over Z with recorded unimodular transforms.

The reduction runs in two passes.  A sparse pass brings the matrix to row
echelon form using only row operations (bar-resolution differentials are tall
and very sparse, so this is where most of the work goes); a dense pass then
diagonalises the small echelon block, always pivoting on the entry of smallest
absolute value.  Every elementary operation is logged, so ``U`` and ``V`` are
never formed unless asked for: vectors are pushed through the log instead.
"""

from __future__ import annotations

from typing import Sequence

from .matrices import IntMatrix, SparseIntMatrix, as_int_matrix

# op codes
_SWAP, _ADD, _NEG = 0, 1, 2


class SmithDecomposition:
    """``U * A * V == D`` with ``U``, ``V`` unimodular and ``D`` diagonal.

    ``invariant_factors`` lists the diagonal of ``D`` (length ``min(m, n)``);
    nonzero entries come first and form a divisibility chain.
    """

    def __init__(self, nrows, ncols, diagonal, row_ops, col_ops):
        self.nrows = nrows
        self.ncols = ncols
        self.invariant_factors = tuple(diagonal)
        self.rank = sum(1 for d in diagonal if d)
        self._row_ops = row_ops
        self._col_ops = col_ops
        self._cache = {}

    @property
    def D(self) -> IntMatrix:
        rows = [[0] * self.ncols for _ in range(self.nrows)]
        for i, d in enumerate(self.invariant_factors):
            rows[i][i] = d
        return IntMatrix(rows, ncols=self.ncols)

    # vector actions -----------------------------------------------------
    def apply_U(self, v: Sequence[int]) -> list[int]:
        x = list(v)
        for op in self._row_ops:
            if op[0] == _ADD:
                x[op[1]] += op[3] * x[op[2]]
            elif op[0] == _SWAP:
                x[op[1]], x[op[2]] = x[op[2]], x[op[1]]
            else:
                x[op[1]] = -x[op[1]]
        return x

    def apply_U_inv(self, v: Sequence[int]) -> list[int]:
        x = list(v)
        for op in reversed(self._row_ops):
            if op[0] == _ADD:
                x[op[1]] -= op[3] * x[op[2]]
            elif op[0] == _SWAP:
                x[op[1]], x[op[2]] = x[op[2]], x[op[1]]
            else:
                x[op[1]] = -x[op[1]]
        return x

    def apply_V(self, v: Sequence[int]) -> list[int]:
        # V = E_1 E_2 ... E_k, column op "col_i += q col_j" is I + q e_j e_i^T
        x = list(v)
        for op in reversed(self._col_ops):
            if op[0] == _ADD:
                x[op[2]] += op[3] * x[op[1]]
            elif op[0] == _SWAP:
                x[op[1]], x[op[2]] = x[op[2]], x[op[1]]
            else:
                x[op[1]] = -x[op[1]]
        return x

    def apply_V_inv(self, v: Sequence[int]) -> list[int]:
        x = list(v)
        for op in self._col_ops:
            if op[0] == _ADD:
                x[op[2]] -= op[3] * x[op[1]]
            elif op[0] == _SWAP:
                x[op[1]], x[op[2]] = x[op[2]], x[op[1]]
            else:
                x[op[1]] = -x[op[1]]
        return x

    # materialised transforms -------------------------------------------
    def _columns_of(self, fn, n):
        cols = [fn([int(i == j) for i in range(n)]) for j in range(n)]
        return IntMatrix.from_columns(cols, nrows=n) if n else IntMatrix([], ncols=0)

    @property
    def U(self) -> IntMatrix:
        if "U" not in self._cache:
            self._cache["U"] = self._columns_of(self.apply_U, self.nrows)
        return self._cache["U"]

    @property
    def U_inv(self) -> IntMatrix:
        if "U_inv" not in self._cache:
            self._cache["U_inv"] = self._columns_of(self.apply_U_inv, self.nrows)
        return self._cache["U_inv"]

    @property
    def V(self) -> IntMatrix:
        if "V" not in self._cache:
            self._cache["V"] = self._columns_of(self.apply_V, self.ncols)
        return self._cache["V"]

    @property
    def V_inv(self) -> IntMatrix:
        if "V_inv" not in self._cache:
            self._cache["V_inv"] = self._columns_of(self.apply_V_inv, self.ncols)
        return self._cache["V_inv"]

    # derived lattice data ----------------------------------------------
    def solve(self, b: Sequence[int]) -> list[int] | None:
        """Integer x with A x = b, or None."""
        if len(b) != self.nrows:
            raise ValueError(f"right-hand side has length {len(b)}, expected {self.nrows}")
        y = self.apply_U(b)
        w = [0] * self.ncols
        for i, yi in enumerate(y):
            d = self.invariant_factors[i] if i < len(self.invariant_factors) else 0
            if d == 0:
                if yi:
                    return None
            else:
                q, r = divmod(yi, d)
                if r:
                    return None
                w[i] = q
        return self.apply_V(w)

    def kernel_basis(self) -> list[list[int]]:
        """Columns of V spanning ker(A) over Z (a saturated basis)."""
        return [self.apply_V([int(i == j) for i in range(self.ncols)])
                for j in range(self.rank, self.ncols)]

    def image_basis(self) -> list[list[int]]:
        """A Z-basis of the column lattice A Z^n."""
        out = []
        for i in range(self.rank):
            e = [0] * self.nrows
            e[i] = self.invariant_factors[i]
            out.append(self.apply_U_inv(e))
        return out


def smith_normal_form(a) -> SmithDecomposition:
    """Smith form of an IntMatrix (or SparseIntMatrix, or nested lists)."""
    if isinstance(a, SparseIntMatrix):
        m, n = a.shape
        row_dicts = [dict(r) for r in a.row_dicts]
    else:
        a = as_int_matrix(a)
        m, n = a.shape
        row_dicts = [{j: x for j, x in enumerate(r) if x} for r in a.rows()]
    row_ops: list[tuple] = []
    col_ops: list[tuple] = []
    if m == 0 or n == 0:
        return SmithDecomposition(m, n, [0] * min(m, n), row_ops, col_ops)

    block, pivot_cols = _sparse_echelon(row_dicts, m, n, row_ops)
    diag = _dense_smith(block, n, row_ops, col_ops)
    diag += [0] * (min(m, n) - len(diag))
    return SmithDecomposition(m, n, diag, row_ops, col_ops)


def _sparse_echelon(rows: list[dict], m: int, n: int,
                    row_ops: list) -> tuple[list[list[int]], list[int]]:
    """Row-reduce to echelon form; returns the dense pivot block (moved to the top rows)."""
    colidx = [set() for _ in range(n)]
    for i, r in enumerate(rows):
        for j in r:
            colidx[j].add(i)
    active = set(range(m))
    pivots: list[tuple[int, int]] = []  # (row, col)

    def add_row(i, p, q):
        # row_i += q * row_p
        ri = rows[i]
        for j, x in rows[p].items():
            v = ri.get(j, 0) + q * x
            if v:
                if j not in ri:
                    colidx[j].add(i)
                ri[j] = v
            elif j in ri:
                del ri[j]
                colidx[j].discard(i)
        row_ops.append((_ADD, i, p, q))

    for c in range(n):
        cand = [i for i in colidx[c] if i in active]
        while len(cand) > 1:
            p = min(cand, key=lambda i: (abs(rows[i][c]), i))
            apc = rows[p][c]
            for i in cand:
                if i != p:
                    add_row(i, p, -(rows[i][c] // apc))
            cand = [i for i in colidx[c] if i in active]
        if cand:
            p = cand[0]
            active.discard(p)
            pivots.append((p, c))
        if len(pivots) == m:
            break

    # move pivot rows to the top, preserving echelon order
    pos = list(range(m))      # pos[k] = original row currently at position k
    where = list(range(m))    # where[orig] = current position
    for k, (p, _) in enumerate(pivots):
        cur = where[p]
        if cur != k:
            other = pos[k]
            pos[k], pos[cur] = p, other
            where[p], where[other] = k, cur
            row_ops.append((_SWAP, k, cur))
    block = []
    for k in range(len(pivots)):
        r = rows[pos[k]]
        dense = [0] * n
        for j, x in r.items():
            dense[j] = x
        block.append(dense)
    return block, [c for _, c in pivots]


def _dense_smith(a: list[list[int]], n: int, row_ops: list, col_ops: list) -> list[int]:
    m = len(a)
    diag = []
    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                ri = a[i]
                for j in range(t, n):
                    x = ri[j]
                    if x and (best is None or abs(x) < best[0]):
                        best = (abs(x), i, j)
                        if best[0] == 1:
                            break
                if best is not None and best[0] == 1:
                    break
            if best is None:
                return diag
            _, i0, j0 = best
            if i0 != t:
                a[t], a[i0] = a[i0], a[t]
                row_ops.append((_SWAP, t, i0))
            if j0 != t:
                for r in a:
                    r[t], r[j0] = r[j0], r[t]
                col_ops.append((_SWAP, t, j0))
            p = a[t][t]
            clean = True
            for i in range(t + 1, m):
                x = a[i][t]
                if x:
                    q = -(x // p)
                    ri, rt = a[i], a[t]
                    for j in range(t, n):
                        if rt[j]:
                            ri[j] += q * rt[j]
                    row_ops.append((_ADD, i, t, q))
                    if ri[t]:
                        clean = False
            rt = a[t]
            for j in range(t + 1, n):
                x = rt[j]
                if x:
                    q = -(x // p)
                    for r in a:
                        if r[t]:
                            r[j] += q * r[t]
                    col_ops.append((_ADD, j, t, q))
                    if rt[j]:
                        clean = False
            if not clean:
                continue
            bad = None
            for i in range(t + 1, m):
                if any(x % p for x in a[i][t + 1:]):
                    bad = i
                    break
            if bad is None:
                break
            ri, rt = a[t], a[bad]
            for j in range(t, n):
                ri[j] += rt[j]
            row_ops.append((_ADD, t, bad, 1))
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            row_ops.append((_NEG, t))
        diag.append(a[t][t])
    return diag


def solve_integer(a, b: Sequence[int]) -> tuple[int, ...] | None:
    """Integer solution of ``a x = b`` or None; any returned x is re-verified."""
    a = as_int_matrix(a)
    if len(b) != a.nrows:
        raise ValueError(f"right-hand side has length {len(b)}, expected {a.nrows}")
    x = smith_normal_form(a).solve(list(b))
    if x is None:
        return None
    if a.apply(x) != tuple(b):
        raise ArithmeticError("integer solve produced a non-solution")
    return tuple(x)


def kernel_basis(a) -> list[tuple[int, ...]]:
    return [tuple(v) for v in smith_normal_form(a).kernel_basis()]


def lattice_basis(gens: Sequence[Sequence[int]], dim: int) -> list[tuple[int, ...]]:
    """Z-basis of the lattice spanned by ``gens`` inside Z^dim."""
    if not gens:
        return []
    snf = smith_normal_form(IntMatrix.from_columns(gens, nrows=dim))
    return [tuple(v) for v in snf.image_basis()]
