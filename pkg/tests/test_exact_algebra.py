from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from battery import determinantal_divisors
from hyperelliptic.exact import (CycloNumber, FgAbelianGroup, IntMatrix, RatMatrix, cokernel,
                                 cyclotomic_polynomial, format_rational, hom_kernel,
                                 kernel_basis, lattice_basis, parse_rational, rational_nullspace,
                                 rational_rank, smith_normal_form, solve_integer, solve_rational,
                                 subquotient)
from hyperelliptic.exact.matrices import SparseIntMatrix


def int_matrices(max_dim=6, bound=9):
    return st.integers(1, max_dim).flatmap(
        lambda m: st.integers(1, max_dim).flatmap(
            lambda n: st.lists(st.lists(st.integers(-bound, bound), min_size=n, max_size=n),
                               min_size=m, max_size=m).map(lambda rows: IntMatrix(rows, ncols=n))))


# rationals ---------------------------------------------------------------------

@pytest.mark.parametrize("text,value", [("1/2", Fraction(1, 2)), ("-3/6", Fraction(-1, 2)),
                                        ("7", Fraction(7)), (4, Fraction(4)), (" 2/3 ", Fraction(2, 3))])
def test_parse_rational(text, value):
    assert parse_rational(text) == value


@pytest.mark.parametrize("bad", [0.5, "0.5", "1/0", "1/-2", True, "1e3", None])
def test_parse_rational_rejects(bad):
    with pytest.raises(ValueError):
        parse_rational(bad)


@given(st.fractions())
def test_format_parse_roundtrip(x):
    assert parse_rational(format_rational(x)) == x


# matrices -----------------------------------------------------------------------

def test_matrix_basics():
    a = IntMatrix([[1, 2], [3, 4]])
    assert a.T == IntMatrix([[1, 3], [2, 4]])
    assert a.det() == -2
    assert (a @ a.inverse()).is_identity()
    assert a.inverse() == RatMatrix([[-2, 1], [Fraction(3, 2), Fraction(-1, 2)]])
    assert IntMatrix([[2, 1], [1, 1]]).unimodular_inverse() == IntMatrix([[1, -1], [-1, 2]])
    with pytest.raises(ValueError):
        a.unimodular_inverse()
    assert a.hstack(IntMatrix.identity(2)).shape == (2, 4)
    assert a ** 0 == IntMatrix.identity(2)


def test_matrix_is_immutable_and_hashable():
    a = IntMatrix([[1, 0], [0, 1]])
    assert {a: 1}[IntMatrix.identity(2)] == 1


@given(int_matrices(5, 5))
def test_det_multiplicative(a):
    if a.nrows == a.ncols:
        assert (a @ a).det() == a.det() ** 2
        assert a.T.det() == a.det()


def test_rational_solve_and_kernel():
    a = RatMatrix([[1, 2, 3], [2, 4, 6]])
    assert rational_rank(a) == 1
    ker = rational_nullspace(a)
    assert len(ker) == 2
    for v in ker:
        assert not any(a.apply(v))
    assert solve_rational(a, [1, 2]) is not None
    assert solve_rational(a, [1, 3]) is None


def test_sparse_matches_dense():
    s = SparseIntMatrix(3, 3, [{0: 2}, {1: -1, 2: 4}, {}])
    d = s.to_dense()
    assert d == IntMatrix([[2, 0, 0], [0, -1, 4], [0, 0, 0]])
    assert s.apply([1, 2, 3]) == d.apply([1, 2, 3])
    assert smith_normal_form(s).invariant_factors == smith_normal_form(d).invariant_factors


# Smith normal form ---------------------------------------------------------------

@settings(max_examples=300, deadline=None)
@given(int_matrices())
def test_smith_properties(a):
    s = smith_normal_form(a)
    assert s.U @ a @ s.V == s.D
    assert s.U.det() in (1, -1) and s.V.det() in (1, -1)
    assert s.U @ s.U_inv == IntMatrix.identity(a.nrows)
    assert s.V @ s.V_inv == IntMatrix.identity(a.ncols)
    diag = list(s.invariant_factors)
    nz = [x for x in diag if x]
    assert diag[:len(nz)] == nz and all(x > 0 for x in nz)
    assert all(y % x == 0 for x, y in zip(nz, nz[1:]))
    prod = 1
    for x, dk in zip(diag, determinantal_divisors(a)):
        prod *= x
        assert prod == dk


@settings(max_examples=200, deadline=None)
@given(int_matrices(), st.lists(st.integers(-5, 5), min_size=6, max_size=6))
def test_solve_integer(a, x):
    x = x[:a.ncols]
    b = a.apply(x)
    y = solve_integer(a, b)
    assert y is not None and a.apply(y) == b


def test_solve_integer_detects_non_solutions():
    assert solve_integer(IntMatrix([[2, 0], [0, 2]]), [1, 0]) is None
    assert solve_integer(IntMatrix([[2, 4]]), [6]) is not None


@settings(max_examples=100, deadline=None)
@given(int_matrices())
def test_kernel_basis_is_saturated(a):
    ker = kernel_basis(a)
    assert len(ker) == a.ncols - rational_rank(a)
    for v in ker:
        assert not any(a.apply(v))
    if ker:
        # a saturated sublattice has trivial torsion in the quotient
        q = cokernel(IntMatrix.from_columns(ker, nrows=a.ncols))
        assert q.torsion == ()


def test_known_smith_forms():
    assert smith_normal_form(IntMatrix([[2, 4, 4], [-6, 6, 12], [10, -4, -16]])).invariant_factors == (2, 6, 12)
    assert smith_normal_form(IntMatrix([[0, 0], [0, 0]])).invariant_factors == (0, 0)
    assert smith_normal_form(IntMatrix([[6, 4]])).invariant_factors == (2,)


# finitely generated abelian groups -------------------------------------------------

def test_cokernel_iso_type():
    g = cokernel(IntMatrix([[2, 0], [0, 3], [0, 0]]))
    assert g == FgAbelianGroup((6,), 1)
    assert str(g) == "Z/6 + Z"
    assert g.order() is None
    assert cokernel(IntMatrix([[1]])).is_trivial


def test_cokernel_witness():
    g = cokernel(IntMatrix([[2, 0], [0, 4]]))
    assert g.torsion == (2, 4)
    assert g.is_zero(g.coordinates([2, 4]))
    assert not g.is_zero(g.coordinates([0, 2]))
    c = g.coordinates([1, 1])
    assert g.coordinates(g.lift(c)) == c
    assert sorted(g.element_order(x) for x in g.elements())[-1] == 4


def test_subquotient_and_subgroup():
    # 2Z + 2Z inside Z^2 modulo 4Z + 6Z
    q = subquotient([(2, 0), (0, 2)], [(4, 0), (0, 6)], 2)
    assert q == FgAbelianGroup((6,), 0)
    g = FgAbelianGroup((2, 4), 0, to_normal=lambda x: x, from_normal=lambda c: c)
    h = g.subgroup([(0, 2)])
    assert h.contains((0, 2)) and not h.contains((1, 0))
    assert h.group.order() == 2 and h.quotient.order() == 4


def test_hom_kernel():
    z4 = FgAbelianGroup((4,), 0)
    z2 = FgAbelianGroup((2,), 0)
    assert hom_kernel(z4, z2, [(1,)]).order() == 2
    with pytest.raises(ValueError):
        hom_kernel(z2, z4, [(1,)])  # 2 * 1 != 0 in Z/4


def test_lattice_basis():
    basis = lattice_basis([(2, 0), (0, 2), (1, 1)], 2)
    assert len(basis) == 2
    assert abs(IntMatrix.from_columns(basis, nrows=2).det()) == 2


# cyclotomic arithmetic ---------------------------------------------------------------

def test_cyclotomic_polynomials():
    assert cyclotomic_polynomial(1) == (-1, 1)
    assert cyclotomic_polynomial(4) == (1, 0, 1)
    assert cyclotomic_polynomial(6) == (1, -1, 1)
    assert len(cyclotomic_polynomial(12)) == 5


@pytest.mark.parametrize("e", [1, 2, 3, 4, 5, 6, 8, 12])
def test_roots_of_unity(e):
    z = CycloNumber.zeta(e)
    assert z ** e == CycloNumber.rational(1, e)
    total = CycloNumber.rational(0, e)
    for k in range(e):
        total = total + z ** k
    assert total == CycloNumber.rational(1 if e == 1 else 0, e)
    assert (z * z.conjugate()).is_rational()


def test_cyclotomic_field_ops():
    i = CycloNumber.zeta(4)
    w = CycloNumber.zeta(3)
    assert i * i == CycloNumber.rational(-1, 4)
    s = i.embed(12) + w.embed(12)
    assert (s - w.embed(12)) == i.embed(12)
    x = i + CycloNumber.rational(2, 4)
    assert x * x.inverse() == CycloNumber.rational(1, 4)
    assert (w + w.conjugate()).rational_part() == Fraction(-1)
    assert CycloNumber.root_of_unity(Fraction(1, 4), 8) == CycloNumber.zeta(8, 2)
