from .abelian import FgAbelianGroup, Subgroup, cokernel, hom_kernel, subquotient
from .cyclotomic import CycloNumber, cyclo_add, cyclo_mul, cyclo_rational_part, cyclotomic_polynomial
from .matrices import (IntMatrix, RatMatrix, format_rational, parse_rational, rational_nullspace,
                       rational_rank, solve_rational)
from .smith import SmithDecomposition, kernel_basis, lattice_basis, smith_normal_form, solve_integer

__all__ = [
    "CycloNumber", "FgAbelianGroup", "IntMatrix", "RatMatrix", "SmithDecomposition", "Subgroup",
    "cokernel", "cyclo_add", "cyclo_mul", "cyclo_rational_part", "cyclotomic_polynomial",
    "format_rational", "hom_kernel", "kernel_basis", "lattice_basis", "parse_rational",
    "rational_nullspace", "rational_rank", "smith_normal_form", "solve_integer", "solve_rational",
    "subquotient",
]
