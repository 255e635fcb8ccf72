"""Exact polynomial and rational-function algebra."""

from tangent_prover.algebra.factorization import (
    DoubleRootFactor,
    double_root_factor,
    odd_multiplicity_part,
    root_multiplicity,
    square_free_decomposition,
)
from tangent_prover.algebra.polynomial import (
    Polynomial,
    Remainder,
    poly_arith,
    poly_derivative,
    poly_divide_exact,
    poly_gcd,
    taylor_shift,
    taylor_unshift,
)
from tangent_prover.algebra.rational_function import RationalFunction, ratfunc_arith
from tangent_prover.algebra.rationals import (
    ceil_to_grid,
    floor_to_grid,
    rational_power,
    rational_root,
    simplest_rational_between,
)

__all__ = [
    "DoubleRootFactor",
    "Polynomial",
    "RationalFunction",
    "Remainder",
    "ceil_to_grid",
    "double_root_factor",
    "floor_to_grid",
    "odd_multiplicity_part",
    "poly_arith",
    "poly_derivative",
    "poly_divide_exact",
    "poly_gcd",
    "ratfunc_arith",
    "rational_power",
    "rational_root",
    "root_multiplicity",
    "simplest_rational_between",
    "square_free_decomposition",
    "taylor_shift",
    "taylor_unshift",
]
