"""Eigenvalue estimation for non-normal matrices from smallest-singular-value queries."""

from ._core import (
    ChebPoly,
    NneigError,
    cheb_sqrt,
    companion_matrix,
    estimate_eigenvalue,
    estimate_real_eigenvalue,
    has_eigenvalue_in_region,
    heaviside_poly,
    jordan_matrix,
    largest_modulus_eigenvalue,
    pspec_grid,
    sigma0,
    smallest_modulus_eigenvalue,
    spectral_gap,
    sqrt_product,
    verify_hmu,
)

__all__ = [
    "ChebPoly",
    "NneigError",
    "cheb_sqrt",
    "companion_matrix",
    "estimate_eigenvalue",
    "estimate_real_eigenvalue",
    "has_eigenvalue_in_region",
    "heaviside_poly",
    "jordan_matrix",
    "largest_modulus_eigenvalue",
    "pspec_grid",
    "sigma0",
    "smallest_modulus_eigenvalue",
    "spectral_gap",
    "sqrt_product",
    "verify_hmu",
]


def eigenvalue(result):
    """Complex eigenvalue from a result dict (``[re, im]`` pair)."""
    re, im = result["eigenvalue"]
    return complex(re, im)
