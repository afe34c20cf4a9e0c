"""Bring-Jerrard covers z^n + s z + t over k[x]: decomposition, integral
closure, ramification, quartic and quintic reductions, divisors on the cover,
and an independent Puiseux oracle."""
from .bj_data import BJDecomposition, BJInput, decompose, discriminant, make_bj_input, make_minimal
from .closure import IntegralBasis, IntegralElement, cyclic_basis, integral_basis, verify_closure
from .errors import BJError
from .ramification import closure_discriminant, local_profile, ramification_divisor
from .ring_core import QQ, Poly, PrimeField

__version__ = "0.1.0"

__all__ = [
    "BJDecomposition",
    "BJError",
    "BJInput",
    "IntegralBasis",
    "IntegralElement",
    "Poly",
    "PrimeField",
    "QQ",
    "closure_discriminant",
    "cyclic_basis",
    "decompose",
    "discriminant",
    "integral_basis",
    "local_profile",
    "make_bj_input",
    "make_minimal",
    "ramification_divisor",
    "verify_closure",
]
