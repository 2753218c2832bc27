"""Exact computational kernel for the contact geometry of the supercircle."""

from .grassmann import (
    FLOAT64,
    RATIONAL,
    AlgebraError,
    BackendMismatch,
    GrassmannAlgebra,
    GrassmannNumber,
    NotInvertible,
    NotRepresentable,
    ParityError,
)

__all__ = [
    "AlgebraError",
    "BackendMismatch",
    "FLOAT64",
    "GrassmannAlgebra",
    "GrassmannNumber",
    "NotInvertible",
    "NotRepresentable",
    "ParityError",
    "RATIONAL",
]

__version__ = "0.1.0"
