"""Bergmann cocycles, Maslov indices and Toledo invariants on classical
bounded symmetric domains."""

from .bergmann import beta, beta_value, hermitian_triple_product, kernel
from .domains import DomainSpec, GroupElement, act, base_point, interior_test, transverse
from .maslov import maslov_extended, maslov_jordan, maslov_transverse, symplectic_triple_form
from .numeric import HermitiaError, NonTransverseError, PreconditionError, Rng, SingularError, ValidationError
from .toledo import SurfaceGroupRep, ToledoResult, fuchsian_genus2

__version__ = "0.1.0"

__all__ = [
    "DomainSpec",
    "GroupElement",
    "act",
    "base_point",
    "interior_test",
    "transverse",
    "kernel",
    "beta",
    "beta_value",
    "hermitian_triple_product",
    "maslov_transverse",
    "maslov_jordan",
    "maslov_extended",
    "symplectic_triple_form",
    "SurfaceGroupRep",
    "ToledoResult",
    "fuchsian_genus2",
    "Rng",
    "HermitiaError",
    "ValidationError",
    "PreconditionError",
    "NonTransverseError",
    "SingularError",
]
