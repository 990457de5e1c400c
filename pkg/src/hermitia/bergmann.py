"""Normalized Bergmann kernel and the bounded Kähler 2-cocycle.

The kernel of the matrix families is ``det(Id - W*Z)^{-2}``.  Its argument
is evaluated from principal logarithms of the eigenvalues of ``Id - W*Z``:
for points of the closed ball those eigenvalues have nonnegative real part,
so the principal branch is the continuous determination that vanishes on the
diagonal.

The cocycle ``beta(x, y, z)`` is the negated sum of the three pairwise
arguments.  The sign is chosen so that the counterclockwise ideal triangle
``(1, i, -1)`` of the disc has ``beta = +pi``; with this sign ``beta`` is the
signed hyperbolic area of geodesic triangles (curvature -1).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

import numpy as np

from .domains import DomainSpec, sample_shilov, transverse, validate_point
from .numeric import NonTransverseError, Rng, ValidationError, log_det_right_half

# exponent of det(Id - W*Z) in the normalized kernel; SO*(2n) uses half the
# ambient SU(n,n) exponent
_EXPONENT = {"su": -2.0, "sp": -2.0, "sostar": -1.0}


@dataclass(frozen=True)
class CocycleValue:
    value: float
    family_rank: int

    def __post_init__(self):
        if abs(self.value) > np.pi * self.family_rank + 1e-9:
            raise ValueError(f"|beta| = {abs(self.value)!r} exceeds pi * r = {np.pi * self.family_rank!r}")

    def __float__(self) -> float:
        return float(self.value)


def _require_kernel(spec: DomainSpec) -> None:
    if not spec.has_kernel:
        raise ValidationError(f"no kernel formula for {spec.label}")


def _log_det_pair(spec: DomainSpec, z: Any, w: Any) -> complex:
    Z = validate_point(spec, z)
    W = validate_point(spec, w)
    M = np.eye(Z.shape[1]) - W.conj().T @ Z
    try:
        return log_det_right_half(M)
    except NonTransverseError as exc:
        raise NonTransverseError("non-transverse pair: det(Id - w*z) = 0") from exc


def kernel(spec: DomainSpec, z: Any, w: Any) -> complex:
    """Normalized kernel ``k(z, w)``."""
    _require_kernel(spec)
    return complex(np.exp(_EXPONENT[spec.family] * _log_det_pair(spec, z, w)))


def arg_kernel(spec: DomainSpec, z: Any, w: Any) -> float:
    """Continuous argument of ``k(z, w)``, zero on the diagonal."""
    _require_kernel(spec)
    return float(_EXPONENT[spec.family] * _log_det_pair(spec, z, w).imag)


def beta_raw(spec: DomainSpec, x: Any, y: Any, z: Any) -> float:
    """``arg k(x,y) + arg k(y,z) + arg k(z,x)`` without the orientation flip."""
    return arg_kernel(spec, x, y) + arg_kernel(spec, y, z) + arg_kernel(spec, z, x)


def beta(spec: DomainSpec, x: Any, y: Any, z: Any) -> CocycleValue:
    """Bounded Kähler cocycle on interior points and transverse Shilov points."""
    return CocycleValue(-beta_raw(spec, x, y, z), spec.rank)


def beta_value(spec: DomainSpec, x: Any, y: Any, z: Any) -> float:
    return beta(spec, x, y, z).value


def hermitian_triple_product(spec: DomainSpec, x: Any, y: Any, z: Any) -> complex:
    """Unit complex number attached to a pairwise transverse Shilov triple.

    Computed from the kernel values themselves (no logarithms), as the phase
    of ``k(y,x) k(z,y) k(x,z)``; it agrees with ``exp(i beta)``.
    """
    _require_kernel(spec)
    for a, b in ((x, y), (y, z), (z, x)):
        if not transverse(spec, a, b):
            raise NonTransverseError("triple is not pairwise transverse")
    prod = kernel(spec, x, y) * kernel(spec, y, z) * kernel(spec, z, x)
    return complex(np.conj(prod) / abs(prod))


def sample_transverse_triple(spec: DomainSpec, rng: Rng, min_gap: float = 1e-6, tries: int = 100):
    """Three Shilov points, pairwise transverse with margin ``min_gap``."""
    for _ in range(tries):
        pts = [sample_shilov(spec, rng) for _ in range(3)]
        if all(transverse(spec, a, b, tol=min_gap) for a, b in ((pts[0], pts[1]), (pts[1], pts[2]), (pts[0], pts[2]))):
            return pts
    raise NonTransverseError("could not sample a transverse triple")


def beta_value_set_probe(spec: DomainSpec, samples: int, rng: Rng) -> list[float]:
    """``beta`` over ``samples`` random pairwise-transverse Shilov triples."""
    _require_kernel(spec)
    out = []
    for _ in range(int(samples)):
        x, y, z = sample_transverse_triple(spec, rng)
        out.append(beta_value(spec, x, y, z))
    return out


def lattice_distance(spec: DomainSpec, value: float) -> float:
    """Distance from ``value`` to the set ``{pi (r - 2k) : k = 0..r}``."""
    r = spec.rank
    return float(min(abs(value - np.pi * (r - 2 * k)) for k in range(r + 1)))


def histogram(values: list[float], spec: DomainSpec, bins: int = 24) -> dict:
    r = spec.rank
    if bins < 1:
        raise ValidationError("bins must be positive")
    # extremal values sit on the edges up to rounding; clip them into range
    lim = np.pi * r
    v = np.clip(np.asarray(values, dtype=float), -lim, lim)
    counts, edges = np.histogram(v, bins=bins, range=(-lim, lim))
    return {"edges": [float(e) for e in edges], "counts": [int(c) for c in counts]}
