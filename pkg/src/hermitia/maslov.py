"""Maslov index of triples of Shilov points in three models.

* ``maslov_transverse``: signature of the form ``A_W(v, w) = h(v, T_W w)``
  on ``W+`` where ``W`` is the graph of ``T_W : W+ -> W-``.
* ``maslov_jordan``: send ``x3`` to infinity by a Cayley transform and count
  positive minus negative eigenvalues of ``y2 - y1``.
* ``maslov_extended``: the same count for any triple, through an auxiliary
  point transverse to all three.
* ``symplectic_triple_form``: signature of ``h(l1,l2) + h(l2,l3) + h(l3,l1)``
  on ``L1 + L2 + L3``.

With the orientation conventions of :mod:`hermitia.bergmann`,
``pi * tau = beta`` on pairwise transverse triples.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

import numpy as np

from .domains import (
    DomainSpec,
    IsotropicSubspace,
    sample_shilov,
    subspace_of_shilov,
    shilov_of_subspace,
    transverse,
    validate_point,
)
from .jordan import cayley_conjugator, cayley_to_tube
from .domains import act
from .numeric import NonTransverseError, PreconditionError, Rng, ValidationError, herm_eigen

__all__ = [
    "MaslovValue",
    "IsotropicSubspace",
    "subspace_of_shilov",
    "shilov_of_subspace",
    "graph_form",
    "maslov_transverse",
    "maslov_jordan",
    "maslov_extended",
    "symplectic_triple_form",
    "ZERO_REL_TOL",
    "DEFAULT_AUX_SEED",
]

ZERO_REL_TOL = 1e-8
DEFAULT_AUX_SEED = 20240601
AUX_RETRIES = 64
AUX_MARGIN = 1e-2


@dataclass(frozen=True)
class MaslovValue:
    value: int
    degenerate_dims: int = 0
    rank: int | None = None

    def __int__(self) -> int:
        return self.value


def _sign_counts(M: np.ndarray, rel: float = ZERO_REL_TOL) -> tuple[int, int, int]:
    H = 0.5 * (M + M.conj().T)
    w, _ = herm_eigen(H)
    thr = rel * max(1.0, float(np.max(np.abs(w), initial=0.0)))
    kp = int(np.sum(w > thr))
    km = int(np.sum(w < -thr))
    return kp, km, len(w) - kp - km


def _same_form(*subs: IsotropicSubspace) -> None:
    first = subs[0]
    for L in subs[1:]:
        if L.real != first.real or L.form.shape != first.form.shape or np.max(np.abs(L.form - first.form)) > 1e-12:
            raise ValidationError("subspaces live in different ambient spaces")


def _orth(L: IsotropicSubspace) -> np.ndarray:
    Q, _ = np.linalg.qr(L.basis)
    return Q


def _is_complement(B1: np.ndarray, B2: np.ndarray, tol: float = 1e-9) -> bool:
    s = np.linalg.svd(np.hstack([B1, B2]), compute_uv=False)
    return bool(s[-1] > tol * s[0])


def graph_form(W_minus: IsotropicSubspace, W_plus: IsotropicSubspace, W: IsotropicSubspace) -> np.ndarray:
    """Matrix of ``A_W`` in an orthonormal basis of ``W+``.

    Symmetric for the real symplectic model, Hermitian for the complex one.
    """
    _same_form(W_minus, W_plus, W)
    Bp, Bm, Bw = _orth(W_plus), _orth(W_minus), _orth(W)
    if not _is_complement(Bw, Bm):
        raise NonTransverseError("W is not transverse to W-")
    if not _is_complement(Bp, Bm):
        raise NonTransverseError("W+ is not transverse to W-")
    n = Bp.shape[1]
    # v + T v in W for v in W+:  Bw b - Bm c = Bp a
    coef = np.linalg.solve(np.hstack([Bw, -Bm]), Bp)
    T = Bm @ coef[n:]
    A = W_plus.h(Bp, T)
    return 0.5 * (A + (A.T if W.real else A.conj().T))


def maslov_transverse(W_plus: IsotropicSubspace, W: IsotropicSubspace, W_minus: IsotropicSubspace) -> MaslovValue:
    """``sign(A_W)`` for ``W, W+`` transverse to ``W-``."""
    A = graph_form(W_minus, W_plus, W)
    kp, km, k0 = _sign_counts(A)
    return MaslovValue(kp - km, k0, W.dim)


def _tube_spec(spec: DomainSpec) -> None:
    if not (spec.family == "sp" or (spec.family == "su" and spec.p == spec.q)):
        raise ValidationError(f"Maslov index is implemented for Sp(2n) and SU(n,n), not {spec.label}")


def _diff_index(y1: np.ndarray, y2: np.ndarray) -> tuple[int, int]:
    kp, km, k0 = _sign_counts(y2 - y1)
    return kp - km, k0


def maslov_jordan(spec: DomainSpec, x1: Any, x2: Any, x3: Any) -> MaslovValue:
    """Spectral count of ``y2 - y1`` after sending ``x3`` to infinity."""
    _tube_spec(spec)
    X1, X2, X3 = (validate_point(spec, x) for x in (x1, x2, x3))
    for x in (X1, X2):
        if not transverse(spec, x, X3):
            raise NonTransverseError("x3 must be transverse to x1 and x2")
    g = cayley_conjugator(spec, X3)
    y1 = cayley_to_tube(spec, act(g, X1))
    y2 = cayley_to_tube(spec, act(g, X2))
    val, k0 = _diff_index(y1, y2)
    return MaslovValue(val, k0, spec.rank)


def pick_auxiliary(spec: DomainSpec, points: list, seed: int = DEFAULT_AUX_SEED, margin: float = AUX_MARGIN):
    """Seeded Shilov point transverse (with ``margin``) to every given point."""
    rng = Rng(seed)
    for _ in range(AUX_RETRIES):
        z = sample_shilov(spec, rng)
        if all(transverse(spec, x, z, tol=margin) for x in points):
            return z
    raise PreconditionError("degenerate configuration: no transverse auxiliary point found")


def maslov_extended(spec: DomainSpec, x1: Any, x2: Any, x3: Any, seed: int = DEFAULT_AUX_SEED, aux: Any = None) -> MaslovValue:
    """Maslov index of an arbitrary Shilov triple.

    ``tau(x1,x2,x3) = t(x1,x2) + t(x2,x3) - t(x1,x3)`` with ``t(a,b)`` the
    index of ``y_b - y_a`` after sending an auxiliary point to infinity.
    ``degenerate_dims`` reports the kernel dimension of ``y2 - y1``.
    """
    _tube_spec(spec)
    pts = [validate_point(spec, x) for x in (x1, x2, x3)]
    z = pick_auxiliary(spec, pts, seed) if aux is None else validate_point(spec, aux)
    g = cayley_conjugator(spec, z)
    y = [cayley_to_tube(spec, act(g, x)) for x in pts]
    t12, k12 = _diff_index(y[0], y[1])
    t23, _ = _diff_index(y[1], y[2])
    t13, _ = _diff_index(y[0], y[2])
    return MaslovValue(t12 + t23 - t13, k12, spec.rank)


def symplectic_triple_form(L1: IsotropicSubspace, L2: IsotropicSubspace, L3: IsotropicSubspace) -> MaslovValue:
    """Signature of ``B(l1,l2,l3) = h(l1,l2) + h(l2,l3) + h(l3,l1)``.

    For the real symplectic model this is the classical triple form; the
    complex model uses the Hermitian analogue with adjoints in place of
    transposes.
    """
    _same_form(L1, L2, L3)
    B = [_orth(L) for L in (L1, L2, L3)]
    n = B[0].shape[1]
    h = L1.h
    M12, M23, M31 = h(B[0], B[1]), h(B[1], B[2]), h(B[2], B[0])
    adj = (lambda X: X.T) if L1.real else (lambda X: X.conj().T)
    Z = np.zeros((n, n), dtype=M12.dtype)
    Q = 0.5 * np.block([[Z, M12, adj(M31)], [adj(M12), Z, M23], [M31, adj(M23), Z]])
    kp, km, k0 = _sign_counts(Q)
    return MaslovValue(kp - km, k0, n)
