"""Euclidean Jordan algebras Sym(n,R) and Herm(n,C), and the Cayley transform.

The Jordan product is ``x o y = (xy + yx)/2``.  Spectral decompositions come
from the Hermitian eigensolver: each eigenvector ``v`` gives the primitive
idempotent ``v v*``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .domains import DomainSpec, GroupElement, act, k_element, shilov_k, transverse, validate_point
from .numeric import STRUCT_TOL, NonTransverseError, SingularError, ValidationError, as_matrix, herm_eigen


@dataclass(frozen=True)
class JordanAlgebra:
    kind: str  # "symr" or "hermc"
    n: int

    def __post_init__(self):
        if self.kind not in ("symr", "hermc"):
            raise ValidationError(f"unknown Jordan algebra kind {self.kind!r}")
        if self.n < 1:
            raise ValidationError("Jordan algebra needs n >= 1")

    @property
    def rank(self) -> int:
        return self.n

    @property
    def unit(self) -> "JordanElement":
        return JordanElement(self, np.eye(self.n))

    def element(self, x: Any) -> "JordanElement":
        return JordanElement(self, x)


@dataclass(frozen=True)
class JordanElement:
    algebra: JordanAlgebra
    x: np.ndarray = field(repr=False)

    def __post_init__(self):
        A = as_matrix(self.x, "x")
        n = self.algebra.n
        if A.shape != (n, n):
            raise ValidationError(f"Jordan element must be {n}x{n}")
        scale = max(1.0, float(np.max(np.abs(A), initial=0.0)))
        if np.max(np.abs(A - A.conj().T)) > STRUCT_TOL * scale:
            raise ValidationError("Jordan element must be Hermitian")
        if self.algebra.kind == "symr":
            if np.max(np.abs(A.imag)) > STRUCT_TOL * scale:
                raise ValidationError("Sym(n,R) element must be real")
            A = A.real
        A = 0.5 * (A + A.conj().T)
        object.__setattr__(self, "x", A)

    def __add__(self, other: "JordanElement") -> "JordanElement":
        _same(self, other)
        return JordanElement(self.algebra, self.x + other.x)

    def __sub__(self, other: "JordanElement") -> "JordanElement":
        _same(self, other)
        return JordanElement(self.algebra, self.x - other.x)

    def scale(self, c: float) -> "JordanElement":
        return JordanElement(self.algebra, c * self.x)


@dataclass(frozen=True)
class JordanFrame:
    algebra: JordanAlgebra
    idempotents: tuple = field(repr=False)

    def check(self, tol: float = 1e-9) -> float:
        """Largest violation of the frame axioms; raises if above ``tol``."""
        c = [np.asarray(ci) for ci in self.idempotents]
        err = 0.0
        for i, ci in enumerate(c):
            err = max(err, float(np.max(np.abs(_jprod(ci, ci) - ci))))
            for cj in c[i + 1 :]:
                err = max(err, float(np.max(np.abs(_jprod(ci, cj)))))
        err = max(err, float(np.max(np.abs(sum(c) - np.eye(self.algebra.n)))))
        if err > tol:
            raise ValidationError(f"frame axioms violated by {err:.3g}")
        return err


def _same(x: JordanElement, y: JordanElement) -> None:
    if x.algebra != y.algebra:
        raise ValidationError("elements belong to different Jordan algebras")


def _jprod(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return 0.5 * (a @ b + b @ a)


def jordan_product(x: JordanElement, y: JordanElement) -> JordanElement:
    _same(x, y)
    return JordanElement(x.algebra, _jprod(x.x, y.x))


def spectral_decompose(x: JordanElement) -> tuple[np.ndarray, JordanFrame]:
    """Eigenvalues ``lambda`` and a Jordan frame with ``x = sum lambda_i c_i``."""
    w, V = herm_eigen(x.x)
    if x.algebra.kind == "symr":
        # a real eigenbasis: rotate each column to make it real
        cols = []
        for k in range(V.shape[1]):
            v = V[:, k]
            j = int(np.argmax(np.abs(v)))
            v = v * (abs(v[j]) / v[j])
            cols.append(v.real / np.linalg.norm(v.real))
        V = np.array(cols).T
        # re-orthonormalize inside degenerate eigenspaces
        V, _ = _orthonormalize_clusters(V, w)
    c = tuple(np.outer(V[:, k], V[:, k].conj()) for k in range(V.shape[1]))
    if x.algebra.kind == "symr":
        c = tuple(ci.real for ci in c)
    return w, JordanFrame(x.algebra, c)


def _orthonormalize_clusters(V: np.ndarray, w: np.ndarray, gap: float = 1e-8):
    out = V.copy()
    start = 0
    scale = max(1.0, float(np.max(np.abs(w), initial=0.0)))
    for k in range(1, len(w) + 1):
        if k == len(w) or w[k] - w[k - 1] > gap * scale:
            if k - start > 1:
                Q, _ = np.linalg.qr(out[:, start:k])
                out[:, start:k] = Q
            start = k
    return out, w


def jdet(x: JordanElement) -> float:
    w, _ = herm_eigen(x.x)
    return float(np.prod(w))


def jtrace(x: JordanElement) -> float:
    w, _ = herm_eigen(x.x)
    return float(np.sum(w))


def spectral_plusminus(x: JordanElement, tol: float = 1e-9) -> tuple[int, int, int]:
    w, _ = herm_eigen(x.x)
    kp = int(np.sum(w > tol))
    km = int(np.sum(w < -tol))
    return kp, km, len(w) - kp - km


def spectral_abs_norm(x: JordanElement) -> float:
    """``sum |lambda_i|``, a genuine norm (unlike the trace)."""
    w, _ = herm_eigen(x.x)
    return float(np.sum(np.abs(w)))


def algebra_for(spec: DomainSpec) -> JordanAlgebra:
    """Jordan algebra of the tube model of ``spec`` (Sp(2n) or SU(n,n))."""
    if spec.family == "sp":
        return JordanAlgebra("symr", spec.n)
    if spec.family == "su" and spec.p == spec.q:
        return JordanAlgebra("hermc", spec.p)
    raise ValidationError(f"no Jordan algebra model for {spec.label}")


def _check_cayley_family(spec: DomainSpec) -> None:
    algebra_for(spec)


def cayley_to_tube(spec: DomainSpec, Z: Any) -> np.ndarray:
    """``(Z + i Id)(i Z + Id)^{-1}``; the point ``i Id`` goes to infinity."""
    _check_cayley_family(spec)
    A = validate_point(spec, Z)
    n = A.shape[0]
    I = np.eye(n)
    den = 1j * A + I
    s = np.linalg.svd(den, compute_uv=False)
    if s[-1] <= 1e-10 * max(1.0, s[0]):
        raise SingularError("non-transverse to Cayley base point")
    Y = np.linalg.solve(den.T, (A + 1j * I).T).T
    if spec.family == "sp":
        Y = 0.5 * (Y + Y.T)
    return Y


def cayley_from_tube(spec: DomainSpec, Y: Any) -> np.ndarray:
    """Inverse Cayley map ``(Id - i Y)^{-1}(Y - i Id)``."""
    _check_cayley_family(spec)
    A = as_matrix(Y, "Y")
    n = A.shape[0]
    I = np.eye(n)
    Z = np.linalg.solve(I - 1j * A, A - 1j * I)
    if spec.family == "sp":
        Z = 0.5 * (Z + Z.T)
    return Z


def _cayley_conjugator(spec: DomainSpec, base: np.ndarray) -> GroupElement:
    # k with k(o_r) = base, then the rotation o_r -> i o_r
    k = shilov_k(spec, base)
    if spec.family == "sp":
        rot = k_element(spec, np.exp(1j * np.pi / 4) * np.eye(spec.n))
    else:
        rot = k_element(spec, np.exp(1j * np.pi / 4) * np.eye(spec.p), np.exp(-1j * np.pi / 4) * np.eye(spec.q))
    return rot @ k.inv()


def cayley_based(spec: DomainSpec, base: Any, Z: Any, conj: GroupElement | None = None) -> np.ndarray:
    """Cayley transform sending the Shilov point ``base`` to infinity.

    ``conj`` may carry a precomputed conjugating element (from
    :func:`cayley_conjugator`) when many points share one base.
    """
    _check_cayley_family(spec)
    B = validate_point(spec, base)
    if not transverse(spec, B, Z):
        raise NonTransverseError("point is not transverse to the Cayley base point")
    g = _cayley_conjugator(spec, B) if conj is None else conj
    return cayley_to_tube(spec, act(g, Z))


def cayley_conjugator(spec: DomainSpec, base: Any) -> GroupElement:
    _check_cayley_family(spec)
    return _cayley_conjugator(spec, validate_point(spec, base))


def cayley_based_inverse(spec: DomainSpec, base: Any, Y: Any) -> np.ndarray:
    """Point ``Z`` with ``cayley_based(spec, base, Z) = Y``."""
    g = cayley_conjugator(spec, base)
    return act(g.inv(), cayley_from_tube(spec, Y))
