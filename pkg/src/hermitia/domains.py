"""Bounded matrix-ball models of the classical Hermitian symmetric spaces.

Four families are supported:

=========  =======================  ====  =================================
family     points                   rank  group realization
=========  =======================  ====  =================================
``su``     q x p complex matrices   p     U(p,q) with J = diag(I_p, -I_q)
``sp``     n x n complex symmetric  n     Sp(2n,R) inside SU(n,n)
``sostar`` n x n complex skew       n//2  SO*(2n) inside SU(n,n)
``so2n``   vectors in C^n           2     SO(2,n), real (n+2) x (n+2)
=========  =======================  ====  =================================

Points of the three matrix families are stored with the q x p convention
``Id_p - Z*Z > 0``.  Group elements act by the fractional linear map
``X -> (A X + B)(C X + D)^{-1}`` on the transpose ``X = Z^T``, which keeps the
rotation ``exp(t Z_g)`` of the Lie algebra module turning points
counterclockwise.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

import numpy as np
from scipy.linalg import expm, null_space

from .numeric import (
    BOUNDARY_TOL,
    STRUCT_TOL,
    NonTransverseError,
    Rng,
    SingularError,
    ValidationError,
    as_matrix,
    herm_eigen,
)

FAMILIES = ("su", "sp", "sostar", "so2n")

_ALIASES = {
    "su": "su",
    "su_pq": "su",
    "supq": "su",
    "sp": "sp",
    "sp2n": "sp",
    "sostar": "sostar",
    "sostar2n": "sostar",
    "so*": "sostar",
    "so2n": "so2n",
    "so2": "so2n",
}


@dataclass(frozen=True)
class DomainSpec:
    """A classical domain family with its parameters."""

    family: str
    p: int = 0
    q: int = 0
    n: int = 0

    def __post_init__(self):
        fam = _ALIASES.get(str(self.family).lower())
        if fam is None:
            raise ValidationError(f"unknown family {self.family!r}")
        object.__setattr__(self, "family", fam)
        if fam == "su":
            if not (1 <= self.p <= self.q):
                raise ValidationError(f"SU(p,q) needs 1 <= p <= q, got p={self.p}, q={self.q}")
        elif fam == "sp":
            if self.n < 1:
                raise ValidationError("Sp(2n) needs n >= 1")
        elif fam == "sostar":
            if self.n < 2:
                raise ValidationError("SO*(2n) needs n >= 2")
        elif self.n < 2:
            raise ValidationError("SO(2,n) needs n >= 2")

    @classmethod
    def su(cls, p: int, q: int) -> "DomainSpec":
        return cls("su", p=p, q=q)

    @classmethod
    def sp(cls, n: int) -> "DomainSpec":
        return cls("sp", n=n)

    @classmethod
    def sostar(cls, n: int) -> "DomainSpec":
        return cls("sostar", n=n)

    @classmethod
    def so2n(cls, n: int) -> "DomainSpec":
        return cls("so2n", n=n)

    @classmethod
    def parse(cls, family: str, params: Any) -> "DomainSpec":
        """Build from a family name and a params dict or list."""
        fam = _ALIASES.get(str(family).lower())
        if fam is None:
            raise ValidationError(f"unknown family {family!r}")
        try:
            if fam == "su":
                if isinstance(params, dict):
                    return cls(fam, p=int(params["p"]), q=int(params["q"]))
                p, q = params
                return cls(fam, p=int(p), q=int(q))
            if isinstance(params, dict):
                return cls(fam, n=int(params["n"]))
            if isinstance(params, (list, tuple)):
                (n,) = params
                return cls(fam, n=int(n))
            return cls(fam, n=int(params))
        except (KeyError, TypeError, ValueError) as exc:
            raise ValidationError(f"invalid params for {fam}: {params!r}") from exc

    @property
    def params(self) -> dict:
        if self.family == "su":
            return {"p": self.p, "q": self.q}
        return {"n": self.n}

    @property
    def label(self) -> str:
        return {
            "su": f"SU({self.p},{self.q})",
            "sp": f"Sp({2 * self.n},R)",
            "sostar": f"SO*({2 * self.n})",
            "so2n": f"SO(2,{self.n})",
        }[self.family]

    @property
    def rank(self) -> int:
        return {"su": self.p, "sp": self.n, "sostar": self.n // 2, "so2n": 2}[self.family]

    @property
    def tube_type(self) -> bool:
        if self.family == "su":
            return self.p == self.q
        if self.family == "sostar":
            return self.n % 2 == 0
        return True

    @property
    def shape(self) -> tuple[int, int]:
        if self.family == "su":
            return (self.q, self.p)
        if self.family == "so2n":
            return (self.n, 1)
        return (self.n, self.n)

    @property
    def group_size(self) -> int:
        if self.family == "su":
            return self.p + self.q
        if self.family == "so2n":
            return self.n + 2
        return 2 * self.n

    @property
    def has_kernel(self) -> bool:
        return self.family != "so2n"


# ---------------------------------------------------------------------------
# point validation and classification


def validate_point(spec: DomainSpec, Z: Any, tol: float | None = None) -> np.ndarray:
    """Check the family shape constraint and return ``Z`` as an array."""
    tol = STRUCT_TOL if tol is None else tol
    A = as_matrix(Z, "Z")
    if spec.family == "so2n" and A.shape == (1, spec.n):
        A = A.T
    if A.shape != spec.shape:
        raise ValidationError(f"{spec.label}: expected shape {spec.shape}, got {A.shape}")
    scale = max(1.0, float(np.max(np.abs(A), initial=0.0)))
    if spec.family == "sp" and np.max(np.abs(A - A.T)) > tol * scale:
        raise ValidationError("Sp(2n) points must be symmetric")
    if spec.family == "sostar" and np.max(np.abs(A + A.T)) > tol * scale:
        raise ValidationError("SO*(2n) points must be skew-symmetric")
    return A


@dataclass(frozen=True)
class PointClass:
    """Result of :func:`interior_test`."""

    kind: str  # "interior", "boundary" or "outside"
    orbit_index: int | None = None
    rank: int = 0

    @property
    def is_interior(self) -> bool:
        return self.kind == "interior"

    @property
    def is_shilov(self) -> bool:
        return self.kind == "boundary" and self.orbit_index == self.rank

    def __str__(self) -> str:
        if self.kind == "boundary":
            return f"Boundary({self.orbit_index})"
        return self.kind.capitalize()


def lie_ball_spectrum(z: np.ndarray) -> np.ndarray:
    """Spectral values ``(s_-, s_+)`` of a vector in the Lie ball model."""
    z = np.asarray(z, dtype=complex).ravel()
    a = float(np.real(np.vdot(z, z)))
    b = abs(complex(z @ z))
    disc = max(a * a - b * b, 0.0)
    return np.sqrt(np.maximum([a - np.sqrt(disc), a + np.sqrt(disc)], 0.0))


def defect_spectrum(spec: DomainSpec, Z: Any) -> np.ndarray:
    """Eigenvalues of ``Id - Z*Z`` (or ``1 - s^2`` for the Lie ball), ascending."""
    A = validate_point(spec, Z)
    if spec.family == "so2n":
        s = lie_ball_spectrum(A)
        return np.sort(1.0 - s * s)
    w, _ = herm_eigen(np.eye(A.shape[1]) - A.conj().T @ A)
    return w


def interior_test(spec: DomainSpec, Z: Any, tol: float = BOUNDARY_TOL) -> PointClass:
    """Classify ``Z`` as interior, in the boundary orbit ``i`` or outside.

    The orbit index counts the unit singular values; for SO*(2n) they come in
    pairs so the count is halved.
    """
    w = defect_spectrum(spec, Z)
    r = spec.rank
    if np.any(w < -tol):
        return PointClass("outside", None, r)
    zeros = int(np.sum(np.abs(w) <= tol))
    if zeros == 0:
        return PointClass("interior", None, r)
    if spec.family == "sostar":
        zeros //= 2
    return PointClass("boundary", max(zeros, 1), r)


def is_shilov(spec: DomainSpec, Z: Any, tol: float = 1e-8) -> bool:
    """Family Shilov equation within ``tol``."""
    A = validate_point(spec, Z)
    if spec.family == "so2n":
        z = A.ravel()
        return abs(np.vdot(z, z).real - 1.0) <= tol and abs(abs(complex(z @ z)) - 1.0) <= tol
    M = A.conj().T @ A
    if spec.family == "sostar":
        # Z*Z must be an orthogonal projection of rank 2r
        if np.max(np.abs(M @ M - M)) > tol:
            return False
        return abs(np.trace(M).real - 2 * spec.rank) <= tol * spec.n
    return bool(np.max(np.abs(M - np.eye(M.shape[0]))) <= tol)


# ---------------------------------------------------------------------------
# frames, flats and base points


def frame(spec: DomainSpec) -> list[np.ndarray]:
    """Strongly orthogonal frame ``E_1, ..., E_r`` in point coordinates."""
    rows, cols = spec.shape
    out = []
    for j in range(spec.rank):
        E = np.zeros((rows, cols), dtype=complex)
        if spec.family in ("su", "sp"):
            E[j, j] = 1.0
        elif spec.family == "sostar":
            E[2 * j, 2 * j + 1] = 1.0
            E[2 * j + 1, 2 * j] = -1.0
        else:
            E[0, 0] = 0.5
            E[1, 0] = 0.5j if j == 0 else -0.5j
        out.append(E)
    return out


def base_point(spec: DomainSpec, index: int | None = None) -> np.ndarray:
    """Boundary base point ``o_i = E_1 + ... + E_i`` (default ``i = r``)."""
    k = spec.rank if index is None else index
    if not 0 <= k <= spec.rank:
        raise ValidationError(f"orbit index must be in [0, {spec.rank}]")
    out = np.zeros(spec.shape, dtype=complex)
    for E in frame(spec)[:k]:
        out = out + E
    return out


def flat_point(spec: DomainSpec, lambdas: Any, t: float = 1.0) -> np.ndarray:
    """Point ``sum_j tanh(lambda_j t) E_j`` of the maximal flat through 0."""
    lam = np.asarray(lambdas, dtype=float).ravel()
    if lam.size != spec.rank:
        raise ValidationError(f"expected {spec.rank} flat coordinates, got {lam.size}")
    out = np.zeros(spec.shape, dtype=complex)
    for lj, E in zip(lam, frame(spec)):
        out = out + np.tanh(lj * t) * E
    return out


# ---------------------------------------------------------------------------
# group elements


def form_J(spec: DomainSpec) -> np.ndarray:
    """Hermitian form preserved by the defining realization."""
    if spec.family == "so2n":
        return np.diag([1.0, 1.0] + [-1.0] * spec.n).astype(complex)
    a = spec.p if spec.family == "su" else spec.n
    b = spec.q if spec.family == "su" else spec.n
    return np.diag([1.0] * a + [-1.0] * b).astype(complex)


def form_S(spec: DomainSpec) -> np.ndarray | None:
    """Complex bilinear form preserved in addition to ``J`` (Sp and SO*)."""
    if spec.family not in ("sp", "sostar"):
        return None
    n = spec.n
    eps = -1.0 if spec.family == "sp" else 1.0
    S = np.zeros((2 * n, 2 * n), dtype=complex)
    S[:n, n:] = np.eye(n)
    S[n:, :n] = eps * np.eye(n)
    return S


@dataclass(frozen=True)
class GroupElement:
    """Element of the defining realization of the family's group."""

    spec: DomainSpec
    g: np.ndarray = field(repr=False)

    def __post_init__(self):
        object.__setattr__(self, "g", check_group(self.spec, self.g))

    def __matmul__(self, other: "GroupElement") -> "GroupElement":
        return GroupElement(self.spec, self.g @ other.g)

    def inv(self) -> "GroupElement":
        return GroupElement(self.spec, group_inverse(self.spec, self.g))

    def __call__(self, Z: Any) -> np.ndarray:
        return act(self, Z)


def group_residual(spec: DomainSpec, g: np.ndarray) -> float:
    J = form_J(spec)
    scale = max(1.0, float(np.linalg.norm(g, 2)) ** 2)
    res = float(np.max(np.abs(g.conj().T @ J @ g - J))) / scale
    S = form_S(spec)
    if S is not None:
        res = max(res, float(np.max(np.abs(g.T @ S @ g - S))) / scale)
    if spec.family == "so2n":
        res = max(res, float(np.max(np.abs(g.imag))) / np.sqrt(scale))
    return res


def check_group(spec: DomainSpec, g: Any, tol: float | None = None) -> np.ndarray:
    tol = STRUCT_TOL if tol is None else tol
    A = as_matrix(g, "g")
    m = spec.group_size
    if A.shape != (m, m):
        raise ValidationError(f"{spec.label}: group element must be {m}x{m}, got {A.shape}")
    if group_residual(spec, A) > max(tol, 1e-9):
        raise ValidationError(f"{spec.label}: matrix does not satisfy the defining group equations")
    if spec.family == "so2n":
        A = A.real.astype(complex)
        if np.linalg.det(A.real) < 0:
            raise ValidationError("SO(2,n) element must have determinant 1")
        # reject the components that swap the domain with its conjugate
        try:
            inside = interior_test(spec, _act_line(spec, A, np.zeros((spec.n, 1)))).is_interior
        except SingularError:
            inside = False
        if not inside:
            raise ValidationError("SO(2,n) element is not in the identity component")
    return A


def group_inverse(spec: DomainSpec, g: np.ndarray) -> np.ndarray:
    # g^{-1} = J^{-1} g* J keeps the inverse exactly in the group
    J = form_J(spec)
    if spec.family == "so2n":
        return (J @ g.T @ J).real.astype(complex)
    return J @ g.conj().T @ J


def _act_line(spec: DomainSpec, g: np.ndarray, z: np.ndarray) -> np.ndarray:
    z = np.asarray(z, dtype=complex).ravel()
    s = complex(z @ z)
    w = np.concatenate([[(1 + s) / 2, 1j * (1 - s) / 2], z])
    w2 = g @ w
    norm = w2[0] - 1j * w2[1]
    if abs(norm) <= 1e-14 * max(1.0, float(np.max(np.abs(w2)))):
        raise SingularError("image line is at infinity of the vector model")
    return (w2[2:] / norm).reshape(-1, 1)


def act(g: GroupElement | tuple, Z: Any) -> np.ndarray:
    """Action of a group element on a point of the domain or its closure."""
    if isinstance(g, tuple):
        g = GroupElement(*g)
    spec = g.spec
    A = validate_point(spec, Z)
    if spec.family == "so2n":
        return _act_line(spec, g.g, A)
    a = spec.p if spec.family == "su" else spec.n
    M = g.g
    X = A.T
    num = M[:a, :a] @ X + M[:a, a:]
    den = M[a:, :a] @ X + M[a:, a:]
    try:
        cond = np.linalg.cond(den)
    except np.linalg.LinAlgError:
        cond = np.inf
    if not np.isfinite(cond) or cond > 1e13:
        raise SingularError("C Z + D is singular at this point")
    out = np.linalg.solve(den.T, num.T)
    if spec.family == "sp":
        out = 0.5 * (out + out.T)
    elif spec.family == "sostar":
        out = 0.5 * (out - out.T)
    return out


def k_element(spec: DomainSpec, *blocks: np.ndarray) -> GroupElement:
    """Element of the maximal compact subgroup from its unitary blocks.

    ``su``: (A, D) with A in U(p), D in U(q), acting ``X -> A X D^{-1}``;
    ``sp``/``sostar``: (U,) acting ``Z -> U Z U^T``; ``so2n``: (theta, O).
    """
    if spec.family == "su":
        A, D = blocks
        g = np.zeros((spec.p + spec.q,) * 2, dtype=complex)
        g[: spec.p, : spec.p] = A
        g[spec.p :, spec.p :] = D
        return GroupElement(spec, g)
    if spec.family in ("sp", "sostar"):
        (U,) = blocks
        n = spec.n
        g = np.zeros((2 * n, 2 * n), dtype=complex)
        g[:n, :n] = U
        g[n:, n:] = U.conj()
        return GroupElement(spec, g)
    theta, O = blocks
    g = np.eye(spec.n + 2, dtype=complex)
    c, s = np.cos(theta), np.sin(theta)
    g[:2, :2] = [[c, -s], [s, c]]
    g[2:, 2:] = O
    return GroupElement(spec, g)


def random_k(spec: DomainSpec, rng: Rng) -> GroupElement:
    if spec.family == "su":
        return k_element(spec, rng.unitary(spec.p), rng.unitary(spec.q))
    if spec.family in ("sp", "sostar"):
        return k_element(spec, rng.unitary(spec.n))
    O = rng.orthogonal(spec.n)
    if np.linalg.det(O) < 0:
        O[:, 0] = -O[:, 0]
    return k_element(spec, rng.uniform(0, 2 * np.pi), O)


def random_algebra_element(spec: DomainSpec, rng: Rng, scale: float = 1.0) -> np.ndarray:
    """Random element of the Lie algebra in the defining realization."""
    if spec.family == "so2n":
        n = spec.n
        Y = rng.normal((n, n))
        M = rng.normal((2, n))
        X = np.zeros((n + 2, n + 2))
        X[:2, :2] = rng.normal() * np.array([[0.0, -1.0], [1.0, 0.0]])
        X[2:, 2:] = Y - Y.T
        X[:2, 2:] = M
        X[2:, :2] = M.T
        return scale * X.astype(complex)
    a = spec.p if spec.family == "su" else spec.n
    b = spec.q if spec.family == "su" else spec.n
    K1 = rng.hermitian(a) * 1j
    if spec.family == "su":
        K2 = rng.hermitian(b) * 1j
        B = rng.complex_gaussian((a, b))
    else:
        K2 = K1.conj()
        B = rng.complex_gaussian((a, b))
        B = 0.5 * (B + B.T) if spec.family == "sp" else 0.5 * (B - B.T)
    X = np.zeros((a + b, a + b), dtype=complex)
    X[:a, :a] = K1
    X[a:, a:] = K2
    X[:a, a:] = B
    X[a:, :a] = B.conj().T
    if spec.family == "su":
        X = X - np.trace(X) / (a + b) * np.eye(a + b)
    return scale * X


def random_group_element(spec: DomainSpec, rng: Rng, scale: float = 0.7) -> GroupElement:
    g = expm(random_algebra_element(spec, rng, scale))
    if spec.family == "so2n":
        g = g.real.astype(complex)
    return GroupElement(spec, g)


# ---------------------------------------------------------------------------
# sampling


def sample_interior(spec: DomainSpec, rng: Rng, spread: float = 1.0) -> np.ndarray:
    """Random interior point ``k . flat_point(lambda)``."""
    lam = spread * rng.normal(spec.rank)
    return act(random_k(spec, rng), flat_point(spec, lam))


def sample_shilov(spec: DomainSpec, rng: Rng) -> np.ndarray:
    """Random Shilov point ``k . o_r`` with ``k`` Haar-random in K."""
    if spec.family == "sp":
        U = rng.unitary(spec.n)
        Z = U @ U.T
        return 0.5 * (Z + Z.T)
    return act(random_k(spec, rng), base_point(spec))


def shilov_with_spectrum(spec: DomainSpec, U: np.ndarray, phases: Any) -> np.ndarray:
    """Sp(2n) Shilov point ``U diag(exp(i phases)) U^T`` for real orthogonal ``U``.

    Sharing ``U`` and some phases between two points produces prescribed
    intersections in the isotropic-subspace model.
    """
    if spec.family != "sp":
        raise ValidationError("shilov_with_spectrum is defined for Sp(2n)")
    Z = U @ np.diag(np.exp(1j * np.asarray(phases, dtype=float))) @ U.T
    return 0.5 * (Z + Z.T)


# ---------------------------------------------------------------------------
# transversality


def transversality(spec: DomainSpec, x: Any, y: Any) -> complex:
    """The polynomial ``h(x, y)``: ``det(Id - y*x)`` for matrix families and
    ``1 + (x^T x) conj(y^T y) - 2 y*x`` for the Lie ball."""
    X = validate_point(spec, x)
    Y = validate_point(spec, y)
    if spec.family == "so2n":
        xv, yv = X.ravel(), Y.ravel()
        return complex(1 + (xv @ xv) * np.conj(yv @ yv) - 2 * np.vdot(yv, xv))
    return complex(np.linalg.det(np.eye(X.shape[1]) - Y.conj().T @ X))


def transverse(spec: DomainSpec, x: Any, y: Any, tol: float = 1e-9) -> bool:
    """Transversality of two Shilov points (symmetric in ``x``, ``y``)."""
    X = validate_point(spec, x)
    Y = validate_point(spec, y)
    if spec.family == "so2n":
        return abs(transversality(spec, X, Y)) > tol
    M = np.eye(X.shape[1]) - Y.conj().T @ X
    return float(np.linalg.svd(M, compute_uv=False)[-1]) > tol


# ---------------------------------------------------------------------------
# maximal compact elements moving the Shilov base point


def shilov_k(spec: DomainSpec, x: Any) -> GroupElement:
    """An element ``k`` of K with ``k . o_r = x`` (``su`` with p = q, and ``sp``)."""
    X = validate_point(spec, x)
    if not is_shilov(spec, X, 1e-7):
        raise ValidationError("point is not on the Shilov boundary")
    if spec.family == "su":
        Xi = X.T  # p x q with orthonormal rows
        comp = null_space(Xi).conj().T if spec.q > spec.p else np.zeros((0, spec.q))
        Dinv = np.vstack([Xi, comp])
        return k_element(spec, np.eye(spec.p, dtype=complex), Dinv.conj().T)
    if spec.family == "sp":
        return k_element(spec, takagi_unitary(X))
    raise ValidationError(f"shilov_k is not implemented for {spec.label}")


def takagi_unitary(X: np.ndarray) -> np.ndarray:
    """Unitary ``U`` with ``X = U U^T`` for a symmetric unitary ``X``.

    Real and imaginary parts of ``X`` are commuting real symmetric matrices;
    a generic real combination diagonalizes both.
    """
    R, S = X.real, X.imag
    R, S = 0.5 * (R + R.T), 0.5 * (S + S.T)
    _, O = np.linalg.eigh(R + 0.5772156649015329 * S)
    d = np.diag(O.T @ X @ O)
    d = d / np.abs(d)
    return O * np.sqrt(d)


# ---------------------------------------------------------------------------
# isotropic subspace model


def cayley_matrix(n: int) -> np.ndarray:
    """Unitary ``C`` taking complex-realization coordinates to real ones.

    ``C^{-1} g C`` lies in the complex realization of Sp(2n) for real
    symplectic ``g`` and ``C* (i Omega) C = diag(I, -I)``.
    """
    I = np.eye(n)
    return np.block([[I, I], [-1j * I, 1j * I]]) / np.sqrt(2.0)


def symplectic_form(n: int) -> np.ndarray:
    I = np.eye(n)
    Z = np.zeros((n, n))
    return np.block([[Z, I], [-I, Z]])


@dataclass(frozen=True)
class IsotropicSubspace:
    """Maximal isotropic subspace spanned by the columns of ``basis``.

    ``form`` is the matrix ``H`` of the skew form ``h(v, w) = v^* H w``
    (transpose instead of adjoint when ``real``).
    """

    basis: np.ndarray = field(repr=False)
    form: np.ndarray = field(repr=False)
    real: bool

    def __post_init__(self):
        B = np.asarray(self.basis, dtype=float if self.real else complex)
        H = np.asarray(self.form, dtype=float if self.real else complex)
        if B.ndim != 2 or B.shape[0] != 2 * B.shape[1] or H.shape != (B.shape[0],) * 2:
            raise ValidationError("isotropic subspace: basis must be 2n x n and form 2n x 2n")
        if np.linalg.matrix_rank(B, tol=1e-9 * max(1.0, np.linalg.norm(B))) != B.shape[1]:
            raise ValidationError("isotropic subspace: basis is rank deficient")
        Q, _ = np.linalg.qr(B)
        if np.max(np.abs(Q.conj().T @ H @ Q), initial=0.0) > 1e-8 * max(1.0, np.linalg.norm(H)):
            raise ValidationError("isotropic subspace: basis is not isotropic")
        object.__setattr__(self, "basis", B)
        object.__setattr__(self, "form", H)

    @property
    def dim(self) -> int:
        return self.basis.shape[1]

    def h(self, V: np.ndarray, W: np.ndarray) -> np.ndarray:
        return (V.T if self.real else V.conj().T) @ self.form @ W


def subspace_form(spec: DomainSpec) -> tuple[np.ndarray, bool]:
    if spec.family == "sp":
        return symplectic_form(spec.n), True
    if (spec.family == "sostar" and spec.n % 2 == 0) or (spec.family == "su" and spec.p == spec.q):
        return -1j * form_J(spec), False
    raise ValidationError(f"no isotropic-subspace model for {spec.label}")


def subspace_of_shilov(spec: DomainSpec, Z: Any) -> IsotropicSubspace:
    """Maximal isotropic subspace attached to a Shilov point.

    Sp(2n): the real Lagrangian whose complexification is the graph
    ``span [[X], [I]]`` in complex-realization coordinates.  SU(n,n) and
    SO*(2n): the graph itself, isotropic for ``h = -i J``.
    """
    H, real = subspace_form(spec)
    A = validate_point(spec, Z)
    if not is_shilov(spec, A, 1e-7):
        raise ValidationError("point is not on the Shilov boundary")
    X = A.T
    n = X.shape[0]
    G = np.vstack([X, np.eye(n)])
    if not real:
        return IsotropicSubspace(G, H, False)
    M = cayley_matrix(n) @ G
    U, s, _ = np.linalg.svd(np.hstack([M.real, M.imag]))
    return IsotropicSubspace(U[:, :n], H, True)


def shilov_of_subspace(spec: DomainSpec, L: IsotropicSubspace) -> np.ndarray:
    """Inverse of :func:`subspace_of_shilov`."""
    H, real = subspace_form(spec)
    if L.real != real or L.form.shape != H.shape or np.max(np.abs(L.form - H)) > 1e-12:
        raise ValidationError("subspace form does not match the family")
    n = L.dim
    W = cayley_matrix(n).conj().T @ L.basis if real else L.basis
    W1, W2 = W[:n], W[n:]
    if np.linalg.cond(W2) > 1e12:
        raise ValidationError("subspace is not a graph over the second factor")
    X = np.linalg.solve(W2.T, W1.T).T
    Z = X.T
    if spec.family == "sp":
        Z = 0.5 * (Z + Z.T)
    elif spec.family == "sostar":
        Z = 0.5 * (Z - Z.T)
    return Z


def subspaces_intersection_dim(L1: IsotropicSubspace, L2: IsotropicSubspace, tol: float = 1e-8) -> int:
    """``dim(L1 ∩ L2)`` from the rank of the stacked orthonormal bases."""
    Q1, _ = np.linalg.qr(L1.basis)
    Q2, _ = np.linalg.qr(L2.basis)
    s = np.linalg.svd(np.hstack([Q1, Q2]), compute_uv=False)
    return int(np.sum(s <= tol * s[0]))


def require_transverse(spec: DomainSpec, x: Any, y: Any, what: str = "points") -> None:
    if not transverse(spec, x, y):
        raise NonTransverseError(f"{what} are not transverse")
