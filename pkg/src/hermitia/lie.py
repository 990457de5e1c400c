"""Hermitian Lie algebras in matrix form, the lambda functional and root data.

Realizations (the ``realization`` key of :func:`build_algebra`):

``su``       su(p,q), k = block diagonal, p = [[0, B], [B*, 0]]
``sp``       sp(2n,R) in the complex form [[X1, X2], [conj X2, conj X1]]
``sp-real``  sp(2n,R) as real matrices preserving [[0, I], [-I, 0]]
``sostar``   so*(2n) inside su(n,n): k = diag(A, conj A), p with skew B
``so2n``     so(2,n) as real matrices preserving diag(1, 1, -1, ..., -1)

Every algebra carries a real basis of k followed by a real basis of p, the
central element ``Z_g`` of k and a frame ``X_1..X_r`` of commuting elements
of p normalized so that ``ad(X_j)`` has eigenvalue 2 on its long root.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import comb
from typing import Any

import numpy as np

from .numeric import ValidationError, as_matrix


def _E(n: int, i: int, j: int, m: int | None = None) -> np.ndarray:
    M = np.zeros((n, n if m is None else m), dtype=complex)
    M[i, j] = 1.0
    return M


def _u_basis(n: int, traceless: bool = False) -> list[np.ndarray]:
    out = []
    for j in range(n):
        for k in range(j + 1, n):
            out.append(_E(n, j, k) - _E(n, k, j))
            out.append(1j * (_E(n, j, k) + _E(n, k, j)))
    if traceless:
        out += [1j * (_E(n, j, j) - _E(n, j + 1, j + 1)) for j in range(n - 1)]
    else:
        out += [1j * _E(n, j, j) for j in range(n)]
    return out


def _sym_basis(n: int) -> list[np.ndarray]:
    out = []
    for j in range(n):
        for k in range(j, n):
            out.append(_E(n, j, k) + _E(n, k, j) if j != k else _E(n, j, j))
    return out


def _alt_basis(n: int) -> list[np.ndarray]:
    return [_E(n, j, k) - _E(n, k, j) for j in range(n) for k in range(j + 1, n)]


def _blocks(A, B, C, D) -> np.ndarray:
    return np.block([[A, B], [C, D]])


@dataclass(frozen=True)
class LieAlgebraData:
    family: str
    params: tuple
    realization: str
    k_basis: tuple = field(repr=False)
    p_basis: tuple = field(repr=False)
    Z: np.ndarray = field(repr=False)
    frame: tuple = field(repr=False)
    tube_type: bool = True

    @property
    def basis(self) -> list[np.ndarray]:
        return list(self.k_basis) + list(self.p_basis)

    @property
    def dim(self) -> int:
        return len(self.k_basis) + len(self.p_basis)

    @property
    def size(self) -> int:
        return self.Z.shape[0]

    @property
    def rank(self) -> int:
        return len(self.frame)

    def coordinates(self, X: np.ndarray) -> np.ndarray:
        """Real coordinates of ``X`` in :attr:`basis` (least squares)."""
        Binv, B = _basis_solver(self)
        v = _flat(as_matrix(X))
        c = Binv @ v
        if np.linalg.norm(B @ c - v) > 1e-8 * max(1.0, np.linalg.norm(v)):
            raise ValidationError("matrix is not in the Lie algebra")
        return c

    def combine(self, c: np.ndarray) -> np.ndarray:
        return sum(ci * Bi for ci, Bi in zip(c, self.basis))

    def describe(self) -> dict:
        return {"family": self.family, "params": list(self.params), "realization": self.realization}

    def check(self, tol: float = 1e-9) -> None:
        """Verify the Cartan relations and the Z_g / frame invariants."""
        Z = self.Z
        for K in self.k_basis:
            if np.max(np.abs(_br(Z, K))) > tol:
                raise ValidationError("Z_g does not commute with k")
        for P in self.p_basis:
            if np.max(np.abs(_br(Z, _br(Z, P)) + P)) > tol:
                raise ValidationError("ad(Z_g)^2 is not -Id on p")
        for i, Xi in enumerate(self.frame):
            for Xj in self.frame[i + 1 :]:
                if np.max(np.abs(_br(Xi, Xj))) > tol:
                    raise ValidationError("frame elements do not commute")


def _flat(X: np.ndarray) -> np.ndarray:
    return np.concatenate([X.real.ravel(), X.imag.ravel()])


_SOLVERS: dict = {}


def _basis_solver(alg: LieAlgebraData):
    key = id(alg)
    hit = _SOLVERS.get(key)
    if hit is not None and hit[0] is alg:
        return hit[1], hit[2]
    B = np.array([_flat(b) for b in alg.basis]).T
    Binv = np.linalg.pinv(B)
    _SOLVERS[key] = (alg, Binv, B)
    return Binv, B


def _br(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    return A @ B - B @ A


def _build_su(p: int, q: int) -> LieAlgebraData:
    n = p + q
    k = []
    for X in _u_basis(p)[: p * (p - 1)]:
        k.append(_blocks(X, np.zeros((p, q)), np.zeros((q, p)), np.zeros((q, q))))
    for Y in _u_basis(q)[: q * (q - 1)]:
        k.append(_blocks(np.zeros((p, p)), np.zeros((p, q)), np.zeros((q, p)), Y))
    k += [1j * (_E(n, j, j) - _E(n, j + 1, j + 1)) for j in range(n - 1)]
    pb = []
    for j in range(p):
        for m in range(q):
            pb.append(_E(n, j, p + m) + _E(n, p + m, j))
            pb.append(1j * (_E(n, j, p + m) - _E(n, p + m, j)))
    Z = 1j * np.diag([q / n] * p + [-p / n] * q).astype(complex)
    frame = tuple(_E(n, j, p + j) + _E(n, p + j, j) for j in range(p))
    return LieAlgebraData("su", (p, q), "su", tuple(k), tuple(pb), Z, frame, p == q)


def _build_sp(n: int) -> LieAlgebraData:
    O = np.zeros((n, n))
    k = tuple(_blocks(X, O, O, X.conj()) for X in _u_basis(n))
    pb = []
    for S in _sym_basis(n):
        pb.append(_blocks(O, S, S, O))
        pb.append(_blocks(O, 1j * S, -1j * S, O))
    Z = 0.5j * np.diag([1.0] * n + [-1.0] * n).astype(complex)
    frame = tuple(_blocks(O, _E(n, j, j), _E(n, j, j), O) for j in range(n))
    return LieAlgebraData("sp", (n,), "sp", k, tuple(pb), Z, frame, True)


def _build_sp_real(n: int) -> LieAlgebraData:
    O = np.zeros((n, n))
    k = [_blocks(A, O, O, A) for A in _alt_basis(n)]
    k += [_blocks(O, -S, S, O) for S in _sym_basis(n)]
    pb = [_blocks(S, O, O, -S) for S in _sym_basis(n)]
    pb += [_blocks(O, S, S, O) for S in _sym_basis(n)]
    I = np.eye(n)
    Z = 0.5 * _blocks(O, -I, I, O).astype(complex)
    frame = tuple(_blocks(_E(n, j, j), O, O, -_E(n, j, j)) for j in range(n))
    return LieAlgebraData("sp", (n,), "sp-real", tuple(k), tuple(pb), Z, frame, True)


def _build_sostar(n: int) -> LieAlgebraData:
    O = np.zeros((n, n))
    k = tuple(_blocks(X, O, O, X.conj()) for X in _u_basis(n))
    pb = []
    for S in _alt_basis(n):
        pb.append(_blocks(O, S, S.conj().T, O))
        pb.append(_blocks(O, 1j * S, (1j * S).conj().T, O))
    Z = 0.5j * np.diag([1.0] * n + [-1.0] * n).astype(complex)
    frame = []
    for j in range(n // 2):
        Jj = _E(n, 2 * j, 2 * j + 1) - _E(n, 2 * j + 1, 2 * j)
        frame.append(_blocks(O, Jj, Jj.conj().T, O))
    return LieAlgebraData("sostar", (n,), "sostar", k, tuple(pb), Z, tuple(frame), n % 2 == 0)


def _build_so2n(n: int) -> LieAlgebraData:
    m = n + 2
    k = [_E(m, 1, 0) - _E(m, 0, 1)]
    k += [_E(m, 2 + j, 2 + l) - _E(m, 2 + l, 2 + j) for j in range(n) for l in range(j + 1, n)]
    pb = [_E(m, a, 2 + j) + _E(m, 2 + j, a) for a in range(2) for j in range(n)]
    Z = (_E(m, 1, 0) - _E(m, 0, 1)).astype(complex)
    P1 = _E(m, 0, 2) + _E(m, 2, 0)
    P2 = _E(m, 1, 3) + _E(m, 3, 1)
    return LieAlgebraData("so2n", (n,), "so2n", tuple(k), tuple(pb), Z, (P1 + P2, P1 - P2), True)


@lru_cache(maxsize=None)
def _build_cached(family: str, params: tuple, realization: str) -> LieAlgebraData:
    if family == "su":
        p, q = params
        if not 1 <= p <= q:
            raise ValidationError("su(p,q) needs 1 <= p <= q")
        return _build_su(p, q)
    (n,) = params
    if family == "sp":
        if n < 1:
            raise ValidationError("sp(2n) needs n >= 1")
        return _build_sp_real(n) if realization == "sp-real" else _build_sp(n)
    if family == "sostar":
        if n < 2:
            raise ValidationError("so*(2n) needs n >= 2")
        return _build_sostar(n)
    if family == "so2n":
        if n < 2:
            raise ValidationError("so(2,n) needs n >= 2")
        return _build_so2n(n)
    raise ValidationError(f"unsupported family {family!r}")


def build_algebra(family: str, params: Any, realization: str | None = None) -> LieAlgebraData:
    """Matrix realization of a classical Hermitian Lie algebra.

    ``params`` is ``(p, q)`` for ``su`` and ``n`` (or ``(n,)``) otherwise.
    ``realization="sp-real"`` selects real matrices for ``sp``.
    """
    family = {"sp2n": "sp", "su_pq": "su", "sostar2n": "sostar"}.get(family.lower(), family.lower())
    if isinstance(params, dict):
        params = (params["p"], params["q"]) if family == "su" else (params["n"],)
    elif isinstance(params, (int, np.integer)):
        params = (int(params),)
    params = tuple(int(x) for x in params)
    if realization is None:
        realization = family
    if realization not in (family, "sp-real") or (realization == "sp-real" and family != "sp"):
        raise ValidationError(f"unknown realization {realization!r} for {family}")
    return _build_cached(family, params, realization)


def sl2() -> LieAlgebraData:
    """sl(2,R) as sp(2,R) in real matrices; its ``Z`` is ``Z_0``."""
    return build_algebra("sp", 1, "sp-real")


def lambda_of(alg: LieAlgebraData, X: Any, tol: float = 1e-8) -> float:
    """Coefficient of ``Z_g`` in ``X in k = R Z_g + [k, k]``."""
    A = as_matrix(X)
    if A.shape != alg.Z.shape:
        raise ValidationError("matrix size does not match the algebra")
    if np.max(np.abs(_br(alg.Z, A))) > tol * max(1.0, np.max(np.abs(A))):
        raise ValidationError("X is not in k (does not commute with Z_g)")
    return float(np.real(np.trace(alg.Z @ A)) / np.real(np.trace(alg.Z @ alg.Z)))


# ---------------------------------------------------------------------------
# homomorphisms


@dataclass(frozen=True)
class LieHom:
    """Linear map given by the images of the source basis (k first, then p)."""

    source: LieAlgebraData
    target: LieAlgebraData
    images: tuple = field(repr=False)

    def __post_init__(self):
        imgs = tuple(as_matrix(M) for M in self.images)
        if len(imgs) != self.source.dim:
            raise ValidationError(f"expected {self.source.dim} basis images, got {len(imgs)}")
        for M in imgs:
            if M.shape != self.target.Z.shape:
                raise ValidationError("image matrix has the wrong size")
        object.__setattr__(self, "images", imgs)

    def __call__(self, X: Any) -> np.ndarray:
        c = self.source.coordinates(X)
        return sum(ci * Mi for ci, Mi in zip(c, self.images))

    def residual(self) -> float:
        """Worst violation of bracket preservation and of k->k, p->p."""
        src, tgt = self.source, self.target
        B, imgs = src.basis, self.images
        scale = max(1.0, max(float(np.max(np.abs(M))) for M in imgs))
        err = 0.0
        for i in range(len(B)):
            for j in range(i + 1, len(B)):
                lhs = self(_br(B[i], B[j]))
                err = max(err, float(np.max(np.abs(lhs - _br(imgs[i], imgs[j])))) / scale**2)
        Zt = tgt.Z
        for M in imgs[: len(src.k_basis)]:
            err = max(err, float(np.max(np.abs(_br(Zt, M)))) / scale)
        for M in imgs[len(src.k_basis) :]:
            err = max(err, float(np.max(np.abs(_br(Zt, _br(Zt, M)) + M))) / scale)
        return err

    def validate(self, tol: float = 1e-8) -> "LieHom":
        err = self.residual()
        if err > tol:
            raise ValidationError(f"not a Lie homomorphism compatible with the Cartan decompositions (residual {err:.3g})")
        return self


def hom_from_function(source: LieAlgebraData, target: LieAlgebraData, fn) -> LieHom:
    return LieHom(source, target, tuple(fn(B) for B in source.basis))


def identity_hom(alg: LieAlgebraData) -> LieHom:
    return LieHom(alg, alg, tuple(alg.basis))


@dataclass(frozen=True)
class TightVerdict:
    verdict: str  # "tight", "not_tight" or "out_of_criterion"
    lam: float


def is_tight(hom: LieHom, tol: float = 1e-6) -> TightVerdict:
    """Tightness through ``|lambda(pi(Z_h))| = 1`` (tube-type source and target)."""
    hom.validate()
    lam = lambda_of(hom.target, hom(hom.source.Z))
    if not (hom.source.tube_type and hom.target.tube_type):
        return TightVerdict("out_of_criterion", lam)
    return TightVerdict("tight" if abs(abs(lam) - 1.0) < tol else "not_tight", lam)


def is_H2(hom: LieHom, tol: float = 1e-8) -> bool:
    """``pi(Z_h) = Z_g``."""
    hom.validate()
    return bool(np.max(np.abs(hom(hom.source.Z) - hom.target.Z)) < tol)


def _irrep_matrix(X: np.ndarray, n: int) -> np.ndarray:
    # action on the basis P_k = x^(m-k) y^k, columns are images of P_k
    m = 2 * n - 1
    a, b, c = X[0, 0], X[0, 1], X[1, 0]
    R = np.zeros((m + 1, m + 1), dtype=complex)
    for k in range(m + 1):
        R[k, k] += a * (m - 2 * k)
        if k + 1 <= m:
            R[k + 1, k] += b * (m - k)
        if k - 1 >= 0:
            R[k - 1, k] += c * k
    # the displayed coefficients reverse brackets; negate to get a homomorphism
    return -R


def irrep_form(n: int) -> np.ndarray:
    """Gram matrix of the invariant skew form on the basis ``P_k``."""
    m = 2 * n - 1
    G = np.zeros((m + 1, m + 1))
    for k in range(m + 1):
        G[k, m - k] = (-1) ** k / comb(m, k)
    return G


def irrep_symplectic_basis(n: int) -> np.ndarray:
    """Columns ``f_0..f_{n-1}, g_0..g_{n-1}`` in P-coordinates.

    ``f_i = sqrt(C(m,i)) P_i`` and ``g_i = (-1)^i sqrt(C(m,i)) P_{m-i}``: a
    standard symplectic basis in which ``J P_k = (-1)^k P_{m-k}`` becomes
    ``[[0, -I], [I, 0]]``.
    """
    m = 2 * n - 1
    S = np.zeros((m + 1, 2 * n))
    for i in range(n):
        s = np.sqrt(comb(m, i))
        S[i, i] = s
        S[m - i, n + i] = (-1) ** i * s
    return S


def sl2_irrep(n: int) -> LieHom:
    """The 2n-dimensional irreducible representation sl(2,R) -> sp(2n,R)."""
    if n < 1:
        raise ValidationError("n must be >= 1")
    src = sl2()
    tgt = build_algebra("sp", n, "sp-real")
    S = irrep_symplectic_basis(n)
    Sinv = np.linalg.inv(S)
    imgs = tuple(Sinv @ _irrep_matrix(B, n) @ S for B in src.basis)
    return LieHom(src, tgt, imgs)


def su_to_sp_embedding(n: int) -> LieHom:
    """su(n,n) -> sp(4n,R): [[P,Q],[Q*,R]] -> [[A,B],[conj B, conj A]] with
    ``A = diag(conj R, P)`` and ``B = [[0, Q^T], [Q, 0]]``."""
    src = build_algebra("su", (n, n))
    tgt = build_algebra("sp", 2 * n)

    def fn(X):
        P, Q, R = X[:n, :n], X[:n, n:], X[n:, n:]
        O = np.zeros((n, n))
        A = _blocks(R.conj(), O, O, P)
        B = _blocks(O, Q.T, Q, O)
        return _blocks(A, B, B.conj(), A.conj())

    return hom_from_function(src, tgt, fn)


def polydisc_factor_hom(n: int, factor: int = 0) -> LieHom:
    """sl(2,R) into one disc factor of sp(2n,R) (real realization)."""
    if not 0 <= factor < n:
        raise ValidationError("factor out of range")
    src = sl2()
    tgt = build_algebra("sp", n, "sp-real")

    def fn(X):
        M = np.zeros((2 * n, 2 * n), dtype=complex)
        idx = [factor, n + factor]
        M[np.ix_(idx, idx)] = X
        return M

    return hom_from_function(src, tgt, fn)


# ---------------------------------------------------------------------------
# restricted roots


@dataclass(frozen=True)
class RootData:
    r: int
    a: int
    b: int

    def __post_init__(self):
        if self.r < 1 or self.a < 0 or self.b < 0:
            raise ValidationError("invalid root data")

    @property
    def tube_type(self) -> bool:
        return self.b == 0


def root_data(family: str, params: Any) -> RootData:
    """Closed-form ``(r, a, b)`` of each classical family."""
    alg_family = {"sp2n": "sp", "su_pq": "su", "sostar2n": "sostar"}.get(family.lower(), family.lower())
    if isinstance(params, dict):
        params = (params["p"], params["q"]) if alg_family == "su" else (params["n"],)
    elif isinstance(params, (int, np.integer)):
        params = (int(params),)
    params = tuple(int(x) for x in params)
    if alg_family == "su":
        p, q = params
        if not 1 <= p <= q:
            raise ValidationError("su(p,q) needs 1 <= p <= q")
        return RootData(p, 2, q - p)
    (n,) = params
    if alg_family == "sp" and n >= 1:
        return RootData(n, 1, 0)
    if alg_family == "sostar" and n >= 2:
        return RootData(n // 2, 4, 0 if n % 2 == 0 else 2)
    if alg_family == "so2n" and n >= 2:
        return RootData(2, n - 2, 0)
    raise ValidationError(f"unsupported family/params {family!r} {params!r}")


@dataclass(frozen=True)
class Multiplicities:
    """Root-space dimensions of ``ad(H)`` decoded in the frame coordinates."""

    rank: int
    table: dict
    a: int | None
    b: int

    def as_root_data(self, fallback_a: int | None = None) -> RootData:
        a = self.a if self.a is not None else (fallback_a if fallback_a is not None else 0)
        return RootData(self.rank, a, self.b)


def _decode_balanced(v: int, digits: int, base: int = 5) -> tuple[int, ...]:
    out = []
    for _ in range(digits):
        d = ((v + base // 2) % base) - base // 2
        out.append(d)
        v = (v - d) // base
    if v != 0:
        raise ValidationError("eigenvalue is not a restricted root of the frame")
    return tuple(out)


def restricted_multiplicities(alg: LieAlgebraData, gap: float = 1e-6) -> Multiplicities:
    """Diagonalize ``ad(H)``, ``H = sum_j 5^j X_j``, and count root multiplicities.

    The roots take values ``sum_j n_j 5^j`` with ``n_j in {-2..2}``, so each
    eigenvalue decodes uniquely to a coefficient vector in balanced base 5.
    """
    r = alg.rank
    H = sum((5.0**j) * X for j, X in enumerate(alg.frame))
    Binv, _ = _basis_solver(alg)
    ad = np.array([Binv @ _flat(_br(H, Bi)) for Bi in alg.basis]).T
    ev = np.linalg.eigvals(ad)
    if np.max(np.abs(ev.imag), initial=0.0) > gap * max(1.0, np.max(np.abs(ev))):
        raise ValidationError("ad(H) has non-real eigenvalues")
    table: dict[tuple, int] = {}
    for mu in ev.real:
        k = int(round(mu))
        if abs(mu - k) > gap * max(1.0, abs(mu)):
            raise ValidationError(f"ad(H) eigenvalue {mu} is not an integer combination")
        key = _decode_balanced(k, r)
        table[key] = table.get(key, 0) + 1
    unit = lambda i: tuple(1 if j == i else 0 for j in range(r))
    b2 = table.get(unit(0), 0)
    a = None
    if r >= 2:
        a = table.get(tuple(1 if j < 2 else 0 for j in range(r)), 0)
    return Multiplicities(r, table, a, b2 // 2)


def bruhat_codim(rd: RootData, k: int) -> int:
    """``(2b + 1) k + k (k - 1) a / 2``."""
    if not 0 <= k <= rd.r:
        raise ValidationError(f"k must be in [0, {rd.r}]")
    return (2 * rd.b + 1) * k + k * (k - 1) * rd.a // 2


def shilov_dim(rd: RootData) -> int:
    return bruhat_codim(rd, rd.r)


def triples_connected(rd: RootData) -> bool:
    """Pairwise transverse Shilov triples form a connected set iff ``b >= 1``."""
    return rd.b >= 1
