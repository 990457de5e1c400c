"""Dense matrix substrate shared by every other module.

Hermitian eigensolving (cyclic Jacobi), signatures, polar decomposition,
principal-branch log-determinants, seeded sampling and the matrix JSON
encoding used by the command line.
"""

from __future__ import annotations

import os
from typing import Any, Sequence

import numpy as np

__all__ = [
    "HermitiaError",
    "ValidationError",
    "PreconditionError",
    "NonTransverseError",
    "SingularError",
    "STRUCT_TOL",
    "RESID_TOL",
    "BOUNDARY_TOL",
    "structural_tol",
    "as_matrix",
    "is_hermitian",
    "herm_eigen",
    "signature",
    "polar",
    "log_det_right_half",
    "Rng",
    "matrix_to_json",
    "matrix_from_json",
]


class HermitiaError(Exception):
    """Base class for all errors raised by the package."""

    code = "error"


class ValidationError(HermitiaError, ValueError):
    """Malformed input: wrong shape, wrong symmetry, bad JSON."""

    code = "validation"


class PreconditionError(HermitiaError):
    """Well-formed input that violates a mathematical precondition."""

    code = "precondition"


class NonTransverseError(PreconditionError):
    code = "non_transverse"


class SingularError(PreconditionError):
    code = "singular"


def structural_tol() -> float:
    """Structural tolerance, overridable through ``HERMITIA_TOL``."""
    raw = os.environ.get("HERMITIA_TOL")
    if raw is None:
        return 1e-9
    try:
        val = float(raw)
    except ValueError as exc:
        raise ValidationError(f"HERMITIA_TOL is not a number: {raw!r}") from exc
    if not np.isfinite(val) or val <= 0:
        raise ValidationError(f"HERMITIA_TOL must be positive, got {raw!r}")
    return val


STRUCT_TOL = structural_tol()
RESID_TOL = 1e-10
BOUNDARY_TOL = 1e-7


def as_matrix(M: Any, name: str = "matrix") -> np.ndarray:
    """Return ``M`` as a finite complex 2-d array, or raise ValidationError."""
    try:
        A = np.array(M, dtype=complex)
    except (TypeError, ValueError) as exc:
        raise ValidationError(f"{name}: cannot convert to a complex matrix") from exc
    if A.ndim == 1:
        A = A.reshape(-1, 1)
    if A.ndim != 2:
        raise ValidationError(f"{name}: expected a 2-d matrix, got ndim={A.ndim}")
    if not np.all(np.isfinite(A)):
        raise ValidationError(f"{name}: entries must be finite")
    return A


def is_hermitian(M: np.ndarray, tol: float | None = None) -> bool:
    tol = STRUCT_TOL if tol is None else tol
    scale = max(1.0, float(np.max(np.abs(M))) if M.size else 1.0)
    return M.shape[0] == M.shape[1] and bool(np.max(np.abs(M - M.conj().T), initial=0.0) <= tol * scale)


def _check_hermitian(M: Any, tol: float | None) -> np.ndarray:
    A = as_matrix(M)
    if A.shape[0] != A.shape[1]:
        raise ValidationError(f"expected a square matrix, got shape {A.shape}")
    if not is_hermitian(A, tol):
        raise ValidationError("matrix is not Hermitian within tolerance")
    return 0.5 * (A + A.conj().T)


def _jacobi_rotation(app: float, aqq: float, apq: complex) -> np.ndarray:
    # unitary 2x2 block G with (G* [[app, apq], [conj(apq), aqq]] G) diagonal
    r = abs(apq)
    phase = apq / r
    zeta = (aqq - app) / (2.0 * r)
    t = (1.0 if zeta >= 0 else -1.0) / (abs(zeta) + np.sqrt(1.0 + zeta * zeta))
    c = 1.0 / np.sqrt(1.0 + t * t)
    s = t * c
    return np.array([[c, s], [-s * np.conj(phase), c * np.conj(phase)]], dtype=complex)


def herm_eigen(M: Any, tol: float | None = None, max_sweeps: int = 60) -> tuple[np.ndarray, np.ndarray]:
    """Eigen-decomposition of a Hermitian matrix by cyclic Jacobi sweeps.

    Parameters
    ----------
    M : array_like
        Square Hermitian matrix.
    tol : float, optional
        Symmetry tolerance for input validation (default: structural tolerance).
    max_sweeps : int
        Upper bound on full sweeps over the off-diagonal pairs.

    Returns
    -------
    w : ndarray
        Real eigenvalues in ascending order.
    V : ndarray
        Unitary matrix whose columns are the eigenvectors, ``M = V diag(w) V*``.
    """
    A = _check_hermitian(M, tol).copy()
    n = A.shape[0]
    V = np.eye(n, dtype=complex)
    scale = float(np.linalg.norm(A))
    if n > 1 and scale > 0:
        target = (np.finfo(float).eps * scale) ** 2
        offdiag = ~np.eye(n, dtype=bool)
        for _ in range(max_sweeps):
            off = float(np.sum(np.abs(A[offdiag]) ** 2))
            if off <= target:
                break
            for p in range(n - 1):
                for q in range(p + 1, n):
                    apq = A[p, q]
                    if abs(apq) <= 1e-3 * np.finfo(float).eps * scale:
                        continue
                    G = _jacobi_rotation(A[p, p].real, A[q, q].real, apq)
                    idx = [p, q]
                    A[:, idx] = A[:, idx] @ G
                    A[idx, :] = G.conj().T @ A[idx, :]
                    A[p, q] = A[q, p] = 0.0
                    A[p, p] = A[p, p].real
                    A[q, q] = A[q, q].real
                    V[:, idx] = V[:, idx] @ G
    w = np.real(np.diag(A)).copy()
    order = np.argsort(w, kind="stable")
    return w[order], V[:, order]


def signature(M: Any, tol: float = 1e-9, relative: bool = False) -> tuple[int, int, int]:
    """Counts of eigenvalues above ``tol``, below ``-tol`` and in between.

    With ``relative=True`` the threshold is ``tol * max(1, ||M||_2)``.
    """
    A = _check_hermitian(M, None)
    w, _ = herm_eigen(A)
    thr = tol
    if relative:
        thr = tol * max(1.0, float(np.max(np.abs(w), initial=0.0)))
    n_plus = int(np.sum(w > thr))
    n_minus = int(np.sum(w < -thr))
    return n_plus, n_minus, len(w) - n_plus - n_minus


def polar(M: Any, tol: float = 1e-12) -> tuple[np.ndarray, np.ndarray]:
    """Right polar decomposition ``M = U P`` with ``P = (M*M)^{1/2}``.

    Computed from the SVD, which keeps ``U`` unitary to machine precision
    even for badly conditioned inputs.
    """
    A = as_matrix(M)
    if A.shape[0] != A.shape[1]:
        raise ValidationError("polar: expected a square matrix")
    W, s, Vh = np.linalg.svd(A)
    if s.size and s[-1] <= tol * max(1.0, s[0]):
        raise SingularError("polar: matrix is singular")
    U = W @ Vh
    P = (Vh.conj().T * s) @ Vh
    return U, 0.5 * (P + P.conj().T)


def log_det_right_half(M: Any, tol: float = 1e-9) -> complex:
    """Sum of principal logarithms of the eigenvalues of ``M``.

    All eigenvalues must lie in the closed right half-plane (up to ``tol``)
    and be nonzero; on that region the result is the continuous branch of
    ``log det M`` that vanishes at the identity.
    """
    A = as_matrix(M)
    if A.shape[0] != A.shape[1]:
        raise ValidationError("log_det_right_half: expected a square matrix")
    mu = np.linalg.eigvals(A)
    scale = max(1.0, float(np.max(np.abs(mu), initial=0.0)))
    if np.min(np.abs(mu), initial=np.inf) <= tol * scale:
        raise NonTransverseError("eigenvalue at zero: the pair is not transverse")
    if np.min(mu.real, initial=np.inf) < -tol * scale:
        raise PreconditionError("eigenvalue outside the closed right half-plane")
    return complex(np.sum(np.log(mu)))


class Rng:
    """Seeded random source; identical seeds give identical streams."""

    def __init__(self, seed: int = 0):
        self.seed = int(seed)
        self.gen = np.random.default_rng(self.seed)

    def normal(self, size: int | Sequence[int] | None = None) -> np.ndarray:
        return self.gen.standard_normal(size)

    def uniform(self, low: float = 0.0, high: float = 1.0, size=None):
        return self.gen.uniform(low, high, size)

    def complex_gaussian(self, shape: int | Sequence[int]) -> np.ndarray:
        return (self.gen.standard_normal(shape) + 1j * self.gen.standard_normal(shape)) / np.sqrt(2.0)

    def unitary(self, n: int) -> np.ndarray:
        """Haar-distributed unitary via QR of a Gaussian matrix."""
        Q, R = np.linalg.qr(self.complex_gaussian((n, n)))
        d = np.diag(R)
        return Q * (d / np.abs(d))

    def orthogonal(self, n: int) -> np.ndarray:
        Q, R = np.linalg.qr(self.gen.standard_normal((n, n)))
        return Q * np.sign(np.diag(R))

    def hermitian(self, n: int) -> np.ndarray:
        G = self.complex_gaussian((n, n))
        return 0.5 * (G + G.conj().T)

    def spawn(self, offset: int) -> "Rng":
        return Rng(self.seed * 1_000_003 + offset)


def matrix_to_json(M: Any) -> dict:
    A = as_matrix(M)
    return {
        "rows": int(A.shape[0]),
        "cols": int(A.shape[1]),
        "data": [[float(z.real), float(z.imag)] for z in A.ravel()],
    }


def matrix_from_json(obj: Any, name: str = "matrix") -> np.ndarray:
    """Decode ``{"rows", "cols", "data": [[re, im], ...]}`` (row-major)."""
    if not isinstance(obj, dict):
        raise ValidationError(f"{name}: expected an object with rows/cols/data")
    try:
        rows, cols, data = int(obj["rows"]), int(obj["cols"]), obj["data"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ValidationError(f"{name}: missing or invalid rows/cols/data") from exc
    if rows < 0 or cols < 0 or not isinstance(data, list) or len(data) != rows * cols:
        raise ValidationError(f"{name}: data length does not match rows*cols")
    out = np.empty(rows * cols, dtype=complex)
    for k, entry in enumerate(data):
        if isinstance(entry, (int, float)):
            out[k] = float(entry)
            continue
        if not isinstance(entry, (list, tuple)) or len(entry) != 2:
            raise ValidationError(f"{name}: entry {k} must be [re, im]")
        try:
            out[k] = complex(float(entry[0]), float(entry[1]))
        except (TypeError, ValueError) as exc:
            raise ValidationError(f"{name}: entry {k} is not numeric") from exc
    if not np.all(np.isfinite(out)):
        raise ValidationError(f"{name}: entries must be finite")
    return out.reshape(rows, cols)
