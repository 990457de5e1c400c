"""Toledo invariant of surface group representations.

The fundamental class of a genus-g surface is represented (up to the sign
``CYCLE_ORIENTATION``) by the fan of triangles ``(e, w_j, w_{j+1})`` over the
prefixes ``w_j`` of the relator word ``a1 b1 a1^-1 b1^-1 ... ag bg ag^-1 bg^-1``.  Evaluating the Kähler cocycle
on the orbit of a base point gives the Toledo invariant; for Sp(2n) it is
cross-checked against the winding of ``det(U)^2`` along a lift of the relator,
``U`` the unitary block of the polar decomposition.  The square is needed
because ``diag(u, conj(u))`` acts on the disc by ``u^2``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any

import numpy as np
from scipy.linalg import expm

from .bergmann import beta_value
from .domains import DomainSpec, GroupElement, act, check_group, group_inverse, validate_point
from .lie import build_algebra
from .numeric import PreconditionError, Rng, ValidationError, matrix_from_json, matrix_to_json, polar

RELATOR_TOL = 1e-6
# the fan chain (e, w_j, w_{j+1}) represents minus the fundamental class for
# the orientation in which uniformizations have positive Toledo invariant
CYCLE_ORIENTATION = -1.0
MAXIMAL_TOL = 1e-3
MILNOR_WOOD_SLACK = 1e-4


def _comm(a: np.ndarray, b: np.ndarray, ainv: np.ndarray, binv: np.ndarray) -> np.ndarray:
    return a @ b @ ainv @ binv


@dataclass(frozen=True)
class SurfaceGroupRep:
    """Images of the standard generators of the genus-g surface group."""

    genus: int
    spec: DomainSpec
    A: tuple = field(repr=False)
    B: tuple = field(repr=False)

    def __post_init__(self):
        if self.genus < 2:
            raise ValidationError("genus must be at least 2")
        if len(self.A) != self.genus or len(self.B) != self.genus:
            raise ValidationError("need exactly g images for each of the a_i and b_i")
        A = tuple(check_group(self.spec, M, tol=1e-8) for M in self.A)
        B = tuple(check_group(self.spec, M, tol=1e-8) for M in self.B)
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "B", B)
        res = self.relator_residual()
        if res > RELATOR_TOL:
            raise ValidationError(f"relator violated: |prod [A_i, B_i] - Id| = {res:.3g}")

    def letters(self) -> list[np.ndarray]:
        out = []
        for a, b in zip(self.A, self.B):
            ai, bi = group_inverse(self.spec, a), group_inverse(self.spec, b)
            out += [a, b, ai, bi]
        return out

    def relator(self) -> np.ndarray:
        R = np.eye(self.spec.group_size, dtype=complex)
        for M in self.letters():
            R = R @ M
        return R

    def relator_residual(self) -> float:
        return float(np.max(np.abs(self.relator() - np.eye(self.spec.group_size))))

    def conjugate(self, h: Any) -> "SurfaceGroupRep":
        g = h.g if isinstance(h, GroupElement) else check_group(self.spec, h)
        gi = group_inverse(self.spec, g)
        return SurfaceGroupRep(self.genus, self.spec, tuple(g @ a @ gi for a in self.A), tuple(g @ b @ gi for b in self.B))

    def to_json(self) -> dict:
        return {
            "genus": self.genus,
            "family": self.spec.family,
            "params": self.spec.params,
            "A": [matrix_to_json(a) for a in self.A],
            "B": [matrix_to_json(b) for b in self.B],
        }

    @classmethod
    def from_json(cls, obj: Any) -> "SurfaceGroupRep":
        if not isinstance(obj, dict):
            raise ValidationError("representation JSON must be an object")
        try:
            genus = int(obj["genus"])
            spec = DomainSpec.parse(obj["family"], obj["params"])
            A = tuple(matrix_from_json(m, f"A[{i}]") for i, m in enumerate(obj["A"]))
            B = tuple(matrix_from_json(m, f"B[{i}]") for i, m in enumerate(obj["B"]))
        except (KeyError, TypeError) as exc:
            raise ValidationError("representation JSON needs genus, family, params, A, B") from exc
        return cls(genus, spec, A, B)


@dataclass(frozen=True)
class FanTriangle:
    index: int
    vertices: tuple = field(repr=False)  # (e, w_j, w_{j+1})
    degenerate: bool


@dataclass(frozen=True)
class ToledoResult:
    value: float
    bound: float
    maximal: bool
    winding: int | None = None

    def __post_init__(self):
        if abs(self.value) > self.bound + MILNOR_WOOD_SLACK:
            raise PreconditionError(f"Toledo value {self.value} exceeds the bound {self.bound}")


def prefixes(rep: SurfaceGroupRep) -> list[np.ndarray]:
    """``w_0 = e, w_1, ..., w_{4g}`` for the relator word."""
    w = [np.eye(rep.spec.group_size, dtype=complex)]
    for M in rep.letters():
        w.append(w[-1] @ M)
    return w


def _same_element(a: np.ndarray, b: np.ndarray, tol: float = 1e-9) -> bool:
    return bool(np.max(np.abs(a - b)) <= tol * max(1.0, float(np.max(np.abs(a)))))


def fan_cycle(rep: SurfaceGroupRep) -> list[FanTriangle]:
    """Triangles ``(e, w_j, w_{j+1})`` for ``j = 1 .. 4g-1``."""
    w = prefixes(rep)
    e = w[0]
    out = []
    for j in range(1, 4 * rep.genus):
        tri = (e, w[j], w[j + 1])
        deg = _same_element(e, w[j]) or _same_element(e, w[j + 1]) or _same_element(w[j], w[j + 1])
        out.append(FanTriangle(j, tri, deg))
    return out


def toledo_bound(rep: SurfaceGroupRep) -> float:
    return 4.0 * math.pi * (rep.genus - 1) * rep.spec.rank


def toledo_value(rep: SurfaceGroupRep, basepoint: Any = None) -> float:
    spec = rep.spec
    if not spec.has_kernel:
        raise ValidationError(f"no Kähler cocycle available for {spec.label}")
    x0 = np.zeros(spec.shape, dtype=complex) if basepoint is None else validate_point(spec, basepoint)
    terms = []
    for tri in fan_cycle(rep):
        if tri.degenerate:
            terms.append(0.0)
            continue
        pts = [act(GroupElement(spec, g), x0) for g in tri.vertices]
        terms.append(beta_value(spec, *pts))
    return CYCLE_ORIENTATION * math.fsum(terms)


def toledo(rep: SurfaceGroupRep, basepoint: Any = None, winding: bool = False) -> ToledoResult:
    """Toledo invariant by the fan-cycle sum at ``basepoint`` (default 0)."""
    val = toledo_value(rep, basepoint)
    bound = toledo_bound(rep)
    w = toledo_winding(rep) if winding else None
    return ToledoResult(val, bound, abs(val - bound) < MAXIMAL_TOL, w)


def is_maximal(rep: SurfaceGroupRep) -> bool:
    return toledo(rep).maximal


def milnor_wood_check(rep: SurfaceGroupRep) -> bool:
    return abs(toledo_value(rep)) <= toledo_bound(rep) + MILNOR_WOOD_SLACK


# ---------------------------------------------------------------------------
# winding number


def _unitary_power(U: np.ndarray):
    w, V = np.linalg.eig(U)
    Vinv = np.linalg.inv(V)
    theta = np.angle(w)
    return lambda t: (V * np.exp(1j * t * theta)) @ Vinv


def _positive_power(P: np.ndarray):
    w, V = np.linalg.eigh(P)
    return lambda t: (V * np.exp(t * np.log(w))) @ V.conj().T


def _generator_path(spec: DomainSpec, g: np.ndarray):
    """``t -> U^t exp(t log P)`` from the identity to ``g``."""
    n = spec.n
    U, P = polar(g)
    U1 = _unitary_power(U[:n, :n])
    Pt = _positive_power(P)

    def path(t: float) -> np.ndarray:
        u = U1(t)
        K = np.zeros_like(g)
        K[:n, :n] = u
        K[n:, n:] = u.conj()
        return K @ Pt(t)

    return path


def _circle(spec: DomainSpec, M: np.ndarray) -> complex:
    U, _ = polar(M)
    d = np.linalg.det(U[: spec.n, : spec.n])
    return complex(d * d)


def toledo_winding(rep: SurfaceGroupRep, steps: int = 256, max_refine: int = 20) -> int:
    """Winding number of ``det(U)^2`` along the lifted relator loop.

    Each generator is joined to the identity by its polar path; inverse
    letters use the pointwise inverse path.  The loop is the concatenation
    ``w_{j-1} . path_j``.
    """
    spec = rep.spec
    if spec.family != "sp":
        raise ValidationError("toledo_winding is implemented for Sp(2n)")
    paths = []
    for a, b in zip(rep.A, rep.B):
        pa, pb = _generator_path(spec, a), _generator_path(spec, b)
        inv = lambda p: (lambda t: group_inverse(spec, p(t)))
        paths += [pa, pb, inv(pa), inv(pb)]
    w = prefixes(rep)
    total = 0.0
    for j, path in enumerate(paths):
        n_steps = steps
        for _ in range(max_refine):
            ts = np.linspace(0.0, 1.0, n_steps + 1)
            vals = np.array([_circle(spec, w[j] @ path(t)) for t in ts])
            d = np.angle(vals[1:] / vals[:-1])
            if np.max(np.abs(d)) < np.pi / 4:
                break
            n_steps *= 2
        else:
            raise PreconditionError("winding path could not be resolved")
        total += float(np.sum(d))
    # the loop closes up to the relator residual
    total += float(np.angle(_circle(spec, np.eye(spec.group_size)) / _circle(spec, w[-1])))
    wnd = total / (2 * math.pi)
    k = int(round(wnd))
    if abs(wnd - k) > 1e-3:
        raise PreconditionError(f"winding {wnd} is not close to an integer")
    return k


# ---------------------------------------------------------------------------
# fixtures and perturbations


def _su11_rotation(phi: float) -> np.ndarray:
    return np.diag([np.exp(0.5j * phi), np.exp(-0.5j * phi)])


def _su11_translation(m: complex) -> np.ndarray:
    return np.array([[1.0, m], [np.conj(m), 1.0]]) / np.sqrt(1 - abs(m) ** 2)


def _su11_half_turn(m: complex) -> np.ndarray:
    T = _su11_translation(m)
    return T @ np.diag([1j, -1j]) @ np.linalg.inv(T)


def octagon_generators() -> tuple[list[np.ndarray], list[np.ndarray]]:
    """Side pairings of the regular octagon with vertex angle pi/4, in SU(1,1).

    Side ``k`` has midpoint ``tanh(d/2) exp(i k pi/4)`` with
    ``cosh d = cot(pi/8)``; the pairing of sides ``j -> i`` is the half-turn
    about the midpoint of side ``i`` after the rotation by the angle between
    the sides.
    """
    d = np.arccosh(1.0 / np.tan(np.pi / 8))
    rho = np.tanh(d / 2)
    ang = [k * np.pi / 4 for k in range(8)]

    def pairing(i: int, j: int) -> np.ndarray:
        return _su11_half_turn(rho * np.exp(1j * ang[i])) @ _su11_rotation(ang[i] - ang[j])

    return [pairing(0, 2), pairing(4, 6)], [pairing(3, 1), pairing(7, 5)]


def fuchsian_genus2() -> SurfaceGroupRep:
    """Uniformization of a genus-2 surface into Sp(2,R) = SU(1,1)."""
    A, B = octagon_generators()
    return SurfaceGroupRep(2, DomainSpec.sp(1), tuple(A), tuple(B))


def diagonal_embedding(rep: SurfaceGroupRep, copies: int = 2) -> SurfaceGroupRep:
    """Compose an Sp(2) representation with the diagonal polydisc embedding into Sp(2k)."""
    if rep.spec.family != "sp" or rep.spec.n != 1:
        raise ValidationError("diagonal embedding expects an Sp(2,R) representation")
    spec = DomainSpec.sp(copies)

    def emb(g: np.ndarray) -> np.ndarray:
        a, b, c, d = g[0, 0], g[0, 1], g[1, 0], g[1, 1]
        I = np.eye(copies)
        return np.block([[a * I, b * I], [c * I, d * I]])

    return SurfaceGroupRep(rep.genus, spec, tuple(emb(a) for a in rep.A), tuple(emb(b) for b in rep.B))


def trivial_rep(spec: DomainSpec, genus: int = 2) -> SurfaceGroupRep:
    I = np.eye(spec.group_size, dtype=complex)
    return SurfaceGroupRep(genus, spec, (I,) * genus, (I,) * genus)


def fixture(name: str, target: str | None = None) -> SurfaceGroupRep:
    if name != "fuchsian-g2":
        raise ValidationError(f"unknown fixture {name!r}")
    rep = fuchsian_genus2()
    if target is None:
        return rep
    if target == "sp4-diagonal":
        return diagonal_embedding(rep, 2)
    raise ValidationError(f"unknown fixture target {target!r}")


def _expm_alg(spec: DomainSpec, X: np.ndarray) -> np.ndarray:
    return expm(X)


def perturb_rep(rep: SurfaceGroupRep, rng: Rng, scale: float = 0.01, tol: float = 1e-11, iters: int = 50) -> SurfaceGroupRep:
    """Random nearby representation that satisfies the relator exactly.

    All generators but the last pair are moved by ``exp`` of random algebra
    elements; the last pair ``(A_g, B_g)`` is then corrected by a least-norm
    Gauss-Newton solve of the relator equation.
    """
    spec = rep.spec
    alg = build_algebra(spec.family, tuple(spec.params.values()))
    basis = alg.basis
    dim = len(basis)

    def rand_elem():
        return _expm_alg(spec, scale * sum(c * B for c, B in zip(rng.normal(dim), basis)))

    g = rep.genus
    A = [a @ rand_elem() for a in rep.A]
    B = [b @ rand_elem() for b in rep.B]

    def residual(v: np.ndarray) -> np.ndarray:
        X = sum(c * Bm for c, Bm in zip(v[:dim], basis))
        Y = sum(c * Bm for c, Bm in zip(v[dim:], basis))
        Ag, Bg = A[-1] @ _expm_alg(spec, X), B[-1] @ _expm_alg(spec, Y)
        R = np.eye(spec.group_size, dtype=complex)
        for a, b in zip(A[:-1] + [Ag], B[:-1] + [Bg]):
            R = R @ _comm(a, b, group_inverse(spec, a), group_inverse(spec, b))
        D = R - np.eye(spec.group_size)
        return np.concatenate([D.real.ravel(), D.imag.ravel()])

    v = np.zeros(2 * dim)
    r = residual(v)
    for _ in range(iters):
        err = float(np.linalg.norm(r))
        if np.max(np.abs(r)) < tol:
            break
        h = 1e-7
        J = np.empty((r.size, v.size))
        for k in range(v.size):
            e = np.zeros_like(v)
            e[k] = h
            J[:, k] = (residual(v + e) - residual(v - e)) / (2 * h)
        step = np.linalg.lstsq(J, r, rcond=1e-6)[0]
        # backtracking keeps the iteration inside the basin
        t = 1.0
        while t > 1e-4:
            r_new = residual(v - t * step)
            if np.linalg.norm(r_new) < err:
                break
            t *= 0.5
        else:
            raise PreconditionError("relator solve stalled")
        v = v - t * step
        r = r_new
    else:
        raise PreconditionError("relator solve did not converge")
    X = sum(c * Bm for c, Bm in zip(v[:dim], basis))
    Y = sum(c * Bm for c, Bm in zip(v[dim:], basis))
    A[-1] = A[-1] @ _expm_alg(spec, X)
    B[-1] = B[-1] @ _expm_alg(spec, Y)
    return SurfaceGroupRep(g, spec, tuple(A), tuple(B))
