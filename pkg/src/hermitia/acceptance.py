"""Acceptance suite shared by ``hermitia selftest`` and the pytest run.

Each criterion returns a :class:`CriterionResult`; nothing here raises on a
numerical failure, so one bad criterion never hides the others.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import bergmann, domains, jordan, lie, maslov, toledo
from .domains import DomainSpec
from .numeric import Rng, herm_eigen

PI = math.pi


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    detail: str
    seconds: float = 0.0

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] criterion {self.number}: {self.title} ({self.detail}; {self.seconds:.1f}s)"


def kernel_families() -> list[DomainSpec]:
    out = [DomainSpec.su(p, q) for p in (1, 2) for q in (1, 2, 3) if p <= q]
    out += [DomainSpec.sp(n) for n in (1, 2, 3)]
    out += [DomainSpec.sostar(n) for n in (2, 3, 4, 5)]
    return out


def tube_matrix_families() -> list[DomainSpec]:
    return [DomainSpec.sp(n) for n in (1, 2, 3)] + [DomainSpec.su(n, n) for n in (1, 2, 3)]


def _transverse_tuple(spec: DomainSpec, rng: Rng, k: int, gap: float = 1e-6) -> list[np.ndarray]:
    while True:
        pts = [domains.sample_shilov(spec, rng) for _ in range(k)]
        if all(domains.transverse(spec, pts[i], pts[j], tol=gap) for i in range(k) for j in range(i + 1, k)):
            return pts


# ---------------------------------------------------------------------------
# 1. boundedness and extremality


def criterion_bounded(rng: Rng, samples: int = 1000) -> CriterionResult:
    worst_excess = -np.inf
    worst_flat = 0.0
    for spec in kernel_families():
        bound = PI * spec.rank
        for _ in range(samples):
            x, y, z = _transverse_tuple(spec, rng, 3)
            v = bergmann.beta_raw(spec, x, y, z)
            worst_excess = max(worst_excess, abs(v) - bound)
        o = domains.base_point(spec)
        flat = bergmann.beta_value(spec, o, 1j * o, -o)
        worst_flat = max(worst_flat, abs(abs(flat) - bound))
    ok = worst_excess <= 1e-9 and worst_flat <= 1e-6
    return CriterionResult(1, "boundedness and extremality", ok, f"max(|beta| - pi r) = {worst_excess:.2e}, flat deviation {worst_flat:.2e}")


# ---------------------------------------------------------------------------
# 2. tube-type quantization


def criterion_quantization(rng: Rng, samples: int = 1000) -> CriterionResult:
    worst = 0.0
    for spec in (DomainSpec.sp(2), DomainSpec.su(2, 2)):
        vals = bergmann.beta_value_set_probe(spec, samples, rng)
        worst = max(worst, max(bergmann.lattice_distance(spec, v) for v in vals))
    vals = bergmann.beta_value_set_probe(DomainSpec.su(1, 2), samples, rng)
    off = max(abs(v - PI * round(v / PI)) for v in vals)
    ok = worst <= 1e-6 and off > 0.3
    return CriterionResult(2, "tube-type quantization", ok, f"tube lattice distance {worst:.2e}, SU(1,2) max distance from pi Z {off:.3f}")


# ---------------------------------------------------------------------------
# 3. cocycle identity and invariance


def criterion_cocycle(rng: Rng, samples: int = 500) -> CriterionResult:
    worst_d = 0.0
    worst_g = 0.0
    for spec in kernel_families():
        b = lambda *p: bergmann.beta_value(spec, *p)
        for _ in range(samples):
            x0, x1, x2, x3 = _transverse_tuple(spec, rng, 4)
            d = b(x1, x2, x3) - b(x0, x2, x3) + b(x0, x1, x3) - b(x0, x1, x2)
            worst_d = max(worst_d, abs(d))
        for _ in range(samples):
            g = domains.random_group_element(spec, rng)
            x, y, z = _transverse_tuple(spec, rng, 3)
            worst_g = max(worst_g, abs(b(g(x), g(y), g(z)) - b(x, y, z)))
    ok = worst_d < 1e-8 and worst_g < 1e-8
    return CriterionResult(3, "cocycle identity and G-invariance", ok, f"max |d beta| = {worst_d:.2e}, max invariance residual {worst_g:.2e}")


# ---------------------------------------------------------------------------
# 4. Maslov consistency


def criterion_maslov(rng: Rng, samples: int = 1000) -> CriterionResult:
    fams = tube_matrix_families()
    mismatch = 0
    worst = 0.0
    total = 0
    for spec in fams:
        for _ in range(samples):
            x, y, z = _transverse_tuple(spec, rng, 3, gap=1e-4)
            L = [maslov.subspace_of_shilov(spec, p) for p in (x, y, z)]
            t1 = maslov.maslov_transverse(*L).value
            t2 = maslov.maslov_jordan(spec, x, y, z).value
            t3 = maslov.symplectic_triple_form(*L).value
            if not t1 == t2 == t3:
                mismatch += 1
            worst = max(worst, abs(PI * t1 - bergmann.beta_value(spec, x, y, z)))
            total += 1
    ok = mismatch == 0 and worst < 1e-6
    return CriterionResult(4, "Maslov consistency", ok, f"{total} triples, {mismatch} model mismatches, max |pi tau - beta| = {worst:.2e}")


# ---------------------------------------------------------------------------
# 5. strict extension


def _sp_point(U: np.ndarray, phases) -> np.ndarray:
    return domains.shilov_with_spectrum(DomainSpec.sp(U.shape[0]), U, phases)


def _degenerate_tuple(spec: DomainSpec, rng: Rng, k: int) -> list[np.ndarray]:
    """Shilov points sharing eigen-directions and some phases, so that
    several pairs are non-transverse."""
    n = spec.n
    U = rng.orthogonal(n)
    base = rng.uniform(-PI, PI, n)
    pts = []
    for _ in range(k):
        ph = rng.uniform(-PI, PI, n)
        keep = rng.uniform(0, 1, n) < 0.4
        ph[keep] = base[keep]
        pts.append(_sp_point(U, ph))
    return pts


def criterion_strict_extension(rng: Rng, samples: int = 500, constructed: int = 100) -> CriterionResult:
    fams = [DomainSpec.sp(n) for n in (1, 2, 3)] + [DomainSpec.su(n, n) for n in (1, 2)]
    bad_d = 0
    with_degenerate = 0
    for i in range(samples):
        spec = fams[i % len(fams)]
        if spec.family == "sp" and i % 2 == 0:
            pts = _degenerate_tuple(spec, rng, 4)
        else:
            pts = [domains.sample_shilov(spec, rng) for _ in range(4)]
            if i % 3 == 0:
                pts[2] = pts[0]
        if any(not domains.transverse(spec, pts[a], pts[b]) for a in range(4) for b in range(a + 1, 4)):
            with_degenerate += 1
        t = lambda a, b, c: maslov.maslov_extended(spec, pts[a], pts[b], pts[c]).value
        if t(1, 2, 3) - t(0, 2, 3) + t(0, 1, 3) - t(0, 1, 2) != 0:
            bad_d += 1

    # maximal index with a transverse third point forces transversality;
    # rank-deficient increments serve as controls that must stay non-maximal
    bad_max = 0
    maximal_cases = 0
    controls = 0
    for i in range(2 * constructed):
        spec = fams[i % len(fams)]
        r = spec.rank
        z = domains.sample_shilov(spec, rng)
        alg = jordan.algebra_for(spec)
        y1 = _random_jordan(alg, rng)
        k = r if i < constructed else int(rng.uniform(0, r))
        V = _random_basis(alg, rng)[:, :k]
        y2 = y1 + V @ np.diag(rng.uniform(0.2, 2.0, k)) @ V.conj().T
        x1 = jordan.cayley_based_inverse(spec, z, y1)
        x2 = jordan.cayley_based_inverse(spec, z, y2)
        tau = maslov.maslov_extended(spec, x1, x2, z).value
        if k == r:
            maximal_cases += tau == r
            bad_max += tau != r or not domains.transverse(spec, x1, x2)
        else:
            controls += 1
            bad_max += tau == r or domains.transverse(spec, x1, x2)
    ok = bad_d == 0 and bad_max == 0 and with_degenerate > 0 and maximal_cases == constructed
    return CriterionResult(
        5,
        "strict extension of the Maslov index",
        ok,
        f"{bad_d} nonzero d tau of {samples} ({with_degenerate} with non-transverse pairs); "
        f"{bad_max} violations over {maximal_cases} maximal cases and {controls} non-maximal controls",
    )


def _random_jordan(alg: jordan.JordanAlgebra, rng: Rng) -> np.ndarray:
    if alg.kind == "symr":
        A = rng.normal((alg.n, alg.n))
        return 0.5 * (A + A.T)
    return rng.hermitian(alg.n)


def _random_basis(alg: jordan.JordanAlgebra, rng: Rng) -> np.ndarray:
    return rng.orthogonal(alg.n) if alg.kind == "symr" else rng.unitary(alg.n)


# ---------------------------------------------------------------------------
# 6. tightness


def criterion_tightness() -> CriterionResult:
    worst_lam = 0.0
    worst_tr = 0.0
    for n in range(1, 7):
        h = lie.sl2_irrep(n)
        h.validate()
        verdict = lie.is_tight(h)
        worst_lam = max(worst_lam, abs(abs(verdict.lam) - 1.0))
        tr = np.trace(h.target.Z @ h(h.source.Z))
        worst_tr = max(worst_tr, abs(abs(tr) - n / 2))
    h2 = all(lie.is_H2(lie.su_to_sp_embedding(n)) for n in (1, 2, 3))
    ok = worst_lam < 1e-10 and worst_tr < 1e-10 and h2
    return CriterionResult(6, "tightness of the irreducible sl(2) representations", ok, f"max ||lambda| - 1| = {worst_lam:.1e}, max trace deviation {worst_tr:.1e}, su->sp embeddings (H2): {h2}")


# ---------------------------------------------------------------------------
# 7. root data


def _expected_multiplicities(family: str, params: tuple) -> tuple[int, int, int]:
    if family == "su":
        p, q = params
        return p, 2, q - p
    (n,) = params
    if family == "sp":
        return n, 1, 0
    if family == "sostar":
        return n // 2, 4, 0 if n % 2 == 0 else 2
    return 2, n - 2, 0


def root_data_cases(limit: int = 6) -> list[tuple[str, tuple]]:
    cases: list[tuple[str, tuple]] = [("su", (p, q)) for p in range(1, limit + 1) for q in range(p, limit + 1)]
    cases += [("sp", (n,)) for n in range(1, limit + 1)]
    cases += [("sostar", (n,)) for n in range(2, limit + 1)]
    cases += [("so2n", (n,)) for n in range(2, limit + 1)]
    return cases


def criterion_root_data(limit: int = 6) -> CriterionResult:
    bad = []
    for fam, params in root_data_cases(limit):
        r, a, b = _expected_multiplicities(fam, params)
        m = lie.restricted_multiplicities(lie.build_algebra(fam, params))
        a_ok = m.a == a if r >= 2 else m.a is None
        if (m.rank, m.b) != (r, b) or not a_ok:
            bad.append(f"{fam}{params}")
        rd = lie.root_data(fam, params)
        if (rd.r, rd.b) != (r, b) or (r >= 2 and rd.a != a):
            bad.append(f"{fam}{params} closed form")
        c1 = lie.bruhat_codim(rd, 1)
        if (rd.tube_type and c1 != 1) or (not rd.tube_type and c1 < 3):
            bad.append(f"{fam}{params} codim")
        if fam == "su":
            p, q = params
            if lie.shilov_dim(rd) != 2 * p * q - p * p:
                bad.append(f"{fam}{params} shilov_dim")
    ok = not bad
    return CriterionResult(7, "restricted root data", ok, f"{len(root_data_cases(limit))} algebras" + ("" if ok else f", failures: {bad}"))


# ---------------------------------------------------------------------------
# 8. Toledo invariant


def criterion_toledo(rng: Rng, perturbations: int = 50, basepoints: int = 20) -> CriterionResult:
    notes = []
    ok = True
    triv = toledo.toledo(toledo.trivial_rep(DomainSpec.sp(1)))
    if triv.value != 0.0 or triv.maximal:
        ok = False
        notes.append(f"trivial rep gave {triv.value}")
    fuchs = toledo.fuchsian_genus2()
    diag = toledo.fixture("fuchsian-g2", "sp4-diagonal")
    for rep, expected, wnd in ((fuchs, 4 * PI, 2), (diag, 8 * PI, 4)):
        res = toledo.toledo(rep, winding=True)
        if abs(res.value - expected) > 1e-4 or res.winding != wnd or not res.maximal:
            ok = False
            notes.append(f"{rep.spec.label}: {res}")
        if abs(res.value - 2 * PI * res.winding) > 1e-3:
            ok = False
            notes.append(f"{rep.spec.label}: toledo != 2 pi winding")
    # Milnor-Wood on relator-preserving perturbations
    mw_fail = 0
    done = 0
    attempts = 0
    while done < perturbations and attempts < 4 * perturbations:
        rep = fuchs if attempts % 2 == 0 else diag
        attempts += 1
        try:
            p = toledo.perturb_rep(rep, rng)
        except Exception:
            continue
        done += 1
        if not toledo.milnor_wood_check(p):
            mw_fail += 1
    if done < perturbations or mw_fail:
        ok = False
    # basepoint and conjugation invariance
    worst_bp = 0.0
    worst_conj = 0.0
    for rep in (fuchs, diag):
        ref = toledo.toledo_value(rep)
        for _ in range(basepoints):
            x = domains.sample_interior(rep.spec, rng, spread=0.8)
            worst_bp = max(worst_bp, abs(toledo.toledo_value(rep, x) - ref))
        for _ in range(5):
            g = domains.random_group_element(rep.spec, rng)
            c = rep.conjugate(g)
            worst_conj = max(worst_conj, abs(toledo.toledo_value(c) - ref))
            if toledo.is_maximal(c) != toledo.is_maximal(rep):
                ok = False
    ok = ok and worst_bp < 1e-6 and worst_conj < 1e-6
    detail = f"{done} perturbations, {mw_fail} Milnor-Wood violations; basepoint drift {worst_bp:.1e}, conjugation drift {worst_conj:.1e}"
    if notes:
        detail += "; " + "; ".join(notes)
    return CriterionResult(8, "Toledo invariant and maximality", ok, detail)


# ---------------------------------------------------------------------------
# 9. Jordan calculus and Cayley transform


def _im_part(spec: DomainSpec, Y: np.ndarray) -> np.ndarray:
    if spec.family == "sp":
        return Y.imag
    return (Y - Y.conj().T) / 2j


def _shared_spectrum_pair(spec: DomainSpec, rng: Rng) -> tuple[np.ndarray, np.ndarray]:
    """Non-transverse Shilov pair: same eigenbasis, one shared phase."""
    n = spec.rank
    ph1 = rng.uniform(-PI, PI, n)
    ph2 = rng.uniform(-PI, PI, n)
    ph2[0] = ph1[0]
    if spec.family == "sp":
        U = rng.orthogonal(n)
        return _sp_point(U, ph1), _sp_point(U, ph2)
    V, W = rng.unitary(n), rng.unitary(n)
    return V @ np.diag(np.exp(1j * ph1)) @ W, V @ np.diag(np.exp(1j * ph2)) @ W


def criterion_jordan(rng: Rng, elements: int = 500, interior: int = 1000, pairs: int = 500) -> CriterionResult:
    worst = 0.0
    for i in range(elements):
        alg = jordan.JordanAlgebra("symr" if i % 2 else "hermc", 1 + (i // 2) % 6)
        x = alg.element(_random_jordan(alg, rng))
        lam, fr = jordan.spectral_decompose(x)
        worst = max(worst, fr.check(1e-9))
        recon = sum(l * c for l, c in zip(lam, fr.idempotents))
        worst = max(worst, float(np.max(np.abs(recon - x.x))))
        scale = max(1.0, float(np.max(np.abs(lam))) ** alg.n)
        worst = max(worst, abs(jordan.jdet(x) - np.linalg.det(x.x).real) / scale)
        worst = max(worst, abs(jordan.jtrace(x) - np.trace(x.x).real) / max(1.0, float(np.max(np.abs(lam)))))
    fams = tube_matrix_families()
    not_pd = 0
    for i in range(interior):
        spec = fams[i % len(fams)]
        Y = jordan.cayley_to_tube(spec, domains.sample_interior(spec, rng))
        w, _ = herm_eigen(_im_part(spec, Y))
        if w[0] <= 0:
            not_pd += 1
    mismatch = 0
    for i in range(pairs):
        spec = fams[i % len(fams)]
        if i % 2:
            x, y = _shared_spectrum_pair(spec, rng)
        else:
            x, y = _transverse_tuple(spec, rng, 2, gap=1e-3)
        Tx, Ty = jordan.cayley_to_tube(spec, x), jordan.cayley_to_tube(spec, y)
        s = np.linalg.svd(Ty - Tx, compute_uv=False)
        cayley_says = s[-1] > 1e-8 * max(1.0, s[0])
        if cayley_says != domains.transverse(spec, x, y, tol=1e-8):
            mismatch += 1
    ok = worst < 1e-9 and not_pd == 0 and mismatch == 0
    return CriterionResult(9, "Jordan calculus and Cayley transform", ok, f"max identity residual {worst:.1e}; {not_pd} non-positive imaginary parts; {mismatch} transversality mismatches")


# ---------------------------------------------------------------------------


def criteria(seed: int = 0) -> list[Callable[[], CriterionResult]]:
    base = Rng(seed)
    return [
        lambda: criterion_bounded(base.spawn(1)),
        lambda: criterion_quantization(base.spawn(2)),
        lambda: criterion_cocycle(base.spawn(3)),
        lambda: criterion_maslov(base.spawn(4)),
        lambda: criterion_strict_extension(base.spawn(5)),
        criterion_tightness,
        criterion_root_data,
        lambda: criterion_toledo(base.spawn(8)),
        lambda: criterion_jordan(base.spawn(9)),
    ]


def run_criterion(fn: Callable[[], CriterionResult], number: int) -> CriterionResult:
    t0 = time.perf_counter()
    try:
        res = fn()
    except Exception as exc:  # reported as a failure, not propagated
        res = CriterionResult(number, "raised", False, f"{type(exc).__name__}: {exc}")
    res.seconds = time.perf_counter() - t0
    return res


def run_all(seed: int = 0, report: Callable[[str], None] | None = None) -> list[CriterionResult]:
    out = []
    for k, fn in enumerate(criteria(seed), start=1):
        res = run_criterion(fn, k)
        if report is not None:
            report(res.line())
        out.append(res)
    return out
