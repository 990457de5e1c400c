import numpy as np
import pytest

from hermitia.domains import DomainSpec, base_point, sample_interior, sample_shilov, transverse
from hermitia.jordan import (
    JordanAlgebra,
    JordanElement,
    algebra_for,
    cayley_based,
    cayley_based_inverse,
    cayley_from_tube,
    cayley_to_tube,
    jdet,
    jordan_product,
    jtrace,
    spectral_abs_norm,
    spectral_decompose,
    spectral_plusminus,
)
from hermitia.numeric import NonTransverseError, Rng, SingularError, ValidationError

ALGEBRAS = [JordanAlgebra(k, n) for k in ("symr", "hermc") for n in (1, 2, 3, 6)]


def _random(alg, rng):
    if alg.kind == "symr":
        A = rng.normal((alg.n, alg.n))
        return alg.element(0.5 * (A + A.T))
    return alg.element(rng.hermitian(alg.n))


def test_element_validation():
    with pytest.raises(ValidationError):
        JordanElement(JordanAlgebra("symr", 2), [[1, 2], [0, 1]])
    with pytest.raises(ValidationError):
        JordanElement(JordanAlgebra("symr", 2), [[1, 1j], [-1j, 1]])
    with pytest.raises(ValidationError):
        JordanAlgebra("octonion", 3)
    with pytest.raises(ValidationError):
        jordan_product(JordanAlgebra("symr", 2).unit, JordanAlgebra("hermc", 2).unit)


@pytest.mark.parametrize("alg", ALGEBRAS, ids=lambda a: f"{a.kind}{a.n}")
def test_product_axioms(alg):
    rng = Rng(1)
    e = alg.unit
    for _ in range(20):
        x, y = _random(alg, rng), _random(alg, rng)
        assert np.allclose(jordan_product(x, e).x, x.x)
        assert np.allclose(jordan_product(x, y).x, jordan_product(y, x).x)
        x2 = jordan_product(x, x)
        lhs = jordan_product(x, jordan_product(x2, y)).x
        rhs = jordan_product(x2, jordan_product(x, y)).x
        assert np.max(np.abs(lhs - rhs)) < 1e-9 * max(1.0, np.max(np.abs(lhs)))


def test_diagonal_product():
    alg = JordanAlgebra("symr", 3)
    x, y = alg.element(np.diag([1.0, 2, 3])), alg.element(np.diag([4.0, 5, 6]))
    assert np.allclose(jordan_product(x, y).x, np.diag([4.0, 10, 18]))


@pytest.mark.parametrize("alg", ALGEBRAS, ids=lambda a: f"{a.kind}{a.n}")
def test_spectral_decomposition(alg):
    rng = Rng(2)
    for _ in range(30):
        x = _random(alg, rng)
        lam, fr = spectral_decompose(x)
        assert fr.check(1e-9) < 1e-9
        assert np.max(np.abs(sum(l * c for l, c in zip(lam, fr.idempotents)) - x.x)) < 1e-9
        assert np.allclose(np.sort(lam), np.linalg.eigvalsh(x.x), atol=1e-10)
        assert abs(jdet(x) - np.linalg.det(x.x).real) < 1e-9 * max(1.0, abs(np.linalg.det(x.x)))
        assert abs(jtrace(x) - np.trace(x.x).real) < 1e-10
        if alg.kind == "symr":
            assert all(np.isrealobj(c) for c in fr.idempotents)


def test_spectral_examples():
    alg = JordanAlgebra("symr", 2)
    lam, fr = spectral_decompose(alg.unit)
    assert np.allclose(lam, [1, 1]) and fr.check() < 1e-12
    lam, fr = spectral_decompose(alg.element(np.diag([3.0, -1.0])))
    assert np.allclose(sorted(lam), [-1, 3])
    c = {round(l): ci for l, ci in zip(lam, fr.idempotents)}
    assert np.allclose(c[3], np.diag([1, 0])) and np.allclose(c[-1], np.diag([0, 1]))
    x = alg.element(np.diag([2.0, -3.0]))
    assert jdet(x) == pytest.approx(-6) and jtrace(x) == pytest.approx(-1)
    assert spectral_plusminus(x) == (1, 1, 0)
    assert spectral_abs_norm(x) == pytest.approx(5)
    assert jdet(alg.unit) == pytest.approx(1) and jtrace(JordanAlgebra("hermc", 4).unit) == pytest.approx(4)


def test_degenerate_spectrum_frame():
    alg = JordanAlgebra("symr", 4)
    O = Rng(3).orthogonal(4)
    x = alg.element(O @ np.diag([2.0, 2.0, 2.0, -1.0]) @ O.T)
    lam, fr = spectral_decompose(x)
    assert fr.check(1e-9) < 1e-9


def test_algebra_for_families():
    assert algebra_for(DomainSpec.sp(3)) == JordanAlgebra("symr", 3)
    assert algebra_for(DomainSpec.su(2, 2)) == JordanAlgebra("hermc", 2)
    with pytest.raises(ValidationError):
        algebra_for(DomainSpec.su(1, 2))


TUBE = [DomainSpec.sp(1), DomainSpec.sp(3), DomainSpec.su(1, 1), DomainSpec.su(3, 3)]


@pytest.mark.parametrize("spec", TUBE, ids=lambda s: s.label)
def test_cayley_examples(spec):
    n = spec.rank
    I = np.eye(n)
    assert np.allclose(cayley_to_tube(spec, np.zeros((n, n))), 1j * I)
    assert np.allclose(cayley_to_tube(spec, I), I)
    with pytest.raises(SingularError, match="non-transverse to Cayley base point"):
        cayley_to_tube(spec, 1j * I)


def _im(spec, Y):
    return Y.imag if spec.family == "sp" else (Y - Y.conj().T) / 2j


@pytest.mark.parametrize("spec", TUBE, ids=lambda s: s.label)
def test_cayley_maps_interior_into_tube(spec):
    rng = Rng(4)
    for _ in range(50):
        Z = sample_interior(spec, rng)
        Y = cayley_to_tube(spec, Z)
        assert np.min(np.linalg.eigvalsh(_im(spec, Y))) > 0
        if spec.family == "sp":
            assert np.allclose(Y, Y.T)
        assert np.allclose(cayley_from_tube(spec, Y), Z)


@pytest.mark.parametrize("spec", TUBE, ids=lambda s: s.label)
def test_cayley_maps_shilov_to_real_points(spec):
    rng = Rng(5)
    for _ in range(30):
        x = sample_shilov(spec, rng)
        Y = cayley_to_tube(spec, x)
        assert np.allclose(Y, Y.conj().T, atol=1e-9)
        if spec.family == "sp":
            assert np.max(np.abs(Y.imag)) < 1e-9


@pytest.mark.parametrize("spec", TUBE, ids=lambda s: s.label)
def test_cayley_transversality_criterion(spec):
    rng = Rng(6)
    for trial in range(40):
        x = sample_shilov(spec, rng)
        y = x if trial % 4 == 0 else sample_shilov(spec, rng)
        d = np.linalg.det(cayley_to_tube(spec, y) - cayley_to_tube(spec, x))
        assert (abs(d) > 1e-9) == transverse(spec, x, y)


@pytest.mark.parametrize("spec", TUBE, ids=lambda s: s.label)
def test_cayley_based(spec):
    rng = Rng(7)
    o = base_point(spec)
    Y = cayley_based(spec, -o, o)
    assert np.all(np.isfinite(Y)) and np.allclose(Y, Y.conj().T)
    with pytest.raises(NonTransverseError):
        cayley_based(spec, o, o)
    base = sample_shilov(spec, rng)
    for _ in range(10):
        x = sample_shilov(spec, rng)
        Y = cayley_based(spec, base, x)
        assert np.allclose(Y, Y.conj().T, atol=1e-8)
        assert np.allclose(cayley_based_inverse(spec, base, Y), x, atol=1e-8)
