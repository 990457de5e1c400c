import numpy as np
import pytest

from hermitia.bergmann import beta_value, sample_transverse_triple
from hermitia.domains import (
    DomainSpec,
    IsotropicSubspace,
    base_point,
    random_group_element,
    sample_shilov,
    subspace_of_shilov,
    symplectic_form,
)
from hermitia.maslov import (
    graph_form,
    maslov_extended,
    maslov_jordan,
    maslov_transverse,
    symplectic_triple_form,
)
from hermitia.numeric import NonTransverseError, Rng, ValidationError

TUBE = [DomainSpec.sp(1), DomainSpec.sp(2), DomainSpec.sp(3), DomainSpec.su(1, 1), DomainSpec.su(2, 2), DomainSpec.su(3, 3)]


def _lag(top, bottom):
    return IsotropicSubspace(np.vstack([top, bottom]), symplectic_form(top.shape[1]), True)


def _sp4():
    I, O = np.eye(2), np.zeros((2, 2))
    return _lag(I, O), _lag(O, I)


def _graph(S):
    return _lag(np.eye(len(S)), np.asarray(S, dtype=float))


def test_graph_form_of_plus_space_is_zero():
    Wp, Wm = _sp4()
    assert np.allclose(graph_form(Wm, Wp, Wp), 0)


def test_graph_form_of_symmetric_graph():
    Wp, Wm = _sp4()
    S = np.array([[2.0, 1.0], [1.0, -3.0]])
    assert np.allclose(graph_form(Wm, Wp, _graph(S)), S)


def test_graph_form_is_hermitian_for_complex_model():
    spec = DomainSpec.su(2, 2)
    rng = Rng(1)
    for _ in range(10):
        Wm, Wp, W = (subspace_of_shilov(spec, sample_shilov(spec, rng)) for _ in range(3))
        A = graph_form(Wm, Wp, W)
        assert np.allclose(A, A.conj().T)


@pytest.mark.parametrize("S,value,deg", [(np.eye(2), 2, 0), (np.diag([1.0, -1.0]), 0, 0), (np.diag([1.0, 0.0]), 1, 1)])
def test_transverse_examples(S, value, deg):
    Wp, Wm = _sp4()
    m = maslov_transverse(Wp, _graph(S), Wm)
    assert m.value == value and m.degenerate_dims == deg and int(m) == value


def test_transverse_requires_complement():
    Wp, Wm = _sp4()
    with pytest.raises(NonTransverseError):
        maslov_transverse(Wp, Wm, Wm)


def test_mixed_ambient_rejected():
    Wp, Wm = _sp4()
    other = subspace_of_shilov(DomainSpec.sp(3), base_point(DomainSpec.sp(3)))
    with pytest.raises(ValidationError):
        maslov_transverse(Wp, other, Wm)


@pytest.mark.parametrize("spec", TUBE, ids=lambda s: s.label)
def test_jordan_examples(spec):
    o = base_point(spec)
    assert maslov_jordan(spec, o, 1j * o, -o).value == spec.rank
    assert maslov_jordan(spec, o, o, -o).value == 0
    assert maslov_jordan(spec, o, o, -o).degenerate_dims == spec.rank
    with pytest.raises(NonTransverseError):
        maslov_jordan(spec, o, -o, o)


@pytest.mark.parametrize("spec", TUBE, ids=lambda s: s.label)
def test_models_agree_with_cocycle(spec):
    rng = Rng(2)
    for _ in range(40):
        x, y, z = sample_transverse_triple(spec, rng, min_gap=1e-4)
        tj = maslov_jordan(spec, x, y, z).value
        te = maslov_extended(spec, x, y, z).value
        L = [subspace_of_shilov(spec, p) for p in (x, y, z)]
        tt = maslov_transverse(L[0], L[1], L[2]).value
        ts = symplectic_triple_form(*L).value
        assert tj == te == tt == ts
        assert abs(np.pi * tj - beta_value(spec, x, y, z)) < 1e-8
        assert abs(tj) <= spec.rank and (tj - spec.rank) % 2 == 0


@pytest.mark.parametrize("spec", TUBE, ids=lambda s: s.label)
def test_extended_symmetries(spec):
    rng = Rng(3)
    for trial in range(30):
        x, y, z = (sample_shilov(spec, rng) for _ in range(3))
        if trial % 3 == 0:
            y = x
        t = maslov_extended(spec, x, y, z).value
        assert maslov_extended(spec, x, y, z, seed=trial + 1).value == t
        assert maslov_extended(spec, y, x, z).value == -t
        assert maslov_extended(spec, y, z, x).value == t
        g = random_group_element(spec, rng)
        assert maslov_extended(spec, g(x), g(y), g(z)).value == t


def test_extended_repeated_point():
    spec = DomainSpec.sp(2)
    rng = Rng(4)
    for _ in range(10):
        x, y = sample_shilov(spec, rng), sample_shilov(spec, rng)
        m = maslov_extended(spec, x, x, y)
        assert m.value == 0 and m.degenerate_dims == 2


def test_extended_explicit_auxiliary():
    spec = DomainSpec.sp(2)
    o = base_point(spec)
    a = maslov_extended(spec, o, 1j * o, -o, aux=-1j * o).value
    assert a == maslov_extended(spec, o, 1j * o, -o).value == 2


def test_extended_cocycle_identity():
    rng = Rng(5)
    for spec in (DomainSpec.sp(2), DomainSpec.su(2, 2)):
        for _ in range(20):
            p = [sample_shilov(spec, rng) for _ in range(4)]
            t = lambda i, j, k: maslov_extended(spec, p[i], p[j], p[k]).value
            assert t(1, 2, 3) - t(0, 2, 3) + t(0, 1, 3) - t(0, 1, 2) == 0


def test_triple_form_examples():
    Wp, Wm = _sp4()
    assert symplectic_triple_form(Wp, Wp, Wp).value == 0
    L1 = _lag(np.eye(1), np.zeros((1, 1)))
    L2 = _lag(np.eye(1), np.eye(1))
    L3 = _lag(np.zeros((1, 1)), np.eye(1))
    assert abs(symplectic_triple_form(L1, L2, L3).value) == 1


def test_non_tube_rejected():
    for spec in (DomainSpec.su(1, 2), DomainSpec.so2n(3)):
        with pytest.raises(ValidationError):
            maslov_jordan(spec, None, None, None)
