import json
import math

import numpy as np
import pytest

from hermitia.domains import DomainSpec, random_group_element, sample_interior
from hermitia.numeric import PreconditionError, Rng, ValidationError
from hermitia.toledo import (
    CYCLE_ORIENTATION,
    SurfaceGroupRep,
    ToledoResult,
    diagonal_embedding,
    fan_cycle,
    fixture,
    fuchsian_genus2,
    is_maximal,
    milnor_wood_check,
    perturb_rep,
    prefixes,
    toledo,
    toledo_bound,
    toledo_value,
    toledo_winding,
    trivial_rep,
)


@pytest.fixture(scope="module")
def fuchsian():
    return fuchsian_genus2()


@pytest.fixture(scope="module")
def diagonal(fuchsian):
    return diagonal_embedding(fuchsian, 2)


def test_fixture_is_a_hyperbolic_surface_group(fuchsian):
    assert fuchsian.relator_residual() < 1e-8
    for g in fuchsian.A + fuchsian.B:
        assert abs(np.trace(g).real) > 2
    # w_j for j = 1 .. 4g-1 are distinct and not the identity
    w = prefixes(fuchsian)[1:-1]
    for i in range(len(w)):
        assert np.max(np.abs(w[i] - np.eye(2))) > 1e-3
        for j in range(i):
            assert np.max(np.abs(w[i] - w[j])) > 1e-3


def test_fan_cycle_shape(fuchsian):
    tris = fan_cycle(fuchsian)
    assert [t.index for t in tris] == list(range(1, 8))
    # w_{4g} is the relator, so only the closing triangle collapses
    assert [t.degenerate for t in tris] == [False] * 6 + [True]
    assert all(np.allclose(t.vertices[0], np.eye(2)) for t in tris)


def _mobius(g, z):
    # Sp(2) in the complex realization acts on the disc by z -> (a z + b) / (conj(b) z + conj(a))
    return (g[0, 0] * z + g[0, 1]) / (g[1, 0] * z + g[1, 1])


def _signed_area(a, b, c):
    # oracle: Gauss-Bonnet defect with the Klein-model orientation
    ang = []
    for p, q, r in ((a, b, c), (b, c, a), (c, a, b)):
        f = lambda z: (z - p) / (1 - np.conj(p) * z)
        ang.append(abs(np.angle(f(r) / f(q))))
    k = lambda z: 2 * z / (1 + abs(z) ** 2)
    o = np.sign(np.imag(np.conj(k(b) - k(a)) * (k(c) - k(a))))
    return o * (math.pi - sum(ang))


def test_fuchsian_value_matches_area_oracle(fuchsian):
    w = prefixes(fuchsian)
    z0 = 0.1 - 0.2j
    pts = [_mobius(g, z0) for g in w]
    oracle = sum(_signed_area(pts[0], pts[j], pts[j + 1]) for j in range(1, 8))
    val = toledo_value(fuchsian, np.array([[z0]]))
    assert abs(val - CYCLE_ORIENTATION * oracle) < 1e-9
    assert abs(abs(oracle) - 4 * math.pi) < 1e-9


def test_fuchsian_toledo(fuchsian):
    res = toledo(fuchsian, winding=True)
    assert abs(res.value - 4 * math.pi) < 1e-6
    assert res.bound == pytest.approx(4 * math.pi)
    assert res.maximal and res.winding == 2
    assert is_maximal(fuchsian) and milnor_wood_check(fuchsian)


def test_diagonal_toledo(diagonal):
    res = toledo(diagonal, winding=True)
    assert abs(res.value - 8 * math.pi) < 1e-6
    assert res.bound == pytest.approx(8 * math.pi)
    assert res.maximal and res.winding == 4
    assert res.value == pytest.approx(2 * math.pi * res.winding)


def test_fixture_names(fuchsian):
    assert fixture("fuchsian-g2").spec == DomainSpec.sp(1)
    assert fixture("fuchsian-g2", "sp4-diagonal").spec == DomainSpec.sp(2)
    with pytest.raises(ValidationError):
        fixture("octagon")
    with pytest.raises(ValidationError):
        fixture("fuchsian-g2", "sp6-diagonal")
    with pytest.raises(ValidationError):
        diagonal_embedding(trivial_rep(DomainSpec.sp(2)))


@pytest.mark.parametrize("spec", [DomainSpec.sp(1), DomainSpec.sp(2), DomainSpec.su(1, 2)], ids=lambda s: s.label)
def test_trivial_rep(spec):
    rep = trivial_rep(spec, genus=3)
    assert all(t.degenerate for t in fan_cycle(rep))
    assert toledo_value(rep) == 0.0
    assert not toledo(rep).maximal
    assert toledo_bound(rep) == pytest.approx(8 * math.pi * spec.rank)
    if spec.family == "sp":
        assert toledo_winding(rep) == 0
    else:
        with pytest.raises(ValidationError):
            toledo_winding(rep)


def test_rejections(fuchsian):
    A, B = list(fuchsian.A), list(fuchsian.B)
    with pytest.raises(ValidationError, match="relator"):
        SurfaceGroupRep(2, fuchsian.spec, tuple(A), (B[1], B[0]))
    # the central element -Id satisfies the relator only projectively
    with pytest.raises(ValidationError):
        SurfaceGroupRep(2, fuchsian.spec, (A[0], A[1]), (B[0], -B[1] @ np.diag([1j, -1j])))
    with pytest.raises(ValidationError):
        SurfaceGroupRep(1, fuchsian.spec, (A[0],), (B[0],))
    with pytest.raises(ValidationError):
        SurfaceGroupRep(2, fuchsian.spec, (A[0],), tuple(B))
    with pytest.raises(ValidationError):
        SurfaceGroupRep(2, fuchsian.spec, (A[0], 2 * A[1]), tuple(B))
    with pytest.raises(ValidationError):
        toledo_value(trivial_rep(DomainSpec.so2n(3)))
    with pytest.raises(PreconditionError):
        ToledoResult(20.0, 4 * math.pi, False)


def test_json_roundtrip(fuchsian):
    text = json.dumps(fuchsian.to_json())
    rep = SurfaceGroupRep.from_json(json.loads(text))
    assert abs(toledo_value(rep) - 4 * math.pi) < 1e-9
    with pytest.raises(ValidationError):
        SurfaceGroupRep.from_json({"genus": 2})
    with pytest.raises(ValidationError):
        SurfaceGroupRep.from_json([1, 2])


def test_basepoint_and_conjugation_invariance(fuchsian, diagonal):
    rng = Rng(3)
    for rep, target in ((fuchsian, 4 * math.pi), (diagonal, 8 * math.pi)):
        for _ in range(5):
            x0 = sample_interior(rep.spec, rng)
            assert abs(toledo_value(rep, x0) - target) < 1e-6
            h = random_group_element(rep.spec, rng)
            assert abs(toledo_value(rep.conjugate(h)) - target) < 1e-6


def test_perturbation_keeps_relator_and_value(fuchsian, diagonal):
    rng = Rng(4)
    for rep, target in ((fuchsian, 4 * math.pi), (diagonal, 8 * math.pi)):
        for _ in range(3):
            p = perturb_rep(rep, rng)
            assert p.relator_residual() < 1e-9
            assert max(np.max(np.abs(a - b)) for a, b in zip(p.A, rep.A)) > 1e-4
            assert milnor_wood_check(p)
            assert abs(toledo_value(p) - target) < 1e-6
    assert toledo_winding(perturb_rep(diagonal, rng)) == 4
