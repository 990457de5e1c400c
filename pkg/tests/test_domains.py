import numpy as np
import pytest
from scipy.linalg import expm, qr

from hermitia import lie
from hermitia.domains import (
    DomainSpec,
    GroupElement,
    act,
    base_point,
    cayley_matrix,
    check_group,
    flat_point,
    frame,
    interior_test,
    is_shilov,
    k_element,
    random_group_element,
    random_k,
    sample_interior,
    sample_shilov,
    shilov_k,
    shilov_of_subspace,
    subspace_of_shilov,
    subspaces_intersection_dim,
    symplectic_form,
    transversality,
    transverse,
    validate_point,
)
from hermitia.numeric import Rng, SingularError, ValidationError

FAMILIES = [
    DomainSpec.su(1, 1),
    DomainSpec.su(1, 3),
    DomainSpec.su(2, 2),
    DomainSpec.su(2, 3),
    DomainSpec.sp(1),
    DomainSpec.sp(3),
    DomainSpec.sostar(4),
    DomainSpec.sostar(5),
    DomainSpec.so2n(3),
    DomainSpec.so2n(5),
]


def _ids(spec):
    return spec.label


def test_spec_derived_fields():
    assert DomainSpec.su(2, 3).rank == 2 and not DomainSpec.su(2, 3).tube_type
    assert DomainSpec.su(2, 3).shape == (3, 2)
    assert DomainSpec.sp(3).rank == 3 and DomainSpec.sp(3).tube_type
    assert DomainSpec.sostar(5).rank == 2 and not DomainSpec.sostar(5).tube_type
    assert DomainSpec.sostar(6).tube_type
    assert DomainSpec.so2n(4).rank == 2 and DomainSpec.so2n(4).shape == (4, 1)
    assert DomainSpec.parse("SU_pq", {"p": 1, "q": 2}) == DomainSpec.su(1, 2)
    assert DomainSpec.parse("Sp2n", [2]) == DomainSpec.sp(2)


@pytest.mark.parametrize("family,params", [("su", (3, 2)), ("sp", (0,)), ("sostar", (1,)), ("so2n", (1,)), ("e6", (1,))])
def test_spec_rejects(family, params):
    with pytest.raises(ValidationError):
        DomainSpec.parse(family, params)


@pytest.mark.parametrize("spec", [DomainSpec.su(2, 3), DomainSpec.sp(2), DomainSpec.sostar(5)], ids=_ids)
def test_tube_flag_matches_root_data(spec):
    assert spec.tube_type == lie.root_data(spec.family, spec.params).tube_type


def test_interior_test_examples():
    assert str(interior_test(DomainSpec.su(2, 3), np.zeros((3, 2)))) == "Interior"
    pc = interior_test(DomainSpec.su(2, 2), np.eye(2))
    assert str(pc) == "Boundary(2)" and pc.is_shilov
    assert str(interior_test(DomainSpec.su(1, 1), [[2.0]])) == "Outside"


def test_point_shape_and_symmetry_checks():
    with pytest.raises(ValidationError):
        validate_point(DomainSpec.su(2, 3), np.zeros((2, 3)))
    with pytest.raises(ValidationError):
        validate_point(DomainSpec.sp(2), [[0, 0.1], [0.2, 0]])
    with pytest.raises(ValidationError):
        validate_point(DomainSpec.sostar(2), [[0, 0.1], [0.1, 0]])


@pytest.mark.parametrize("spec", FAMILIES, ids=_ids)
def test_base_points_and_frames(spec):
    o = base_point(spec)
    assert is_shilov(spec, o)
    assert interior_test(spec, o).is_shilov
    for i in range(1, spec.rank):
        pc = interior_test(spec, base_point(spec, i))
        assert pc.kind == "boundary" and pc.orbit_index == i
    assert len(frame(spec)) == spec.rank


@pytest.mark.parametrize("spec", FAMILIES, ids=_ids)
def test_flat_limits(spec):
    assert np.allclose(flat_point(spec, np.ones(spec.rank), 0.0), 0)
    assert np.max(np.abs(flat_point(spec, np.ones(spec.rank), 20.0) - base_point(spec))) < 1e-8
    with pytest.raises(ValidationError):
        flat_point(spec, np.ones(spec.rank + 1))


def test_singular_geodesic_lands_in_lower_orbit():
    spec = DomainSpec.su(2, 2)
    pc = interior_test(spec, flat_point(spec, [1.0, 0.0], 20.0))
    assert str(pc) == "Boundary(1)" and not pc.is_shilov


@pytest.mark.parametrize("spec", FAMILIES, ids=_ids)
def test_group_action_preserves_orbits(spec):
    rng = Rng(7)
    for _ in range(100):
        g = random_group_element(spec, rng)
        Z = sample_interior(spec, rng)
        assert interior_test(spec, act(g, Z)).is_interior
        x = sample_shilov(spec, rng)
        assert is_shilov(spec, act(g, x), 1e-7)
    i = max(1, spec.rank - 1)
    o_i = base_point(spec, i)
    for _ in range(20):
        g = random_group_element(spec, rng)
        try:
            img = act(g, o_i)
        except SingularError:
            continue
        assert interior_test(spec, img).orbit_index == i


@pytest.mark.parametrize("spec", FAMILIES, ids=_ids)
def test_action_is_a_left_action(spec):
    rng = Rng(8)
    g, h = random_group_element(spec, rng), random_group_element(spec, rng)
    Z = sample_interior(spec, rng)
    assert np.allclose(act(g @ h, Z), act(g, act(h, Z)))
    assert np.allclose(act(g.inv(), act(g, Z)), Z)
    ident = GroupElement(spec, np.eye(spec.group_size))
    assert np.allclose(act(ident, Z), Z)
    assert np.allclose(act(random_k(spec, rng), np.zeros(spec.shape)), 0)


def test_group_membership_rejected():
    spec = DomainSpec.su(1, 1)
    with pytest.raises(ValidationError):
        check_group(spec, np.array([[2.0, 0], [0, 1.0]]))
    with pytest.raises(ValidationError):
        check_group(DomainSpec.so2n(3), -np.eye(5))


def test_transversality_examples():
    for p in (1, 2, 3):
        spec = DomainSpec.su(p, p)
        I = np.eye(p)
        assert transverse(spec, I, -I)
        assert abs(transversality(spec, I, -I) - 2**p) < 1e-12
        assert not transverse(spec, I, I)
    for spec in (DomainSpec.sostar(4), DomainSpec.sostar(5)):
        o = base_point(spec)
        assert abs(transversality(spec, o, -o) - 16) < 1e-12


@pytest.mark.parametrize("spec", FAMILIES, ids=_ids)
def test_transversality_symmetric_and_generic(spec):
    rng = Rng(9)
    hits = 0
    for _ in range(200):
        x, y = sample_shilov(spec, rng), sample_shilov(spec, rng)
        assert transverse(spec, x, y) == transverse(spec, y, x)
        hits += transverse(spec, x, y)
    assert hits >= 198


def test_transversality_generic_frequency():
    rng = Rng(10)
    spec = DomainSpec.sp(2)
    hits = sum(transverse(spec, sample_shilov(spec, rng), sample_shilov(spec, rng)) for _ in range(1000))
    assert hits >= 990


def _qr_intersection_dim(B1, B2, tol=1e-8):
    # oracle: rank of [B1 B2] from pivoted QR
    _, R, _ = qr(np.hstack([B1, B2]), pivoting=True)
    d = np.abs(np.diag(R))
    return B1.shape[1] + B2.shape[1] - int(np.sum(d > tol * d[0]))


@pytest.mark.parametrize("spec", [DomainSpec.sp(1), DomainSpec.sp(2), DomainSpec.sp(3), DomainSpec.su(2, 2), DomainSpec.sostar(4)], ids=_ids)
def test_transverse_matches_subspace_rank_oracle(spec):
    rng = Rng(12)
    for trial in range(60):
        x = sample_shilov(spec, rng)
        if trial % 3 == 0:
            y = x
        elif trial % 3 == 1 and spec.family == "sp":
            U = rng.orthogonal(spec.n)
            ph = rng.uniform(-np.pi, np.pi, spec.n)
            ph2 = rng.uniform(-np.pi, np.pi, spec.n)
            ph2[0] = ph[0]
            x = U @ np.diag(np.exp(1j * ph)) @ U.T
            y = U @ np.diag(np.exp(1j * ph2)) @ U.T
        else:
            y = sample_shilov(spec, rng)
        L1, L2 = subspace_of_shilov(spec, x), subspace_of_shilov(spec, y)
        k = _qr_intersection_dim(L1.basis, L2.basis)
        assert subspaces_intersection_dim(L1, L2) == k
        assert transverse(spec, x, y) == (k == 0)


@pytest.mark.parametrize("spec", [DomainSpec.sp(1), DomainSpec.sp(3), DomainSpec.su(1, 1), DomainSpec.su(3, 3), DomainSpec.sostar(4), DomainSpec.sostar(6)], ids=_ids)
def test_subspace_round_trip(spec):
    rng = Rng(13)
    o = base_point(spec)
    L = subspace_of_shilov(spec, o)
    assert L.dim == spec.n if spec.family != "su" else spec.p
    for _ in range(30):
        x = sample_shilov(spec, rng)
        assert np.max(np.abs(shilov_of_subspace(spec, subspace_of_shilov(spec, x)) - x)) < 1e-9


def test_sp_base_point_subspace():
    # the complexified Lagrangian of o_r is the graph of Id in complex coordinates
    n = 2
    spec = DomainSpec.sp(n)
    L = subspace_of_shilov(spec, base_point(spec))
    G = cayley_matrix(n) @ np.vstack([np.eye(n), np.eye(n)])
    assert np.linalg.matrix_rank(np.hstack([L.basis, G.real, G.imag]), tol=1e-9) == n
    assert np.allclose(L.basis.T @ symplectic_form(n) @ L.basis, 0)


def test_subspace_model_rejects_non_shilov():
    with pytest.raises(ValidationError):
        subspace_of_shilov(DomainSpec.sp(2), 0.5 * np.eye(2))
    with pytest.raises(ValidationError):
        subspace_of_shilov(DomainSpec.su(1, 2), np.ones((2, 1)) / np.sqrt(2))


def test_real_and_complex_symplectic_realizations_conjugate():
    rng = Rng(14)
    for n in (1, 2, 3):
        A = rng.normal((2 * n, 2 * n))
        Om = symplectic_form(n)
        # real Hamiltonian matrix X with X^T Om + Om X = 0
        S = 0.5 * (A + A.T)
        X = Om @ S
        g_real = expm(0.3 * X)
        assert np.allclose(g_real.T @ Om @ g_real, Om)
        C = cayley_matrix(n)
        g_c = np.linalg.inv(C) @ g_real @ C
        check_group(DomainSpec.sp(n), g_c)
        assert np.allclose(g_c[:n, :n], g_c[n:, n:].conj())


@pytest.mark.parametrize("spec", [DomainSpec.su(1, 1), DomainSpec.su(2, 2), DomainSpec.su(1, 3), DomainSpec.sp(2), DomainSpec.sp(3)], ids=_ids)
def test_shilov_k_moves_base_point(spec):
    rng = Rng(15)
    o = base_point(spec)
    for _ in range(20):
        x = sample_shilov(spec, rng)
        assert np.max(np.abs(act(shilov_k(spec, x), o) - x)) < 1e-9


def test_sp_samples_are_symmetric_unitary():
    rng = Rng(16)
    spec = DomainSpec.sp(3)
    for _ in range(20):
        Z = sample_shilov(spec, rng)
        assert np.max(np.abs(Z - Z.T)) < 1e-10
        assert np.max(np.abs(Z.conj().T @ Z - np.eye(3))) < 1e-10


def _orbit_tangent_dim(spec):
    # oracle: rank of the differential of g -> g.o_r at the identity
    alg = lie.build_algebra(spec.family, spec.params)
    o = base_point(spec)
    cols = []
    h = 1e-6
    for X in alg.basis:
        gp = GroupElement(spec, expm(h * X))
        gm = GroupElement(spec, expm(-h * X))
        d = (act(gp, o) - act(gm, o)) / (2 * h)
        cols.append(np.concatenate([d.real.ravel(), d.imag.ravel()]))
    s = np.linalg.svd(np.array(cols).T, compute_uv=False)
    return int(np.sum(s > 1e-6 * s[0]))


@pytest.mark.parametrize("p,q", [(p, q) for p in range(1, 4) for q in range(p, 5)])
def test_su_shilov_dimension_cross_module(p, q):
    spec = DomainSpec.su(p, q)
    expected = 2 * p * q - p * p
    assert lie.shilov_dim(lie.root_data("su", (p, q))) == expected
    assert _orbit_tangent_dim(spec) == expected


@pytest.mark.parametrize("spec", [DomainSpec.sp(2), DomainSpec.sp(3), DomainSpec.sostar(4), DomainSpec.sostar(5)], ids=_ids)
def test_shilov_dimension_other_families(spec):
    assert _orbit_tangent_dim(spec) == lie.shilov_dim(lie.root_data(spec.family, spec.params))


def test_so2n_k_element_rejects_wrong_component():
    spec = DomainSpec.so2n(3)
    g = np.eye(5)
    g[0, 0] = -1
    g[2, 2] = -1
    with pytest.raises(ValidationError):
        check_group(spec, g)
    k_element(spec, 0.3, np.eye(3))
