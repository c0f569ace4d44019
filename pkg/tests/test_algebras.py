import numpy as np
import pytest

from koiso.algebras import (
    AI,
    AII,
    Family,
    NonProportionalError,
    OrthonormalBasis,
    involution,
    killing_form_ratio,
    pair_residuals,
    quaternionic_sp_basis,
    structure_constants,
    su_basis,
)
from koiso.matrices import random_su


@pytest.mark.parametrize("m,count", [(2, 3), (3, 8), (5, 24)])
def test_su_basis_count_and_orthonormality(m, count):
    basis = su_basis(m)
    assert len(basis) == count == m**2 - 1
    assert basis.gram_residual() < 1e-13


def test_su_basis_elements_are_tracefree_anti_hermitian():
    basis = su_basis(4)
    for x in basis:
        assert abs(np.trace(x)) < 1e-14
        np.testing.assert_allclose(x, -x.conj().T, atol=1e-14)


def test_su_basis_trace_square_sum():
    basis = su_basis(5)
    total = sum(np.trace(x @ x).real for x in basis)
    assert total == pytest.approx(-(5**2 - 1), abs=1e-12)


def test_su_basis_rejects_small_m():
    with pytest.raises(ValueError):
        su_basis(1)


def test_family_validation():
    with pytest.raises(ValueError):
        Family(AI, 2)
    with pytest.raises(ValueError):
        Family("XX", 3)
    assert Family(AI, 4).m == 4
    assert Family(AII, 4).m == 8


@pytest.mark.parametrize(
    "tag,n,dim_k,dim_m",
    [(AI, 3, 3, 5), (AI, 4, 6, 9), (AII, 3, 21, 14), (AII, 4, 36, 27)],
)
def test_cartan_decomposition_dimensions(get_pair, tag, n, dim_k, dim_m):
    pair = get_pair(tag, n)
    assert len(pair.k_basis) == dim_k
    assert len(pair.m_basis) == dim_m
    assert pair.einstein_constant == pair.m
    assert pair.dim_m == dim_m


@pytest.mark.parametrize("tag,n", [(AI, 3), (AI, 5), (AII, 3), (AII, 4)])
def test_involution_squares_to_identity(tag, n):
    fam = Family(tag, n)
    theta = involution(fam)
    rng = np.random.default_rng(10)
    for _ in range(10):
        x = random_su(fam.m, rng)
        np.testing.assert_allclose(theta(theta(x)), x, atol=1e-14)


@pytest.mark.parametrize("tag,n", [(AI, 3), (AI, 4), (AI, 5), (AII, 3), (AII, 4)])
def test_pair_structural_residuals(get_pair, tag, n):
    residuals = pair_residuals(get_pair(tag, n))
    worst = max(residuals.values())
    assert worst < 1e-12, residuals


def test_killing_ratio_values(get_pair):
    assert killing_form_ratio(su_basis(4)) == pytest.approx(8.0, abs=1e-12)
    so5 = get_pair(AI, 5).k_basis
    assert killing_form_ratio(so5) == pytest.approx(3.0, abs=1e-12)
    sp3 = get_pair(AII, 3).k_basis
    assert killing_form_ratio(sp3) == pytest.approx(8.0, abs=1e-12)


def test_killing_ratio_rejects_non_subalgebra(get_pair):
    # the complement m is not closed under brackets
    with pytest.raises(NonProportionalError):
        killing_form_ratio(get_pair(AI, 4).m_basis)


def test_structure_constants_su2():
    c = structure_constants(su_basis(2))
    assert c[0, 1, 2] == pytest.approx(np.sqrt(2.0), abs=1e-14)
    # total antisymmetry on the computed images
    assert c[1, 0, 2] == pytest.approx(-np.sqrt(2.0), abs=1e-14)
    assert c[0, 2, 1] == pytest.approx(-np.sqrt(2.0), abs=1e-14)
    assert np.abs(np.einsum("iik->ik", c)).max() < 1e-14


def test_structure_constants_antisymmetry_and_jacobi_su3():
    c = structure_constants(su_basis(3))
    assert np.abs(c + np.transpose(c, (1, 0, 2))).max() < 1e-13
    assert np.abs(c + np.transpose(c, (0, 2, 1))).max() < 1e-13
    # Jacobi: sum_l c[i,j,l] c[l,k,p] + c[j,k,l] c[l,i,p] + c[k,i,l] c[l,j,p] = 0
    jac = (
        np.einsum("ijl,lkp->ijkp", c, c)
        + np.einsum("jkl,lip->ijkp", c, c)
        + np.einsum("kil,ljp->ijkp", c, c)
    )
    assert np.abs(jac).max() < 1e-12


def test_quaternionic_sp3_matches_involution_basis(get_pair):
    quat = quaternionic_sp_basis(3)
    pair = get_pair(AII, 3)
    assert len(quat) == len(pair.k_basis) == 21
    assert quat.gram_residual() < 1e-12
    # same span: each vector of one basis projects fully onto the other
    for x in quat:
        assert pair.k_basis.residual_outside(x) < 1e-12
    for y in pair.k_basis:
        assert quat.residual_outside(y) < 1e-12


def test_orthonormal_basis_projection_roundtrip(get_pair):
    pair = get_pair(AI, 4)
    rng = np.random.default_rng(11)
    z = random_su(4, rng)
    zk = pair.k_basis.project(z)
    zm = pair.m_basis.project(z)
    np.testing.assert_allclose(zk + zm, z, atol=1e-13)
    assert pair.k_basis.residual_outside(zk) < 1e-13
    assert pair.m_basis.residual_outside(zm) < 1e-13


def test_orthonormal_basis_shape_guard():
    with pytest.raises(Exception):
        OrthonormalBasis(3, np.zeros((2, 2, 2)), "bad")
