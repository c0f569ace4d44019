from fractions import Fraction

import numpy as np
import pytest

from koiso.roots import (
    freudenthal_eigenvalue,
    so_root_system,
    so_weights,
    sp_root_system,
    sp_weights,
    su_root_system,
    su_weights,
)


@pytest.mark.parametrize("n,series,rank,count", [(3, "B", 1, 1), (4, "D", 2, 2), (5, "B", 2, 4), (8, "D", 4, 12)])
def test_so_series_selection_and_root_count(n, series, rank, count):
    rs = so_root_system(n)
    assert rs.series == series
    assert rs.rank == rank
    assert len(rs.positive_roots) == count


def test_rho_is_half_sum_exactly():
    rs = sp_root_system(3)
    total = [Fraction(0)] * rs.rank
    for root in rs.positive_roots:
        for j, x in enumerate(root):
            total[j] += x
    assert tuple(x / 2 for x in total) == rs.rho


def test_dual_gram_from_concrete_realization():
    np.testing.assert_allclose(so_root_system(5).dual_gram, np.eye(2) / 2, atol=1e-14)
    np.testing.assert_allclose(sp_root_system(3).dual_gram, np.eye(3) / 2, atol=1e-14)
    # su(3): Gram of i(e11-e22), i(e22-e33) is [[2,-1],[-1,2]]
    np.testing.assert_allclose(su_root_system(3).dual_gram, np.array([[2, 1], [1, 2]]) / 3, atol=1e-14)


def test_su2_defining_eigenvalue():
    rs = su_root_system(2)
    assert freudenthal_eigenvalue(rs, su_weights(2)["defining"]) == pytest.approx(1.5, abs=1e-14)


@pytest.mark.parametrize("m", range(2, 9))
def test_su_defining_and_adjoint(m):
    rs = su_root_system(m)
    w = su_weights(m)
    assert freudenthal_eigenvalue(rs, w["defining"]) == pytest.approx((m**2 - 1) / m, abs=1e-12)
    assert freudenthal_eigenvalue(rs, w["adjoint"]) == pytest.approx(2 * m, abs=1e-12)


@pytest.mark.parametrize("n", range(3, 9))
def test_so_module_eigenvalues(n):
    rs = so_root_system(n)
    w = so_weights(n)
    assert freudenthal_eigenvalue(rs, w["defining"]) == pytest.approx((n - 1) / 2, abs=1e-12)
    assert freudenthal_eigenvalue(rs, w["adjoint"]) == pytest.approx(n - 2, abs=1e-12)
    assert freudenthal_eigenvalue(rs, w["sym2_traceless"]) == pytest.approx(n, abs=1e-12)


@pytest.mark.parametrize("n", range(3, 9))
def test_sp_module_eigenvalues(n):
    rs = sp_root_system(n)
    w = sp_weights(n)
    assert freudenthal_eigenvalue(rs, w["defining"]) == pytest.approx((2 * n + 1) / 2, abs=1e-12)
    assert freudenthal_eigenvalue(rs, w["adjoint"]) == pytest.approx(2 * (n + 1), abs=1e-12)
    assert freudenthal_eigenvalue(rs, w["lambda2_traceless"]) == pytest.approx(2 * n, abs=1e-12)


def test_so4_both_adjoint_components_agree():
    # so(4) is not simple; both irreducible summands carry the same eigenvalue
    rs = so_root_system(4)
    plus = freudenthal_eigenvalue(rs, (Fraction(1), Fraction(1)))
    minus = freudenthal_eigenvalue(rs, (Fraction(1), Fraction(-1)))
    assert plus == pytest.approx(2.0, abs=1e-14)
    assert minus == pytest.approx(2.0, abs=1e-14)


def test_trivial_weight_gives_zero():
    rs = so_root_system(5)
    assert freudenthal_eigenvalue(rs, (0, 0)) == pytest.approx(0.0, abs=1e-15)


def test_non_dominant_weight_rejected():
    rs = so_root_system(5)
    with pytest.raises(ValueError, match="dominant"):
        freudenthal_eigenvalue(rs, (-1, 0))
    with pytest.raises(ValueError, match="coordinates"):
        freudenthal_eigenvalue(rs, (1, 0, 0))
