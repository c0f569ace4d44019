import numpy as np
import pytest

from koiso.algebras import AI, AII, su_basis
from koiso.cubics import (
    aux_identity_check,
    cubic_casimir_check,
    cubic_form,
    cubic_norm_contraction,
    cubic_split,
    extract_constants,
    invariant_power,
    norm_restricted,
    obstruction_polynomials,
    polarized_cubic,
    restricted_components,
    sigma_tensor,
)
from koiso.matrices import anticommutator, product_trace, random_special_unitary, random_su


def test_cubic_form_diagonal_oracle():
    # eigenvalue oracle: X = i diag(d)/sqrt(6) has P(X) = 2 sum(d^3)/6^(3/2)
    d = np.array([1.0, 1.0, -2.0])
    x = 1j * np.diag(d) / np.sqrt(6.0)
    expected = 2.0 * float(np.sum(d**3)) / 6.0**1.5
    assert cubic_form(x) == pytest.approx(expected, abs=1e-14)
    assert expected == pytest.approx(-2.0 / np.sqrt(6.0))


def test_cubic_form_vanishes_on_symmetric_spectrum():
    x = 1j * np.diag([1.0, -1.0, 0.0])
    assert cubic_form(x) == pytest.approx(0.0, abs=1e-14)


def test_cubic_form_homogeneity_and_input_guard():
    rng = np.random.default_rng(30)
    x = random_su(4, rng)
    for c in (0.5, -2.0, 3.7):
        assert cubic_form(c * x) == pytest.approx(c**3 * cubic_form(x), rel=1e-12)
    with pytest.raises(ValueError):
        cubic_form(np.diag([1.0, 2.0, 3.0]).astype(complex))


def test_polarized_cubic_symmetry_diagonal_and_polarization_identity():
    rng = np.random.default_rng(31)
    x, y, z = (random_su(4, rng) for _ in range(3))
    assert polarized_cubic(x, x, x) == pytest.approx(cubic_form(x), abs=1e-12)
    vals = {polarized_cubic(*perm) for perm in ((x, y, z), (y, x, z), (z, y, x), (x, z, y))}
    assert max(vals) - min(vals) < 1e-12
    # polarization identity oracle for cubics
    oracle = (
        cubic_form(x + y + z)
        - cubic_form(x + y)
        - cubic_form(y + z)
        - cubic_form(x + z)
        + cubic_form(x)
        + cubic_form(y)
        + cubic_form(z)
    ) / 6.0
    assert polarized_cubic(x, y, z) == pytest.approx(oracle, abs=1e-11)


def test_cubic_norm_small_cases():
    assert cubic_norm_contraction(su_basis(3)) == pytest.approx(80 / 3, rel=1e-12)
    assert cubic_norm_contraction(su_basis(2)) == pytest.approx(0.0, abs=1e-13)


def test_restricted_components_pure_probes(get_pair):
    pair = get_pair(AI, 3)
    zm = pair.m_basis[1] + 0.3 * pair.m_basis[3]
    mmm, kkm = restricted_components(pair, zm)
    assert mmm == pytest.approx(cubic_form(np.asarray(zm)), abs=1e-12)
    assert kkm == pytest.approx(0.0, abs=1e-13)
    zk = pair.k_basis[0] - 0.7 * pair.k_basis[2]
    mmm, kkm = restricted_components(pair, zk)
    assert mmm == pytest.approx(0.0, abs=1e-13)
    assert kkm == pytest.approx(0.0, abs=1e-13)


@pytest.mark.parametrize("tag,n", [(AI, 3), (AI, 4), (AII, 3)])
def test_cubic_split_reassembles_and_spurious_parts_vanish(get_pair, tag, n):
    pair = get_pair(tag, n)
    rng = np.random.default_rng(32)
    for _ in range(5):
        z = random_su(pair.m, rng)
        pieces = cubic_split(pair, z)
        assert pieces["split_residual"] < 1e-11
        # the mixed mmk part and the pure isotropy part vanish identically here
        assert abs(pieces["mmk"]) < 1e-11
        assert abs(pieces["kkk"]) < 1e-11
        mmm, kkm = restricted_components(pair, z)
        assert cubic_form(z) == pytest.approx(mmm + kkm, abs=1e-10)


def test_norm_restricted_values(get_pair):
    mmm, kkm = norm_restricted(get_pair(AI, 3))
    assert mmm == pytest.approx(35 / 3, rel=1e-10)
    assert kkm == pytest.approx(15.0, rel=1e-10)
    assert mmm + kkm == pytest.approx(80 / 3, rel=1e-10)
    mmm, kkm = norm_restricted(get_pair(AII, 3))
    assert mmm == pytest.approx(112 / 3, rel=1e-10)
    assert kkm == pytest.approx(336.0, rel=1e-10)


def test_sigma_tensor_structure(get_pair):
    pair = get_pair(AI, 3)
    sig = sigma_tensor(pair)
    assert sig.values.shape == (5, 5, 5)
    assert sig.imag_residual < 1e-13
    assert sig.symmetry_residual < 1e-13
    # diagonal entries against the direct trace oracle
    for a, e in enumerate(pair.m_basis):
        direct = (1j * product_trace([anticommutator(e, e), e])).real
        assert sig.values[a, a, a] == pytest.approx(direct, abs=1e-13)
    # full contraction reproduces |P_mmm|^2
    mmm, _ = norm_restricted(pair)
    assert float(np.sum(sig.values**2)) == pytest.approx(mmm, rel=1e-12)


def _sigma_oracle(pair, x, y, z):
    return (1j * np.trace((x @ y + y @ x) @ z)).real


def _obstruction_oracle(pair, z):
    """Quadruple-loop evaluation of Q and R_1..R_4, straight from their sums."""
    zk = pair.k_basis.project(z)
    zm = pair.m_basis.project(z)
    e = list(pair.m_basis)
    d = len(e)
    br = [zk @ ei - ei @ zk for ei in e]
    s = np.array([[_sigma_oracle(pair, zm, e[i], e[j]) for j in range(d)] for i in range(d)])
    sig = np.array([[[_sigma_oracle(pair, e[i], e[j], e[k]) for k in range(d)] for j in range(d)] for i in range(d)])
    sig_br = np.array([[[_sigma_oracle(pair, br[i], e[k], e[l]) for l in range(d)] for k in range(d)] for i in range(d)])
    q = sum(
        s[i, j] * s[i, k] * s[j, k] for i in range(d) for j in range(d) for k in range(d)
    )
    r1 = r2 = r3 = r4 = 0.0
    for i in range(d):
        for j in range(d):
            if s[i, j] == 0.0:
                continue
            for k in range(d):
                for l in range(d):
                    r1 += s[i, j] * sig_br[i, k, l] * sig_br[k, j, l]
                    r2 += s[i, j] * sig_br[i, k, l] * sig_br[j, k, l]
                    r3 += s[i, j] * sig[i, k, l] * _sigma_oracle(
                        pair, e[j], e[k], zk @ br[l] - br[l] @ zk
                    )
                    r4 += s[i, j] * sig[i, k, l] * _sigma_oracle(pair, e[j], br[k], br[l])
    return q, r1, r2, r3, r4


@pytest.mark.parametrize("tag,n", [(AI, 3), (AII, 3)])
def test_obstruction_polynomials_match_quadruple_loop_oracle(get_pair, tag, n):
    pair = get_pair(tag, n)
    rng = np.random.default_rng(33)
    z = random_su(pair.m, rng)
    ev = obstruction_polynomials(pair, z)
    q, r1, r2, r3, r4 = _obstruction_oracle(pair, z)
    scale = max(1.0, abs(q), abs(r1))
    assert ev.q == pytest.approx(q, abs=1e-10 * scale)
    assert ev.r1 == pytest.approx(r1, abs=1e-10 * scale)
    assert ev.r2 == pytest.approx(r2, abs=1e-10 * scale)
    assert ev.r3 == pytest.approx(r3, abs=1e-10 * scale)
    assert ev.r4 == pytest.approx(r4, abs=1e-10 * scale)
    assert ev.r == pytest.approx(2 * (r1 - r2 - r3 + r4), abs=1e-10 * scale)


def test_obstruction_polynomials_vanish_on_isotropy_probe(get_pair):
    pair = get_pair(AI, 4)
    z = pair.k_basis[0] + 0.5 * pair.k_basis[3]
    ev = obstruction_polynomials(pair, z)
    for value in (ev.p_mmm, ev.q, ev.r1, ev.r2, ev.r3, ev.r4, ev.r):
        assert value == pytest.approx(0.0, abs=1e-12)


@pytest.mark.parametrize("tag,n", [(AI, 3), (AI, 4), (AII, 3)])
def test_r_relations_on_random_probes(get_pair, tag, n):
    pair = get_pair(tag, n)
    rng = np.random.default_rng(34)
    sig = sigma_tensor(pair)
    for _ in range(5):
        z = random_su(pair.m, rng)
        ev = obstruction_polynomials(pair, z, sig)
        scale = max(1.0, abs(ev.r1))
        assert 2 * ev.r1 + ev.r2 == pytest.approx(0.0, abs=1e-11 * scale)
        assert ev.r1 - ev.r3 - ev.r4 == pytest.approx(0.0, abs=1e-11 * scale)


def test_ratio_constancy_across_probes(get_pair):
    pair = get_pair(AI, 4)
    rng = np.random.default_rng(35)
    sig = sigma_tensor(pair)
    ratios = []
    while len(ratios) < 10:
        z = random_su(pair.m, rng)
        ev = obstruction_polynomials(pair, z, sig)
        if abs(ev.p_mmm) < 1e-2:
            continue
        ratios.append(ev.q / ev.p_mmm)
    assert max(ratios) - min(ratios) < 1e-10


def test_invariance_under_isotropy_and_full_group(get_pair):
    pair = get_pair(AII, 3)
    rng = np.random.default_rng(36)
    z = random_su(pair.m, rng)
    ev = obstruction_polynomials(pair, z)
    # conjugating by exp(k-element) fixes each polynomial
    k_elem = pair.k_basis.project(random_su(pair.m, rng))
    import scipy.linalg

    g = scipy.linalg.expm(k_elem)
    ev_conj = obstruction_polynomials(pair, g @ z @ g.conj().T)
    for attr in ("p_mmm", "p_kkm", "q", "r1", "r2", "r3", "r4", "r"):
        a, b = getattr(ev, attr), getattr(ev_conj, attr)
        assert a == pytest.approx(b, abs=1e-9 * max(1.0, abs(a)))
    # the full cubic is invariant under any special unitary conjugation
    u = random_special_unitary(pair.m, rng)
    x, y, w = (random_su(pair.m, rng) for _ in range(3))
    before = polarized_cubic(x, y, w)
    after = polarized_cubic(u @ x @ u.conj().T, u @ y @ u.conj().T, u @ w @ u.conj().T)
    assert after == pytest.approx(before, abs=1e-11 * max(1.0, abs(before)))


def test_extract_constants_closed_values(get_pair):
    oc = extract_constants(get_pair(AI, 3), seed=0, probes=10)
    assert oc.spread < 1e-10
    assert oc.kappa == pytest.approx(-0.5, abs=1e-11)
    assert oc.lambda1 == pytest.approx(-49 / 36, abs=1e-11)
    assert oc.lambda3 == pytest.approx(7 / 12, abs=1e-11)
    assert oc.lam == pytest.approx(-119 / 9, abs=1e-10)
    assert oc.lam_alt == pytest.approx(oc.lam, abs=1e-10)
    assert oc.psi_coeff == pytest.approx(-693 / 32, abs=1e-9)
    oc = extract_constants(get_pair(AII, 3), seed=1, probes=10)
    assert oc.psi_coeff == pytest.approx(-63 / 5, abs=1e-9)
    assert oc.kappa == pytest.approx(-1.0, abs=1e-11)


def test_extract_constants_probe_floor(get_pair):
    with pytest.raises(ValueError):
        extract_constants(get_pair(AI, 3), seed=0, probes=2)


@pytest.mark.parametrize("tag,n", [(AI, 4), (AII, 3)])
def test_aux_identities_random_probe(get_pair, tag, n):
    pair = get_pair(tag, n)
    rng = np.random.default_rng(37)
    for _ in range(3):
        res1, res2 = aux_identity_check(pair, random_su(pair.m, rng))
        assert res1 < 1e-9
        assert res2 < 1e-9


def test_aux_identities_pure_probes(get_pair):
    pair = get_pair(AI, 4)
    res1, _ = aux_identity_check(pair, np.asarray(pair.k_basis[0]))
    assert res1 < 1e-13
    _, res2 = aux_identity_check(pair, np.asarray(pair.m_basis[0]))
    assert res2 < 1e-13


def test_cubic_casimir_check_values():
    trace, mu3 = cubic_casimir_check(3)
    assert trace == pytest.approx(40 / 3, rel=1e-10)
    assert mu3 == pytest.approx(40 / 9, rel=1e-10)
    _, mu3 = cubic_casimir_check(4)
    assert mu3 == pytest.approx(45 / 4, rel=1e-10)


def test_invariant_power_basics():
    basis = su_basis(4)
    for x in list(basis)[:3]:
        assert invariant_power(x, 2) == pytest.approx(1.0, abs=1e-13)
    rng = np.random.default_rng(38)
    x = random_su(4, rng)
    # i^3 tr(X^3) = -i tr(X^3), which is minus half of the cubic form 2i tr(X^3)
    assert invariant_power(x, 3) == pytest.approx(-cubic_form(x) / 2.0, abs=1e-12)
    with pytest.raises(ValueError):
        invariant_power(x, 5)
    with pytest.raises(ValueError):
        invariant_power(x, 1)
    # Ad-invariance under special unitary conjugation
    u = random_special_unitary(4, rng)
    for k in (2, 3, 4):
        before = invariant_power(x, k)
        after = invariant_power(u @ x @ u.conj().T, k)
        assert after == pytest.approx(before, abs=1e-11 * max(1.0, abs(before)))
