"""The invariant cubic of su(m), its restrictions, and the obstruction polynomials.

The cubic form is P(X) = 2 i tr(X^3), polarized P(X,Y,Z) = i tr({X,Y}Z).
Restricted to the complement m of a symmetric pair it becomes the sigma
tensor sigma(E_a,E_b,E_c), the workhorse of every obstruction contraction:
the polynomials Q, R_1..R_4 reduce to dense 3-/4-index contractions of the
precomputed sigma tensor against the matrix of ad(Z_k) on m, which keeps the
quadruple sums out of Python loops.
"""

from dataclasses import dataclass

import numpy as np

from .algebras import OrthonormalBasis, SymmetricPair, su_basis
from .casimir import PairConstants, compute_pair_constants
from .matrices import Tolerance, as_matrix, frobenius_norm, is_anti_hermitian, random_su

__all__ = [
    "SigmaTensor",
    "CubicEvaluation",
    "ObstructionConstants",
    "cubic_form",
    "polarized_cubic",
    "cubic_norm_contraction",
    "restricted_components",
    "cubic_split",
    "norm_restricted",
    "sigma_tensor",
    "obstruction_polynomials",
    "extract_constants",
    "aux_identity_check",
    "cubic_casimir_check",
    "invariant_power",
]


def cubic_form(x, tol: Tolerance | None = None) -> float:
    """P(X) = 2 i tr(X^3) for X in su(m); real by anti-Hermiticity."""
    x = as_matrix(x)
    tol = tol or Tolerance.for_dim(x.shape[0])
    if not is_anti_hermitian(x, tol):
        raise ValueError("cubic form is only defined on anti-Hermitian matrices")
    t = complex(np.einsum("ab,bc,ca->", x, x, x))
    value = 2.0j * t
    if abs(value.imag) > tol.bound(abs(value)):
        raise ValueError(f"cubic form came out non-real (imaginary part {value.imag:.3e})")
    return value.real


def polarized_cubic(x, y, z) -> float:
    """P(X,Y,Z) = i tr({X,Y}Z), totally symmetric; P(X,X,X) = cubic_form(X)."""
    x, y, z = as_matrix(x), as_matrix(y), as_matrix(z)
    t = complex(np.einsum("ab,bc,ca->", x, y, z)) + complex(np.einsum("ab,bc,ca->", y, x, z))
    return (1.0j * t).real


def _anticommutator_table(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Stack of {A_i, B_j} over two stacked families."""
    prod = np.einsum("iab,jbc->ijac", a, b, optimize=True)
    return prod + np.einsum("jab,ibc->ijac", b, a, optimize=True)


def _triple_values(left: np.ndarray, right: np.ndarray) -> np.ndarray:
    """Real array i tr({L_i, L_j} R_k)."""
    table = _anticommutator_table(left, left)
    vals = 1.0j * np.einsum("ijab,kba->ijk", table, right, optimize=True)
    return vals


def cubic_norm_contraction(basis: OrthonormalBasis) -> float:
    """|P|^2 by brute-force triple contraction over the given orthonormal basis."""
    vals = _triple_values(basis.elements, basis.elements)
    return float(np.sum(vals.real**2))


@dataclass
class SigmaTensor:
    """sigma(E_a, E_b, E_c) = i tr({E_a, E_b} E_c) over the complement basis."""

    dim_m: int
    values: np.ndarray
    imag_residual: float
    symmetry_residual: float


def sigma_tensor(pair: SymmetricPair) -> SigmaTensor:
    e = pair.m_basis.elements
    vals = _triple_values(e, e)
    imag = float(np.abs(vals.imag).max())
    values = np.ascontiguousarray(vals.real)
    sym = max(
        float(np.abs(values - np.transpose(values, p)).max())
        for p in ((0, 2, 1), (1, 0, 2))
    )
    return SigmaTensor(dim_m=len(pair.m_basis), values=values, imag_residual=imag, symmetry_residual=sym)


def cubic_split(pair: SymmetricPair, z, tol: Tolerance | None = None) -> dict:
    """All four pieces of P(Z) under Z = Z_k + Z_m, with consistency residual.

    Components: mmm = 2i tr(Z_m^3), kkm = 6i tr(Z_m Z_k^2), and the two that
    vanish identically on these pairs, mmk = 6i tr(Z_m^2 Z_k) and
    kkk = 2i tr(Z_k^3).  Nothing is assumed to vanish; the split is verified
    against P(Z) directly.
    """
    z = as_matrix(z)
    tol = tol or Tolerance.for_dim(pair.m)
    zk = pair.k_basis.project(z)
    zm = pair.m_basis.project(z)
    off = float(np.linalg.norm(z - zk - zm))
    if off > tol.bound(frobenius_norm(z)):
        raise ValueError(f"probe is not in su(m) (projection residual {off:.3e})")
    pieces = {
        "mmm": (2.0j * np.einsum("ab,bc,ca->", zm, zm, zm)).real,
        "kkm": (6.0j * np.einsum("ab,bc,ca->", zm, zk, zk)).real,
        "mmk": (6.0j * np.einsum("ab,bc,ca->", zk, zm, zm)).real,
        "kkk": (2.0j * np.einsum("ab,bc,ca->", zk, zk, zk)).real,
    }
    total = (2.0j * np.einsum("ab,bc,ca->", z, z, z)).real
    pieces["split_residual"] = abs(total - sum(pieces.values()))
    return pieces


def restricted_components(pair: SymmetricPair, z, tol: Tolerance | None = None) -> tuple[float, float]:
    """(P_mmm(Z), P_kkm(Z)) = (2i tr(Z_m^3), 6i tr(Z_m Z_k^2))."""
    pieces = cubic_split(pair, z, tol)
    return pieces["mmm"], pieces["kkm"]


def norm_restricted(
    pair: SymmetricPair,
    constants: PairConstants | None = None,
    rel_tol: float = 1e-7,
) -> tuple[float, float]:
    """Norms (|P_mmm|^2, |P_kkm|^2), each computed two independent ways.

    Brute force contracts -sum tr({E_i,E_j}E_k)^2 over the complement basis
    and -3 sum tr({Y_i,Y_j}E_k)^2 over the mixed one; the closed route uses
    2m Cas_m (Cas_m - S_mm - 2/m) and 6m Cas_k (Cas_k - S_kk - 2/m) with the
    extracted pair constants.  Disagreement beyond rel_tol raises.
    """
    sig = sigma_tensor(pair)
    mmm_brute = float(np.sum(sig.values**2))
    mixed = _anticommutator_table(pair.k_basis.elements, pair.k_basis.elements)
    tvals = 1.0j * np.einsum("ijab,kba->ijk", mixed, pair.m_basis.elements, optimize=True)
    kkm_brute = 3.0 * float(np.sum(tvals.real**2))

    c = constants or compute_pair_constants(pair)
    m = pair.m
    mmm_formula = 2.0 * m * c.cas_m_def * (-c.s_m_m + c.cas_m_def - 2.0 / m)
    kkm_formula = 6.0 * m * c.cas_k_def * (-c.s_k_k + c.cas_k_def - 2.0 / m)
    for name, brute, formula in (("|P_mmm|^2", mmm_brute, mmm_formula), ("|P_kkm|^2", kkm_brute, kkm_formula)):
        if abs(brute - formula) > rel_tol * max(abs(brute), abs(formula), 1.0):
            raise ArithmeticError(f"{name} mismatch: contraction {brute!r} vs constants route {formula!r}")
    return mmm_brute, kkm_brute


@dataclass
class CubicEvaluation:
    """One evaluation of the restricted cubics and the obstruction polynomials at Z."""

    p_mmm: float
    p_kkm: float
    q: float
    r1: float
    r2: float
    r3: float
    r4: float
    r: float
    at: np.ndarray


def obstruction_polynomials(
    pair: SymmetricPair, z, sigma: SigmaTensor | None = None, tol: Tolerance | None = None
) -> CubicEvaluation:
    """Evaluate Q, R_1..R_4 and R = 2R_1 - 2R_2 - 2R_3 + 2R_4 at Z.

    With s_ij = sigma(Z_m, E_i, E_j) and A the matrix of ad(Z_k) on m:

        Q   = s_ij s_ik s_jk
        R_1 = s_ij (A s)_ikl (A s)_kjl      (A s)_ikl = A_pi sigma_pkl
        R_2 = s_ij (A s)_ikl (A s)_jkl
        R_3 = s_ij sigma_ikl (A^2 s)_jkl    (A^2 s)_jkl = (A A)_pl sigma_jkp
        R_4 = s_ij sigma_ikl (A x A s)_jkl  (A x A s)_jkl = A_pk A_ql sigma_jpq

    repeated indices summed; this is the hot path and stays in einsum.
    """
    z = as_matrix(z)
    tol = tol or Tolerance.for_dim(pair.m)
    sig = sigma or sigma_tensor(pair)
    zk = pair.k_basis.project(z)
    zm = pair.m_basis.project(z)
    off = float(np.linalg.norm(z - zk - zm))
    if off > tol.bound(frobenius_norm(z)):
        raise ValueError(f"probe is not in su(m) (projection residual {off:.3e})")

    e = pair.m_basis.elements
    coords = pair.m_basis.coefficients(zm)
    s = np.einsum("a,aij->ij", coords, sig.values)

    brackets = np.einsum("ab,ibc->iac", zk, e) - np.einsum("iab,bc->iac", e, zk)
    ad_zk = -np.real(np.einsum("iab,pba->pi", brackets, e, optimize=True))

    q = float(np.einsum("ij,ik,jk->", s, s, s, optimize=True))
    sig1 = np.einsum("pi,pkl->ikl", ad_zk, sig.values, optimize=True)
    r1 = float(np.einsum("ij,ikl,kjl->", s, sig1, sig1, optimize=True))
    r2 = float(np.einsum("ij,ikl,jkl->", s, sig1, sig1, optimize=True))
    sig2 = np.einsum("pl,jkp->jkl", ad_zk @ ad_zk, sig.values, optimize=True)
    r3 = float(np.einsum("ij,ikl,jkl->", s, sig.values, sig2, optimize=True))
    sig3 = np.einsum("pk,ql,jpq->jkl", ad_zk, ad_zk, sig.values, optimize=True)
    r4 = float(np.einsum("ij,ikl,jkl->", s, sig.values, sig3, optimize=True))

    p_mmm = (2.0j * np.einsum("ab,bc,ca->", zm, zm, zm)).real
    p_kkm = (6.0j * np.einsum("ab,bc,ca->", zm, zk, zk)).real
    return CubicEvaluation(
        p_mmm=p_mmm,
        p_kkm=p_kkm,
        q=q,
        r1=r1,
        r2=r2,
        r3=r3,
        r4=r4,
        r=2.0 * (r1 - r2 - r3 + r4),
        at=z,
    )


@dataclass
class ObstructionConstants:
    """Proportionality constants and norms assembled into the obstruction coefficient.

    psi_coeff multiplies the cubic form P in the obstruction; it is
    (-E kappa |P_mmm|^2 + 3 lambda |P_kkm|^2) / |P|^2.  `lam_alt` is the
    same lambda recovered through 8 lambda_1 - 4 lambda_3 as a cross-check.
    """

    kappa: float
    lambda1: float
    lambda2: float
    lambda3: float
    lambda4: float
    lam: float
    norm_p: float
    norm_pmmm: float
    norm_pkkm: float
    psi_coeff: float
    spread: float
    lam_alt: float


def extract_constants(
    pair: SymmetricPair,
    seed: int = 0,
    probes: int = 10,
    constants: PairConstants | None = None,
    reject_ratio: float = 0.01,
) -> ObstructionConstants:
    """Extract kappa = Q/P_mmm and lambda_i = R_i/P_kkm from seeded probes.

    Proportionality is exact, so generic probes suffice; probes whose
    denominators fall below reject_ratio * |Z|^3 are discarded for
    conditioning.  The spread field records the worst variation of any
    extracted ratio across probes and is the guard against a false
    proportionality assumption.
    """
    if probes < 3:
        raise ValueError("need at least 3 probes")
    rng = np.random.default_rng(seed)
    sig = sigma_tensor(pair)
    evaluations = []
    attempts = 0
    while len(evaluations) < probes:
        attempts += 1
        if attempts > 200 * probes:
            raise ArithmeticError("probe generation kept hitting degenerate denominators")
        z = random_su(pair.m, rng)
        scale = reject_ratio * frobenius_norm(z) ** 3
        ev = obstruction_polynomials(pair, z, sig)
        if abs(ev.p_mmm) < scale or abs(ev.p_kkm) < scale:
            continue
        evaluations.append(ev)

    ratio_lists = {
        "kappa": [ev.q / ev.p_mmm for ev in evaluations],
        "lambda1": [ev.r1 / ev.p_kkm for ev in evaluations],
        "lambda2": [ev.r2 / ev.p_kkm for ev in evaluations],
        "lambda3": [ev.r3 / ev.p_kkm for ev in evaluations],
        "lambda4": [ev.r4 / ev.p_kkm for ev in evaluations],
        "lam": [ev.r / ev.p_kkm for ev in evaluations],
    }
    means = {name: float(np.mean(vals)) for name, vals in ratio_lists.items()}
    spread = max(max(vals) - min(vals) for vals in ratio_lists.values())

    norm_pmmm, norm_pkkm = norm_restricted(pair, constants)
    norm_p = cubic_norm_contraction(pair.g_basis)
    e_const = pair.einstein_constant
    psi = (-e_const * means["kappa"] * norm_pmmm + 3.0 * means["lam"] * norm_pkkm) / norm_p
    return ObstructionConstants(
        kappa=means["kappa"],
        lambda1=means["lambda1"],
        lambda2=means["lambda2"],
        lambda3=means["lambda3"],
        lambda4=means["lambda4"],
        lam=means["lam"],
        norm_p=norm_p,
        norm_pmmm=norm_pmmm,
        norm_pkkm=norm_pkkm,
        psi_coeff=psi,
        spread=float(spread),
        lam_alt=8.0 * means["lambda1"] - 4.0 * means["lambda3"],
    )


def aux_identity_check(
    pair: SymmetricPair, z, constants: PairConstants | None = None
) -> tuple[float, float]:
    """Residuals of the two auxiliary contraction identities at Z.

    First: sum_i tr({Z_m,{Z_m,{Z_m,E_i}}} E_i) = 2 (3 S_mm - Cas_m) tr(Z_m^3).
    Second: sum_i tr({Z_m,E_i} [Z_k,[Z_k,E_i]]) =
            -2 (Cas_m + 2 S_mk - S_mm) tr(Z_m Z_k^2).
    """
    z = as_matrix(z)
    c = constants or compute_pair_constants(pair)
    zk = pair.k_basis.project(z)
    zm = pair.m_basis.project(z)
    e = pair.m_basis.elements

    def anti(mat, stack):
        return np.einsum("ab,ibc->iac", mat, stack) + np.einsum("iab,bc->iac", stack, mat)

    x1 = anti(zm, e)
    x3 = anti(zm, anti(zm, x1))
    lhs1 = complex(np.einsum("iab,iba->", x3, e))
    rhs1 = 2.0 * (3.0 * c.s_m_m - c.cas_m_def) * complex(np.einsum("ab,bc,ca->", zm, zm, zm))

    b1 = np.einsum("ab,ibc->iac", zk, e) - np.einsum("iab,bc->iac", e, zk)
    b2 = np.einsum("ab,ibc->iac", zk, b1) - np.einsum("iab,bc->iac", b1, zk)
    lhs2 = complex(np.einsum("iab,iba->", x1, b2))
    rhs2 = -2.0 * (c.cas_m_def + 2.0 * c.s_m_k - c.s_m_m) * complex(np.einsum("ab,bc,ca->", zm, zk, zk))
    return abs(lhs1 - rhs1), abs(lhs2 - rhs2)


def cubic_casimir_check(m: int, rel_tol: float = 1e-7) -> tuple[float, float]:
    """Trace of the cubic Casimir on C^m and its eigenvalue mu_3.

    The element is -sum tr({X_i,X_j}X_k) X_i X_j X_k over an orthonormal
    su(m) basis; its trace must be half the brute-force |P|^2, and the
    returned eigenvalue satisfies |P|^2 = 2 m mu_3.
    """
    if m < 3:
        raise ValueError("the cubic Casimir check needs m >= 3")
    basis = su_basis(m)
    e = basis.elements
    table = _anticommutator_table(e, e)
    t = np.einsum("ijab,kba->ijk", table, e, optimize=True)
    c3 = -np.einsum("ijk,iab,jbc,kcd->ad", t, e, e, e, optimize=True)
    trace = complex(np.trace(c3))
    mu3 = trace.real / m
    scalar_residual = float(np.abs(c3 - mu3 * np.eye(m)).max())
    if scalar_residual > 1e-8 * max(1.0, abs(mu3)):
        raise ArithmeticError(f"cubic Casimir not scalar on C^m (residual {scalar_residual:.3e})")
    p2 = cubic_norm_contraction(basis)
    if abs(p2 - 2.0 * m * mu3) > rel_tol * max(abs(p2), 1.0):
        raise ArithmeticError(f"|P|^2 = {p2!r} disagrees with 2 m mu_3 = {2 * m * mu3!r}")
    return trace.real, mu3


def invariant_power(x, k: int, tol: Tolerance | None = None) -> float:
    """Re(i^k tr(X^k)), the degree-k invariant polynomial generator of su(m)."""
    x = as_matrix(x)
    m = x.shape[0]
    if not 2 <= k <= m:
        raise ValueError(f"degree {k} out of the generator range 2..{m}")
    tol = tol or Tolerance.for_dim(m)
    acc = x
    for _ in range(k - 2):
        acc = acc @ x
    t = complex(np.einsum("ab,ba->", acc, x))
    value = (1.0j) ** k * t
    if abs(value.imag) > tol.bound(abs(value)):
        raise ValueError(f"invariant power came out non-real (imaginary part {value.imag:.3e})")
    return value.real
