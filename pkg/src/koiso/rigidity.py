"""The critical variety, the rigidity verdict, and third-variation scalars.

An element X of su(m) parametrizes a deformation that survives to second
order exactly when X^2 = (tr(X^2)/m) Id.  For odd m that variety is just the
origin, which upgrades a nonzero obstruction coefficient to full rigidity;
for even m a one-parameter family of witnesses exists.
"""

from dataclasses import dataclass

import numpy as np

from .algebras import Family, OrthonormalBasis, su_basis
from .matrices import Tolerance, as_matrix, frobenius_norm, random_special_unitary, random_su

__all__ = [
    "RIGID_SECOND_ORDER",
    "PARTIAL_INTEGRABILITY",
    "RigidityVerdict",
    "variety_membership",
    "criticality_check",
    "variety_witness",
    "odd_m_spectral_argument",
    "eh_third_variation",
    "nu_third_variation",
    "criticality_variety_agreement",
    "rigidity_verdict",
]

RIGID_SECOND_ORDER = "RIGID_SECOND_ORDER"
PARTIAL_INTEGRABILITY = "PARTIAL_INTEGRABILITY"


@dataclass
class RigidityVerdict:
    family: Family
    m: int
    psi_coeff: float
    variety_trivial: bool
    verdict: str
    witness: np.ndarray | None


def variety_membership(x, tol: Tolerance | None = None) -> bool:
    """Whether X^2 = (tr(X^2)/m) Id within tolerance (Frobenius residual).

    The threshold scales with |X|^2 so the verdict is invariant under
    rescaling of X.
    """
    x = as_matrix(x)
    m = x.shape[0]
    tol = tol or Tolerance.for_dim(m)
    square = x @ x
    scalar = np.trace(square) / m
    residual = float(np.linalg.norm(square - scalar * np.eye(m)))
    return residual <= tol.bound(frobenius_norm(x) ** 2)


def criticality_check(x, basis: OrthonormalBasis, tol: Tolerance | None = None) -> bool:
    """Whether P(X, X, K) = 2 i tr(X^2 K) vanishes for every basis element K.

    The tolerance is scaled by |X|^2 since the gradient of a cubic is
    quadratic; X = 0 passes trivially.
    """
    x = as_matrix(x)
    if x.shape[0] != basis.ambient_dim:
        raise ValueError("probe dimension does not match the basis")
    tol = tol or Tolerance.for_dim(x.shape[0])
    square = x @ x
    grads = 2.0 * np.real(1.0j * np.einsum("ab,kba->k", square, basis.elements, optimize=True))
    return float(np.abs(grads).max()) <= tol.bound(frobenius_norm(x) ** 2)


def variety_witness(m: int) -> np.ndarray | None:
    """A unit-norm variety member for even m; None for odd m.

    For even m, i/sqrt(m) diag(1,..,1,-1,..,-1) with equal halves squares to
    -(1/m) Id and is trace-free.  For odd m the variety is only the origin.
    """
    if m < 2:
        raise ValueError("witness construction needs m >= 2")
    if m % 2 == 1:
        return None
    half = m // 2
    diag = np.concatenate([np.ones(half), -np.ones(half)])
    return 1.0j * np.diag(diag) / np.sqrt(m)


def odd_m_spectral_argument(x, tol: Tolerance | None = None) -> bool:
    """Certify that an odd-m variety member is numerically zero.

    X^2 = c Id with c = tr(X^2)/m <= 0 forces eigenvalues +-i sqrt(-c) in
    equal multiplicities when c < 0, impossible for odd m with tr(X) = 0; so
    the only consistent member is X = 0.  A member with substantial norm
    therefore signals a tolerance misconfiguration and raises.
    """
    x = as_matrix(x)
    m = x.shape[0]
    if m % 2 == 0:
        raise ValueError("the spectral argument applies to odd m only")
    tol = tol or Tolerance.for_dim(m)
    if not variety_membership(x, tol):
        raise ValueError("input does not satisfy variety membership")
    nrm = frobenius_norm(x)
    if nrm < tol.bound(1.0):
        return True
    scalar = float(np.real(np.trace(x @ x))) / m
    raise ArithmeticError(
        f"odd-m variety member with norm {nrm:.3e} and c = {scalar:.3e}; "
        "equal +-i sqrt(-c) multiplicities cannot fit an odd dimension, "
        "so the membership tolerance must be misconfigured"
    )


def eh_third_variation(psi_value: float) -> float:
    """Third variation of the total-scalar-curvature action: -psi/2."""
    return -psi_value / 2.0


def nu_third_variation(psi_value: float, einstein_constant: float, d: int) -> float:
    """Third variation of the shrinker entropy: -E^(d/2) / (4 E (2 pi)^(d/2)) psi."""
    if einstein_constant <= 0:
        raise ValueError("the entropy conversion needs a positive Einstein constant")
    if d < 2:
        raise ValueError("manifold dimension must be at least 2")
    coeff = -(einstein_constant ** (d / 2.0)) / (4.0 * einstein_constant * (2.0 * np.pi) ** (d / 2.0))
    return coeff * psi_value


def criticality_variety_agreement(m: int, seed: int = 0, probes: int = 200) -> tuple[int, int]:
    """Compare the two characterizations on seeded probes plus witnesses.

    Returns (disagreements, candidates).  Candidates are random su(m)
    elements (generically outside the variety) together with the witness, a
    rescaling and a special-unitary conjugate of it when m is even.
    """
    rng = np.random.default_rng(seed)
    basis = su_basis(m)
    candidates = [random_su(m, rng) for _ in range(probes)]
    candidates.append(np.zeros((m, m), dtype=complex))
    witness = variety_witness(m)
    if witness is not None:
        g = random_special_unitary(m, rng)
        candidates.extend([witness, 2.5 * witness, g @ witness @ g.conj().T])
    disagreements = sum(
        1 for x in candidates if variety_membership(x) != criticality_check(x, basis)
    )
    return disagreements, len(candidates)


def rigidity_verdict(family: Family, psi_coeff: float, tol: Tolerance | None = None) -> RigidityVerdict:
    """Assemble the verdict from the upstream obstruction coefficient.

    RIGID_SECOND_ORDER requires both a nonzero coefficient and a trivial
    variety (odd ambient dimension); otherwise some deformations survive to
    second order and the verdict is PARTIAL_INTEGRABILITY.
    """
    m = family.m
    tol = tol or Tolerance.for_dim(m)
    witness = variety_witness(m)
    if witness is not None and not variety_membership(witness, tol):
        raise ArithmeticError("constructed witness failed variety membership")
    variety_trivial = witness is None
    nonzero = abs(psi_coeff) > tol.bound(1.0)
    verdict = RIGID_SECOND_ORDER if (nonzero and variety_trivial) else PARTIAL_INTEGRABILITY
    return RigidityVerdict(
        family=family,
        m=m,
        psi_coeff=psi_coeff,
        variety_trivial=variety_trivial,
        verdict=verdict,
        witness=witness,
    )
