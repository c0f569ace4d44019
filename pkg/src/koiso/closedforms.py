"""Closed-form expected values for every reported constant, as exact rationals.

These are the published formulas the numerical contractions are checked
against.  Everything is a Fraction in n so the internal consistency
identities (lambda = 8 lambda_1 - 4 lambda_3, the obstruction coefficient
assembly, norm additivity) can be asserted exactly, not just to tolerance.
"""

from fractions import Fraction

from .algebras import AI, Family

__all__ = ["closed_forms", "cubic_norm_closed"]

F = Fraction


def cubic_norm_closed(m: int) -> Fraction:
    """|P|^2 = 2 (m^2 - 1)(m^2 - 4) / m on su(m)."""
    return F(2 * (m * m - 1) * (m * m - 4), m)


def cubic_casimir_eigenvalue_closed(m: int) -> Fraction:
    """mu_3 = (m^2 - 1)(m^2 - 4) / m^2 on the defining representation."""
    return F((m * m - 1) * (m * m - 4), m * m)


def closed_forms(family: Family) -> dict[str, Fraction]:
    """All expected constants of the pair, keyed by report entry name."""
    n = F(family.n)
    m = F(family.m)
    out: dict[str, Fraction] = {
        "dim_k": F(family.dim_k),
        "dim_m": F(family.dim_m),
        "killing_ratio_g": 2 * m,
        "cas_g_def": (m * m - 1) / m,
        "cas_g_adj": 2 * m,
        "s_g_g": 1 / m,
        "p_norm": cubic_norm_closed(family.m),
    }
    if family.tag == AI:
        out.update(
            killing_ratio_k=n - 2,
            cas_k_def=(n - 1) / 2,
            cas_k_k=n - 2,
            cas_k_m=n,
            s_k_k=F(-1, 2),
            s_k_m=F(1, 2),
            s_m_k=(n + 2) / (2 * n),
            s_m_m=(2 - n) / (2 * n),
            pmmm_norm=(n + 4) * (n + 2) * (n - 1) * (n - 2) / (2 * n),
            pkkm_norm=F(3, 2) * (n + 2) * (n - 1) * (n - 2),
            kappa=(n * n + 4 * n - 24) / (2 * n),
            lam=-(n + 4) * (n * n + 8) / (3 * n),
            psi_coeff=-(n + 4) * (7 * n * n + 4 * n + 24) / (8 * (n + 1)),
        )
    else:
        out.update(
            killing_ratio_k=2 * (n + 1),
            cas_k_def=(2 * n + 1) / 2,
            cas_k_k=2 * (n + 1),
            cas_k_m=2 * n,
            s_k_k=F(1, 2),
            s_k_m=F(-1, 2),
            s_m_k=(1 - n) / (2 * n),
            s_m_m=(n + 1) / (2 * n),
            pmmm_norm=2 * (2 * n + 1) * (n + 1) * (n - 1) * (n - 2) / n,
            pkkm_norm=6 * (2 * n + 1) * (n + 1) * (n - 1),
            kappa=(n * n - 2 * n - 6) / n,
            lam=-4 * (n - 2) * (n * n + 2) / (3 * n),
            psi_coeff=-(n - 2) * (7 * n * n - 2 * n + 6) / (2 * n - 1),
        )
    out["cas_m_def"] = out["dim_m"] / m
    c, k, s = out["cas_m_def"], out["s_m_k"], out["s_m_m"]
    out["lambda1"] = -(c + k - 4 / m) * (c + 2 * k - s) / 3
    out["lambda3"] = (
        -(c * c + 3 * c * k - 3 * c * s - 2 * k * k - k * s + 2 * s * s) / 3
        + (6 * c + 16 * k - 10 * s) / (3 * m)
    )
    out["lambda2"] = -2 * out["lambda1"]
    out["lambda4"] = out["lambda1"] - out["lambda3"]
    return out
