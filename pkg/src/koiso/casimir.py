"""Quadratic Casimir and sandwich operators, with scalar-eigenvalue extraction.

For an orthonormal basis (X_i) the defining-representation Casimir is the
matrix -sum X_i^2, the adjoint-type Casimir acts by -sum [X_i, [X_i, . ]],
and the sandwich operator sends A to sum X_i A X_i.  Partial variants arise
by summing over the basis of the complement m instead of a subalgebra.

Scalar extraction fits the best least-squares eigenvalue on the target basis
and reports the worst deviation, so accidental reducibility shows up as a
large residual instead of being averaged away.
"""

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .algebras import OrthonormalBasis, SymmetricPair
from .matrices import Tolerance, as_matrix

__all__ = [
    "ScalarConstant",
    "NonScalarError",
    "MatrixOperator",
    "casimir_matrix",
    "casimir_on_defining",
    "casimir_on_subspace",
    "sandwich_apply",
    "sandwich_operator",
    "sandwich_constant",
    "sandwich_casimir_identity_check",
    "partial_casimir_defining",
    "PairConstants",
    "compute_pair_constants",
]


class NonScalarError(ArithmeticError):
    """Operator did not act as a scalar on the requested subspace."""


@dataclass(frozen=True)
class ScalarConstant:
    """A fitted eigenvalue together with the worst off-scalar deviation."""

    value: float
    subspace_label: str
    residual: float


@dataclass(frozen=True)
class MatrixOperator:
    """A linear map on m x m matrices, wrapped for probing and reuse."""

    dim: int
    apply: Callable[[np.ndarray], np.ndarray]


def casimir_matrix(basis: OrthonormalBasis) -> np.ndarray:
    """The matrix -sum X_i^2 of the Casimir on the defining representation."""
    e = basis.elements
    return -np.einsum("iab,ibc->ac", e, e, optimize=True)


def _pairwise_products(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """All products A_i B_j as one BLAS call; shape (da, db, m, m)."""
    da, m, _ = a.shape
    db = b.shape[0]
    flat = a.reshape(da * m, m) @ b.transpose(1, 0, 2).reshape(m, db * m)
    return flat.reshape(da, m, db, m).transpose(0, 2, 1, 3)


def _sum_products_left(a: np.ndarray, table: np.ndarray) -> np.ndarray:
    """sum_i A_i @ T[i, j] over the leading pair index; shape (dj, m, m)."""
    da, dj, m, _ = table.shape
    flat = a.transpose(1, 0, 2).reshape(m, da * m) @ table.transpose(0, 2, 1, 3).reshape(da * m, dj * m)
    return flat.reshape(m, dj, m).transpose(1, 0, 2)


def _sum_products_right(table: np.ndarray, a: np.ndarray) -> np.ndarray:
    """sum_i T[i, j] @ A_i over the leading pair index; shape (dj, m, m)."""
    da, dj, m, _ = table.shape
    flat = table.transpose(1, 2, 0, 3).reshape(dj * m, da * m) @ a.reshape(da * m, m)
    return flat.reshape(dj, m, m)


def _fit_scalar(applied: np.ndarray, target: OrthonormalBasis, tol: Tolerance, label: str) -> ScalarConstant:
    coeffs = -np.real(np.einsum("jab,jba->j", applied, target.elements))
    value = float(coeffs.sum()) / len(target)
    residual = float(np.linalg.norm(applied - value * target.elements, axis=(1, 2)).max())
    if residual > tol.bound(abs(value)):
        raise NonScalarError(f"non-scalar action on {label}: eigenvalue {value:.6g}, residual {residual:.3e}")
    return ScalarConstant(value, label, residual)


def casimir_on_defining(basis: OrthonormalBasis, tol: Tolerance | None = None) -> ScalarConstant:
    """Eigenvalue of -sum X_i^2 on C^m; valid for subalgebra and complement bases alike."""
    m = basis.ambient_dim
    tol = tol or Tolerance.for_dim(m)
    cas = casimir_matrix(basis)
    value = float(np.trace(cas).real) / m
    residual = float(np.abs(cas - value * np.eye(m)).max())
    if residual > tol.bound(abs(value)):
        raise NonScalarError(
            f"Casimir of {basis.label} is not scalar on the defining representation "
            f"(eigenvalue {value:.6g}, residual {residual:.3e})"
        )
    return ScalarConstant(value, f"C^{m}", residual)


def _double_bracket(e: np.ndarray, t: np.ndarray) -> np.ndarray:
    """-sum_i [X_i, [X_i, T_j]] for each row T_j of t."""
    inner = _pairwise_products(e, t) - _pairwise_products(t, e).transpose(1, 0, 2, 3)
    return _sum_products_right(inner, e) - _sum_products_left(e, inner)


def casimir_on_subspace(
    acting: OrthonormalBasis, target: OrthonormalBasis, tol: Tolerance | None = None
) -> ScalarConstant:
    """Eigenvalue of the adjoint-type Casimir of `acting` on span(target).

    The residual covers both the off-scalar part and any component of the
    image outside the target span, so a non-invariant target is rejected too.
    """
    tol = tol or Tolerance.for_dim(acting.ambient_dim)
    applied = _double_bracket(acting.elements, target.elements)
    return _fit_scalar(applied, target, tol, target.label)


def sandwich_apply(basis: OrthonormalBasis, a) -> np.ndarray:
    """sum_i X_i A X_i."""
    a = as_matrix(a)
    if a.shape[0] != basis.ambient_dim:
        raise ValueError(f"probe has dimension {a.shape[0]}, basis ambient is {basis.ambient_dim}")
    e = basis.elements
    return np.einsum("iab,bc,icd->ad", e, a, e, optimize=True)


def sandwich_operator(basis: OrthonormalBasis) -> MatrixOperator:
    return MatrixOperator(basis.ambient_dim, lambda a: sandwich_apply(basis, a))


def sandwich_constant(
    acting: OrthonormalBasis, target: OrthonormalBasis, tol: Tolerance | None = None
) -> ScalarConstant:
    """Eigenvalue of A -> sum_i X_i A X_i on span(target).

    Passing the complement basis as `acting` yields the partial sandwich
    constants directly as sums over that basis.
    """
    tol = tol or Tolerance.for_dim(acting.ambient_dim)
    e = acting.elements
    applied = _sum_products_right(_pairwise_products(e, target.elements), e)
    return _fit_scalar(applied, target, tol, target.label)


def sandwich_casimir_identity_check(basis: OrthonormalBasis, probes) -> float:
    """Max deviation of S(A) = (Cas_End(A) - Cas A - A Cas)/2 over the probes."""
    cas = casimir_matrix(basis)
    worst = 0.0
    for a in probes:
        a = as_matrix(a)
        lhs = sandwich_apply(basis, a)
        cas_end = _double_bracket(basis.elements, a[None, :, :])[0]
        rhs = (cas_end - cas @ a - a @ cas) / 2.0
        worst = max(worst, float(np.abs(lhs - rhs).max()))
    return worst


def partial_casimir_defining(pair: SymmetricPair, tol: Tolerance | None = None) -> ScalarConstant:
    """Eigenvalue of -sum E_i^2 over the complement basis, on C^m."""
    return casimir_on_defining(pair.m_basis, tol)


@dataclass(frozen=True)
class PairConstants:
    """Every Casimir/sandwich eigenvalue of a symmetric pair, extracted numerically."""

    cas_g_def: float
    cas_g_adj: float
    cas_k_def: float
    cas_k_k: float
    cas_k_m: float
    cas_m_def: float
    s_g_g: float
    s_k_k: float
    s_k_m: float
    s_m_k: float
    s_m_m: float
    max_residual: float


def compute_pair_constants(pair: SymmetricPair, tol: Tolerance | None = None) -> PairConstants:
    """Extract all scalar constants of the pair from explicit contractions."""
    tol = tol or Tolerance.for_dim(pair.m)
    g, k, mb = pair.g_basis, pair.k_basis, pair.m_basis
    scalars = {
        "cas_g_def": casimir_on_defining(g, tol),
        "cas_g_adj": casimir_on_subspace(g, g, tol),
        "cas_k_def": casimir_on_defining(k, tol),
        "cas_k_k": casimir_on_subspace(k, k, tol),
        "cas_k_m": casimir_on_subspace(k, mb, tol),
        "cas_m_def": casimir_on_defining(mb, tol),
        "s_g_g": sandwich_constant(g, g, tol),
        "s_k_k": sandwich_constant(k, k, tol),
        "s_k_m": sandwich_constant(k, mb, tol),
        "s_m_k": sandwich_constant(mb, k, tol),
        "s_m_m": sandwich_constant(mb, mb, tol),
    }
    return PairConstants(
        **{name: sc.value for name, sc in scalars.items()},
        max_residual=max(sc.residual for sc in scalars.values()),
    )
