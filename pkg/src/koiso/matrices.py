"""Dense complex matrix kernels: anticommutators, traces, projections.

Everything operates on plain complex ndarrays and is pure. These are the
innermost primitives that every Lie-algebra contraction in the package
reduces to; matrices are small (side length <= ~16) and kept dense.
"""

from dataclasses import dataclass

import numpy as np
import scipy.linalg

__all__ = [
    "DimensionMismatchError",
    "Tolerance",
    "as_matrix",
    "frobenius_norm",
    "is_anti_hermitian",
    "anticommutator",
    "trace_inner_product",
    "tracefree_projection",
    "product_trace",
    "random_su",
    "random_special_unitary",
]


class DimensionMismatchError(ValueError):
    """Raised when matrix operands have incompatible shapes."""


@dataclass(frozen=True)
class Tolerance:
    """Comparison budget: a and b agree when |a - b| <= abs + rel * max(|a|, |b|)."""

    abs: float = 1e-9
    rel: float = 1e-9

    def __post_init__(self):
        if not (np.isfinite(self.abs) and np.isfinite(self.rel)):
            raise ValueError("tolerance bounds must be finite")
        if self.abs < 0.0 or self.rel < 0.0:
            raise ValueError("tolerance bounds must be nonnegative")

    @classmethod
    def for_dim(cls, dim: int) -> "Tolerance":
        """Default budget for dim x dim matrices; absolute part scales with dim."""
        return cls(abs=1e-9 * dim, rel=1e-9)

    def close(self, a: float, b: float) -> bool:
        return abs(a - b) <= self.abs + self.rel * max(abs(a), abs(b))

    def bound(self, scale: float = 1.0) -> float:
        """Largest residual accepted at the given scale."""
        return self.abs + self.rel * abs(scale)


def as_matrix(a) -> np.ndarray:
    """Coerce to a square complex matrix, without copying when already one."""
    mat = np.asarray(a, dtype=complex)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise DimensionMismatchError(f"expected a square matrix, got shape {mat.shape}")
    return mat


def _common_dim(*mats: np.ndarray) -> int:
    dims = {mat.shape[0] for mat in mats}
    if len(dims) != 1:
        raise DimensionMismatchError(f"mixed matrix dimensions {sorted(dims)}")
    return dims.pop()


def frobenius_norm(x) -> float:
    """Frobenius norm; equals sqrt(-tr(X^2)) for anti-Hermitian X."""
    return float(np.linalg.norm(np.asarray(x)))


def is_anti_hermitian(x, tol: Tolerance | None = None) -> bool:
    """Check X + X^dagger = 0 within tolerance."""
    mat = as_matrix(x)
    tol = tol or Tolerance.for_dim(mat.shape[0])
    defect = float(np.abs(mat + mat.conj().T).max())
    return defect <= tol.bound(float(np.abs(mat).max()))


def anticommutator(a, b) -> np.ndarray:
    """{A, B} = AB + BA."""
    a = as_matrix(a)
    b = as_matrix(b)
    _common_dim(a, b)
    return a @ b + b @ a


def trace_inner_product(x, y, tol: Tolerance | None = None) -> float:
    """Invariant inner product -tr(XY) of anti-Hermitian matrices.

    tr(XY) is real for anti-Hermitian inputs; a residual imaginary part
    beyond tolerance means the inputs were not Lie-algebra elements.
    """
    x = as_matrix(x)
    y = as_matrix(y)
    dim = _common_dim(x, y)
    tol = tol or Tolerance.for_dim(dim)
    t = complex(np.einsum("ab,ba->", x, y))
    if abs(t.imag) > tol.bound(abs(t)):
        raise ValueError(f"tr(XY) has imaginary part {t.imag:.3e}; inputs not anti-Hermitian")
    return -t.real


def tracefree_projection(a) -> np.ndarray:
    """A minus (tr A / m) Id, the trace-free part of A."""
    a = as_matrix(a)
    m = a.shape[0]
    return a - (np.trace(a) / m) * np.eye(m, dtype=complex)


def product_trace(factors) -> complex:
    """Trace of an ordered matrix product.

    The last factor is contracted directly against the accumulated product of
    the preceding ones, so the full product matrix is never materialized.
    """
    mats = [as_matrix(f) for f in factors]
    if not mats:
        raise ValueError("product_trace needs at least one factor")
    _common_dim(*mats)
    if len(mats) == 1:
        return complex(np.trace(mats[0]))
    acc = mats[0]
    for f in mats[1:-1]:
        acc = acc @ f
    return complex(np.einsum("ab,ba->", acc, mats[-1]))


def random_su(m: int, rng: np.random.Generator) -> np.ndarray:
    """Seeded random su(m) element: uniform [-1,1] entries, anti-Hermitized, trace removed."""
    z = rng.uniform(-1.0, 1.0, size=(m, m)) + 1j * rng.uniform(-1.0, 1.0, size=(m, m))
    z = (z - z.conj().T) / 2.0
    return z - (np.trace(z) / m) * np.eye(m, dtype=complex)


def random_special_unitary(m: int, rng: np.random.Generator) -> np.ndarray:
    """exp of a random su(m) element; unitary with unit determinant."""
    return scipy.linalg.expm(random_su(m, rng))
