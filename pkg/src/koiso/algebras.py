"""Orthonormal bases of su(m) and the two Cartan decompositions.

Family AI is so(n) inside su(n) (fixed points of entrywise conjugation),
family AII is sp(n) inside su(2n) (fixed points of X -> J conj(X) J^-1 with
J = [[0, I], [-I, 0]]).  Bases are built by projecting the canonical su(m)
basis onto the involution eigenspaces and orthonormalizing in canonical
order, which keeps every downstream floating-point sum reproducible.
"""

from dataclasses import dataclass, field

import numpy as np

from .matrices import DimensionMismatchError, Tolerance, as_matrix

__all__ = [
    "Family",
    "OrthonormalBasis",
    "SymmetricPair",
    "NonProportionalError",
    "su_basis",
    "cartan_decomposition",
    "involution",
    "structure_constants",
    "killing_form_ratio",
    "pair_residuals",
    "quaternionic_sp_basis",
]

AI = "AI"
AII = "AII"


@dataclass(frozen=True)
class Family:
    """One of the two symmetric-pair families, indexed by n >= 3."""

    tag: str
    n: int

    def __post_init__(self):
        if self.tag not in (AI, AII):
            raise ValueError(f"unknown family tag {self.tag!r}")
        if self.n < 3:
            raise ValueError("families are only defined for n >= 3")

    @property
    def m(self) -> int:
        """Ambient matrix size: n for AI, 2n for AII."""
        return self.n if self.tag == AI else 2 * self.n

    @property
    def dim_k(self) -> int:
        return self.n * (self.n - 1) // 2 if self.tag == AI else self.n * (2 * self.n + 1)

    @property
    def dim_m(self) -> int:
        return (self.n - 1) * (self.n + 2) // 2 if self.tag == AI else (self.n - 1) * (2 * self.n + 1)


@dataclass
class OrthonormalBasis:
    """Ordered orthonormal family in su(m) under the inner product -tr(XY).

    `elements` is stacked with shape (dim, m, m); iteration yields matrices.
    """

    ambient_dim: int
    elements: np.ndarray
    label: str

    def __post_init__(self):
        self.elements = np.asarray(self.elements, dtype=complex)
        if self.elements.ndim != 3 or self.elements.shape[1:] != (self.ambient_dim,) * 2:
            raise DimensionMismatchError(
                f"basis elements must have shape (dim, {self.ambient_dim}, {self.ambient_dim})"
            )

    def __len__(self) -> int:
        return self.elements.shape[0]

    def __iter__(self):
        return iter(self.elements)

    def __getitem__(self, i):
        return self.elements[i]

    def gram(self) -> np.ndarray:
        return -np.real(np.einsum("iab,jba->ij", self.elements, self.elements, optimize=True))

    def gram_residual(self) -> float:
        return float(np.abs(self.gram() - np.eye(len(self))).max())

    def coefficients(self, x) -> np.ndarray:
        """Coordinates <x, X_i> of x with respect to this basis."""
        return -np.real(np.einsum("ab,iba->i", as_matrix(x), self.elements))

    def project(self, x) -> np.ndarray:
        """Orthogonal projection of x onto the span of this basis."""
        return np.einsum("i,iab->ab", self.coefficients(x), self.elements)

    def residual_outside(self, x) -> float:
        """Frobenius norm of the component of x outside the span."""
        return float(np.linalg.norm(as_matrix(x) - self.project(x)))


@dataclass
class SymmetricPair:
    """Cartan decomposition su(m) = k + m with orthonormal bases of all three."""

    family: Family
    m: int
    g_basis: OrthonormalBasis
    k_basis: OrthonormalBasis
    m_basis: OrthonormalBasis
    einstein_constant: float
    dim_m: int = field(init=False)

    def __post_init__(self):
        self.dim_m = len(self.m_basis)
        if len(self.k_basis) + len(self.m_basis) != self.m**2 - 1:
            raise ValueError("k and m bases do not fill su(m)")


class NonProportionalError(ArithmeticError):
    """Killing form is not a multiple of the trace form on the given span."""


def su_basis(m: int) -> OrthonormalBasis:
    """Canonical orthonormal basis of su(m) under -tr(XY).

    Ordering: real off-diagonal pairs (e_ab - e_ba)/sqrt2 for a < b, then
    imaginary pairs i(e_ab + e_ba)/sqrt2, then diagonal elements
    i diag(1,..,1,-k,0,..)/sqrt(k(k+1)) for k = 1..m-1.
    """
    if m < 2:
        raise ValueError("su(m) needs m >= 2")
    elems = []
    for a in range(m):
        for b in range(a + 1, m):
            x = np.zeros((m, m), dtype=complex)
            x[a, b] = 1.0
            x[b, a] = -1.0
            elems.append(x / np.sqrt(2.0))
    for a in range(m):
        for b in range(a + 1, m):
            x = np.zeros((m, m), dtype=complex)
            x[a, b] = 1.0j
            x[b, a] = 1.0j
            elems.append(x / np.sqrt(2.0))
    for k in range(1, m):
        d = np.zeros(m)
        d[:k] = 1.0
        d[k] = -float(k)
        elems.append(1.0j * np.diag(d) / np.sqrt(k * (k + 1.0)))
    return OrthonormalBasis(m, np.stack(elems), f"su({m})")


def _symplectic_j(n: int) -> np.ndarray:
    eye = np.eye(n)
    zero = np.zeros((n, n))
    return np.block([[zero, eye], [-eye, zero]]).astype(complex)


def involution(family: Family):
    """The Cartan involution on su(m) for the given family, as a callable."""
    if family.tag == AI:
        return lambda x: np.conj(x)
    j = _symplectic_j(family.n)
    jinv = j.T  # J is real orthogonal with J^-1 = J^T = -J
    return lambda x: j @ np.conj(x) @ jinv


def _orthonormalize(candidates, drop_tol: float = 1e-8) -> np.ndarray:
    """Modified Gram-Schmidt under -tr(XY), dropping dependent vectors.

    Candidate vectors are either O(1) away from the accepted span or
    numerically inside it, so any drop threshold well below 1/2 is safe.
    """
    kept = []
    for x in candidates:
        if np.linalg.norm(x) < 1e-12:
            continue
        y = np.array(x, dtype=complex)
        for e in kept:
            y -= -np.real(np.einsum("ab,ba->", y, e)) * e
        nrm = np.linalg.norm(y)
        if nrm < drop_tol:
            continue
        kept.append(y / nrm)
    return np.stack(kept)


def cartan_decomposition(family: Family) -> SymmetricPair:
    """Build the symmetric pair su(m) = k + m for family AI or AII.

    k and m are the +1 and -1 eigenspaces of the involution; both bases come
    from projecting the canonical su(m) basis with (1 +- theta)/2.  The
    Einstein constant of the corresponding symmetric metric is m.
    """
    m = family.m
    g = su_basis(m)
    theta = involution(family)
    theta_elems = np.stack([theta(x) for x in g.elements])
    k_elems = _orthonormalize((g.elements + theta_elems) / 2.0)
    m_elems = _orthonormalize((g.elements - theta_elems) / 2.0)
    if k_elems.shape[0] != family.dim_k or m_elems.shape[0] != family.dim_m:
        raise ArithmeticError(
            f"eigenspace dimensions ({k_elems.shape[0]}, {m_elems.shape[0]}) do not match "
            f"({family.dim_k}, {family.dim_m}) for {family.tag}, n={family.n}"
        )
    k_label = f"so({family.n})" if family.tag == AI else f"sp({family.n})"
    return SymmetricPair(
        family=family,
        m=m,
        g_basis=g,
        k_basis=OrthonormalBasis(m, k_elems, k_label),
        m_basis=OrthonormalBasis(m, m_elems, f"m[{family.tag},{family.n}]"),
        einstein_constant=float(m),
    )


def quaternionic_sp_basis(n: int) -> OrthonormalBasis:
    """Explicit sp(n) basis from the quaternionic block form [[A, B], [-conj(B), conj(A)]].

    A runs over anti-Hermitian n x n matrices, B over complex symmetric ones.
    Used as an independent cross-check of the involution-built k basis.
    """
    blocks = []

    def embed(a, b):
        return np.block([[a, b], [-np.conj(b), np.conj(a)]])

    zero = np.zeros((n, n), dtype=complex)
    # A anti-Hermitian: off-diagonal real/imag pairs, then imaginary diagonal.
    for p in range(n):
        for q in range(p + 1, n):
            a = np.zeros((n, n), dtype=complex)
            a[p, q], a[q, p] = 1.0, -1.0
            blocks.append(embed(a, zero))
            a = np.zeros((n, n), dtype=complex)
            a[p, q] = a[q, p] = 1.0j
            blocks.append(embed(a, zero))
    for p in range(n):
        a = np.zeros((n, n), dtype=complex)
        a[p, p] = 1.0j
        blocks.append(embed(a, zero))
    # B complex symmetric.
    for p in range(n):
        for q in range(p, n):
            for unit in (1.0, 1.0j):
                b = np.zeros((n, n), dtype=complex)
                b[p, q] = b[q, p] = unit
                blocks.append(embed(zero, b))
    return OrthonormalBasis(2 * n, _orthonormalize(blocks), f"sp({n})-quaternionic")


def structure_constants(basis: OrthonormalBasis, tol: Tolerance | None = None) -> np.ndarray:
    """c[i, j, k] = <[X_i, X_j], X_k>, totally antisymmetric for a subalgebra basis."""
    e = basis.elements
    tol = tol or Tolerance.for_dim(basis.ambient_dim)
    prod = np.einsum("iab,jbc->ijac", e, e, optimize=True)
    brackets = prod - np.transpose(prod, (1, 0, 2, 3))
    c = -np.einsum("ijab,kba->ijk", brackets, e, optimize=True)
    imag = float(np.abs(c.imag).max())
    if imag > tol.bound(float(np.abs(c.real).max())):
        raise ValueError(f"structure constants not real (residual {imag:.3e})")
    return np.ascontiguousarray(c.real)


def bracket_closure_residual(basis: OrthonormalBasis) -> float:
    """How far [X_i, X_j] sticks out of the span of the basis."""
    e = basis.elements
    prod = np.einsum("iab,jbc->ijac", e, e, optimize=True)
    brackets = prod - np.transpose(prod, (1, 0, 2, 3))
    c = -np.real(np.einsum("ijab,kba->ijk", brackets, e, optimize=True))
    recon = np.einsum("ijk,kab->ijab", c, e, optimize=True)
    return float(np.abs(brackets - recon).max())


def killing_form_ratio(basis: OrthonormalBasis, tol: Tolerance | None = None) -> float:
    """Constant c with tr(ad X ad Y) = c tr(XY) on the spanned subalgebra.

    Built from ad-matrices in the given basis.  Raises NonProportionalError
    when the Killing Gram matrix is not a multiple of the trace Gram matrix,
    or when the basis does not close under brackets.
    """
    tol = tol or Tolerance.for_dim(basis.ambient_dim)
    closure = bracket_closure_residual(basis)
    if closure > tol.bound():
        raise NonProportionalError(f"basis does not span a subalgebra (closure residual {closure:.3e})")
    c = structure_constants(basis, tol)
    ad = np.transpose(c, (0, 2, 1))  # ad[i][k, j] = c[i, j, k]
    killing = np.einsum("ikl,jlk->ij", ad, ad, optimize=True)
    ratio = -float(np.trace(killing)) / len(basis)
    residual = float(np.abs(killing + ratio * np.eye(len(basis))).max())
    if residual > tol.bound(abs(ratio)):
        raise NonProportionalError(f"Killing form not proportional to trace form (residual {residual:.3e})")
    return ratio


def _span_residual(stack: np.ndarray, basis: OrthonormalBasis) -> float:
    """Max Frobenius distance of each matrix in `stack` from span(basis)."""
    flat = stack.reshape(-1, *stack.shape[-2:])
    coeffs = -np.real(np.einsum("xab,iba->xi", flat, basis.elements, optimize=True))
    recon = np.einsum("xi,iab->xab", coeffs, basis.elements, optimize=True)
    return float(np.linalg.norm(flat - recon, axis=(1, 2)).max())


def pair_residuals(pair: SymmetricPair) -> dict:
    """Structural residuals of a symmetric pair, all ~0 for a valid decomposition.

    Covers orthonormality, k orthogonal to m, bracket closure of the three
    sectors, the anticommutator inclusions {m,m}, {k,k} in i*m + R*Id and
    {m,k} in i*k, and completeness of the involution eigenspace projections.
    """
    k, mb, g = pair.k_basis, pair.m_basis, pair.g_basis
    ke, me = k.elements, mb.elements
    eye = np.eye(pair.m, dtype=complex)
    out = {
        "gram_g": g.gram_residual(),
        "gram_k": k.gram_residual(),
        "gram_m": mb.gram_residual(),
        "k_perp_m": float(np.abs(np.einsum("iab,jba->ij", ke, me, optimize=True)).max()),
    }

    def bracket(a, b):
        return np.einsum("iab,jbc->ijac", a, b, optimize=True) - np.einsum("jab,ibc->ijac", b, a, optimize=True)

    out["closure_kk_in_k"] = _span_residual(bracket(ke, ke), k)
    out["closure_km_in_m"] = _span_residual(bracket(ke, me), mb)
    out["closure_mm_in_k"] = _span_residual(bracket(me, me), k)

    def anti(a, b):
        return np.einsum("iab,jbc->ijac", a, b, optimize=True) + np.einsum("jab,ibc->ijac", b, a, optimize=True)

    def into_im_plus_id(stack):
        # remove the trace part, rotate i*m to m, then test membership in span(m)
        traces = np.einsum("ijaa->ij", stack) / pair.m
        tracefree = stack - traces[..., None, None] * eye
        return _span_residual(-1j * tracefree, mb)

    out["anticomm_mm"] = into_im_plus_id(anti(me, me))
    out["anticomm_kk"] = into_im_plus_id(anti(ke, ke))
    out["anticomm_mk"] = _span_residual(-1j * anti(me, ke), k)

    theta = involution(pair.family)
    theta_g = np.stack([theta(x) for x in g.elements])
    plus = (g.elements + theta_g) / 2.0
    minus = (g.elements - theta_g) / 2.0
    out["eigenspace_complete"] = float(np.abs(plus + minus - g.elements).max())
    out["eigenspace_plus_in_k"] = _span_residual(plus, k)
    out["eigenspace_minus_in_m"] = _span_residual(minus, mb)
    return out
