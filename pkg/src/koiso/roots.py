"""Root-system data pinned to concrete matrix realizations.

The weight-space inner product is not taken from any abstract normalization:
for each algebra we write down Cartan generators H_j as explicit matrices,
take their Gram matrix under -tr(XY), and invert it.  Weight coordinates u
are defined by lambda(H_j) = i u_j, so the Casimir eigenvalue on the
irreducible module with highest weight lambda is (lambda + 2 rho) G^-1 lambda.
"""

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

__all__ = [
    "RootSystemData",
    "su_root_system",
    "so_root_system",
    "sp_root_system",
    "freudenthal_eigenvalue",
    "su_weights",
    "so_weights",
    "sp_weights",
]

Coord = tuple[Fraction, ...]


@dataclass(frozen=True)
class RootSystemData:
    series: str
    rank: int
    positive_roots: tuple[Coord, ...]
    dual_gram: np.ndarray
    rho: Coord

    def __post_init__(self):
        half_sum = _half_sum(self.positive_roots, self.rank)
        if half_sum != self.rho:
            raise ValueError("rho is not half the sum of positive roots")

    def pairing(self, a: Coord, b: Coord) -> float:
        av = np.array([float(x) for x in a])
        bv = np.array([float(x) for x in b])
        return float(av @ self.dual_gram @ bv)


def _half_sum(roots, rank) -> Coord:
    total = [Fraction(0)] * rank
    for r in roots:
        for j, x in enumerate(r):
            total[j] += x
    return tuple(x / 2 for x in total)


def _unit(rank: int, j: int, value=1) -> Coord:
    v = [Fraction(0)] * rank
    v[j] = Fraction(value)
    return tuple(v)


def _sub(a: Coord, b: Coord) -> Coord:
    return tuple(x - y for x, y in zip(a, b))


def _add(a: Coord, b: Coord) -> Coord:
    return tuple(x + y for x, y in zip(a, b))


def _dual_gram(cartan_generators) -> np.ndarray:
    h = np.stack(cartan_generators)
    gram = -np.real(np.einsum("iab,jba->ij", h, h))
    return np.linalg.inv(gram)


def su_root_system(m: int) -> RootSystemData:
    """A-series data for su(m), Cartan generators i(e_jj - e_{j+1,j+1})."""
    if m < 2:
        raise ValueError("su(m) needs m >= 2")
    rank = m - 1
    gens = []
    for j in range(rank):
        h = np.zeros((m, m), dtype=complex)
        h[j, j] = 1.0j
        h[j + 1, j + 1] = -1.0j
        gens.append(h)
    eps = [_coordinate_weight(rank, k) for k in range(m)]
    positive = tuple(_sub(eps[a], eps[b]) for a in range(m) for b in range(a + 1, m))
    return RootSystemData("A", rank, positive, _dual_gram(gens), _half_sum(positive, rank))


def _coordinate_weight(rank: int, k: int) -> Coord:
    # weight of the standard basis vector e_k under H_j = i(e_jj - e_{j+1,j+1})
    v = [Fraction(0)] * rank
    if k < rank:
        v[k] = Fraction(1)
    if k >= 1:
        v[k - 1] = Fraction(-1)
    return tuple(v)


def so_root_system(n: int) -> RootSystemData:
    """B- or D-series data for so(n), chosen by parity; rank floor(n/2).

    Cartan generators are the plane rotation generators e_{2j,2j+1}-e_{2j+1,2j};
    the coordinate functionals come out as unit vectors.
    """
    if n < 3:
        raise ValueError("so(n) root data needs n >= 3")
    rank = n // 2
    gens = []
    for j in range(rank):
        h = np.zeros((n, n), dtype=complex)
        h[2 * j, 2 * j + 1] = 1.0
        h[2 * j + 1, 2 * j] = -1.0
        gens.append(h)
    positive = []
    for i in range(rank):
        for j in range(i + 1, rank):
            positive.append(_sub(_unit(rank, i), _unit(rank, j)))
            positive.append(_add(_unit(rank, i), _unit(rank, j)))
    series = "D"
    if n % 2 == 1:
        series = "B"
        positive.extend(_unit(rank, i) for i in range(rank))
    positive = tuple(positive)
    return RootSystemData(series, rank, positive, _dual_gram(gens), _half_sum(positive, rank))


def sp_root_system(n: int) -> RootSystemData:
    """C-series data for sp(n) inside su(2n), Cartan i(e_jj - e_{n+j,n+j})."""
    if n < 1:
        raise ValueError("sp(n) needs n >= 1")
    rank = n
    gens = []
    for j in range(rank):
        h = np.zeros((2 * n, 2 * n), dtype=complex)
        h[j, j] = 1.0j
        h[n + j, n + j] = -1.0j
        gens.append(h)
    positive = []
    for i in range(rank):
        for j in range(i + 1, rank):
            positive.append(_sub(_unit(rank, i), _unit(rank, j)))
            positive.append(_add(_unit(rank, i), _unit(rank, j)))
    positive.extend(_unit(rank, i, 2) for i in range(rank))
    positive = tuple(positive)
    return RootSystemData("C", rank, positive, _dual_gram(gens), _half_sum(positive, rank))


def su_weights(m: int) -> dict:
    """Highest weights, in the su(m) coordinates, of the modules used here."""
    rank = m - 1
    eps = [_coordinate_weight(rank, k) for k in range(m)]
    return {
        "defining": eps[0],
        "adjoint": _sub(eps[0], eps[m - 1]),
    }


def so_weights(n: int) -> dict:
    """Vector, adjoint and trace-free symmetric square highest weights of so(n)."""
    rank = n // 2
    e1 = _unit(rank, 0)
    adjoint = _add(e1, _unit(rank, 1)) if rank >= 2 else e1
    return {
        "defining": e1,
        "adjoint": adjoint,
        "sym2_traceless": _unit(rank, 0, 2),
    }


def sp_weights(n: int) -> dict:
    """Defining, adjoint and trace-free Lambda^2 highest weights of sp(n)."""
    e1 = _unit(n, 0)
    return {
        "defining": e1,
        "adjoint": _unit(n, 0, 2),
        "lambda2_traceless": _add(e1, _unit(n, 1)) if n >= 2 else None,
    }


def freudenthal_eigenvalue(root_data: RootSystemData, highest_weight) -> float:
    """Casimir eigenvalue <lambda + 2 rho, lambda> on the module V_lambda.

    The weight must be dominant: nonnegative pairing with every positive root.
    """
    lam = tuple(Fraction(x) for x in highest_weight)
    if len(lam) != root_data.rank:
        raise ValueError(f"weight has {len(lam)} coordinates, expected {root_data.rank}")
    for alpha in root_data.positive_roots:
        if root_data.pairing(lam, alpha) < -1e-12:
            raise ValueError(f"weight {highest_weight} is not dominant (negative on root {alpha})")
    shifted = _add(lam, tuple(2 * x for x in root_data.rho))
    return root_data.pairing(shifted, lam)
