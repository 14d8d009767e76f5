"""Exact finite truncation of the V <-> N+theta sector as an arrowhead matrix.

Discretizing the theta momentum on a radial grid {k_i, w_i} (weights absorb
the 4*pi*k^2 measure) turns the sector Hamiltonian into a real symmetric
arrowhead matrix

    [ m_V0   c_1    c_2   ...  ]
    [ c_1    d_1               ]          d_i = m_N + omega(k_i)
    [ c_2           d_2        ]          c_i = vertex_weight(omega(k_i)) * sqrt(w_i)
    [ ...assumed zero...  d_n  ]

Its eigenvalues with nonvanishing apex component are the roots of the secular
function  s(lam) = m_V0 - lam + sum_i c_i^2 / (lam - d_i),  which is strictly
decreasing between consecutive poles, so every root is bracketed and found by
bisection.  The squared apex component of the normalized eigenvector,
1 / (1 + sum_i c_i^2/(lam - d_i)^2), is the finite-n image of the overlap
probability Z_V; as the grid refines, the lowest eigenpair converges to the
continuum physical mass and Z_V.  This is a genuinely independent route to the
same numbers as the continuum quadrature, which is the point: the two paths
validate each other.

A classical cyclic Jacobi eigensolver over the dense matrix provides a second,
structurally different eigenvalue route for cross-checking the secular
bisection on small truncations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.special import roots_legendre

from .core import BareCoupling, ModelParams, omega, vertex_weight
from .errors import NoConvergence, PoleHit

FOUR_PI = 4.0 * math.pi

UNIFORM_K = "uniform"
GAUSS_LEGENDRE_K = "gauss"
GRID_SCHEMES = (UNIFORM_K, GAUSS_LEGENDRE_K)


@dataclass(frozen=True)
class RadialGrid:
    """Momentum nodes and measure weights; w_i ~ 4*pi*k_i^2 * (dk weight)."""

    k: np.ndarray
    w: np.ndarray
    scheme: str

    def __post_init__(self):
        k = np.asarray(self.k, dtype=float)
        w = np.asarray(self.w, dtype=float)
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "w", w)
        if k.ndim != 1 or w.shape != k.shape or k.size < 1:
            raise ValueError("grid nodes and weights must be 1-d arrays of equal length")
        if not (np.all(k > 0.0) and np.all(np.diff(k) > 0.0)):
            raise ValueError("grid nodes must be positive and strictly increasing")
        if not np.all(w > 0.0):
            raise ValueError("grid weights must be positive")
        k.flags.writeable = False
        w.flags.writeable = False

    @property
    def n(self) -> int:
        return self.k.size


def build_grid(k_max: float, n: int, scheme: str = GAUSS_LEGENDRE_K) -> RadialGrid:
    """Radial grid on (0, k_max]: midpoint nodes or Gauss-Legendre nodes.

    Uniform: k_i = (i - 1/2) dk with w_i = 4 pi k_i^2 dk.  Gauss-Legendre:
    nodes/weights of order n mapped to [0, k_max], again times 4 pi k^2.
    """
    if n < 1:
        raise ValueError("grid size n must be >= 1")
    if not (math.isfinite(k_max) and k_max > 0.0):
        raise ValueError("k_max must be positive and finite")
    if scheme == UNIFORM_K:
        dk = k_max / n
        k = (np.arange(n) + 0.5) * dk
        w_lin = np.full(n, dk)
    elif scheme == GAUSS_LEGENDRE_K:
        x, v = roots_legendre(n)
        k = 0.5 * k_max * (x + 1.0)
        w_lin = 0.5 * k_max * v
    else:
        raise ValueError(f"unknown grid scheme {scheme!r}")
    return RadialGrid(k=k, w=FOUR_PI * k * k * w_lin, scheme=scheme)


@dataclass(frozen=True)
class ArrowheadMatrix:
    """Symmetric arrowhead: apex, continuum diagonal d, apex couplings c."""

    apex: float
    diag: np.ndarray
    coupling: np.ndarray

    def __post_init__(self):
        d = np.asarray(self.diag, dtype=float)
        c = np.asarray(self.coupling, dtype=float)
        object.__setattr__(self, "diag", d)
        object.__setattr__(self, "coupling", c)
        if d.ndim != 1 or c.shape != d.shape or d.size < 1:
            raise ValueError("diag and coupling must be 1-d arrays of equal length")
        if not np.all(np.diff(d) > 0.0):
            raise ValueError("diagonal entries must be strictly increasing")
        d.flags.writeable = False
        c.flags.writeable = False

    @property
    def n(self) -> int:
        return self.diag.size

    def to_dense(self) -> np.ndarray:
        n = self.n
        a = np.zeros((n + 1, n + 1))
        a[0, 0] = self.apex
        a[0, 1:] = self.coupling
        a[1:, 0] = self.coupling
        idx = np.arange(1, n + 1)
        a[idx, idx] = self.diag
        return a


def build_arrowhead(params: ModelParams, bare: BareCoupling,
                    grid: RadialGrid) -> ArrowheadMatrix:
    """Truncated sector Hamiltonian on the given radial grid."""
    om = np.asarray(omega(grid.k, params.mu), dtype=float)
    d = params.m_n + om
    c = np.asarray(vertex_weight(bare.g0, params.form_factor, om, params.mu),
                   dtype=float) * np.sqrt(grid.w)
    return ArrowheadMatrix(apex=bare.m_v0, diag=d, coupling=c)


def _secular(mat: ArrowheadMatrix, lam: float) -> float:
    return mat.apex - lam + float(np.sum(mat.coupling ** 2 / (lam - mat.diag)))


def secular_value(mat: ArrowheadMatrix, lam: float) -> float:
    """s(lam) = apex - lam + sum c_i^2/(lam - d_i); zero exactly at eigenvalues
    with nonvanishing apex component, strictly decreasing between poles."""
    gaps = np.abs(lam - mat.diag)
    scale = np.maximum(np.maximum(np.abs(mat.diag), abs(lam)), 1e-300)
    if np.any(gaps <= 1e-14 * scale):
        raise PoleHit(f"lam = {lam!r} coincides with a continuum diagonal entry")
    return _secular(mat, lam)


def _root_between(mat: ArrowheadMatrix, lo: float, hi: float, tol: float,
                  max_iter: int = 256) -> float:
    """Bisect s on (lo, hi); s > 0 toward lo and s < 0 toward hi.

    The endpoints are never evaluated, so they may be poles of s (the
    bracketing signs there are known from the pole structure).
    """
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            return mid  # float resolution exhausted
        if hi - lo <= tol * max(1.0, abs(mid)):
            return mid
        if _secular(mat, mid) > 0.0:
            lo = mid
        else:
            hi = mid
    raise NoConvergence("secular bisection exceeded its iteration cap")


def _expand_below(mat: ArrowheadMatrix) -> float:
    """Point left of the lowest root where s > 0 (s -> +inf as lam -> -inf)."""
    start = min(mat.apex, float(mat.diag[0]))
    dist = 1.0
    lo = start - dist
    while _secular(mat, lo) <= 0.0:
        dist *= 2.0
        if dist > 2.0 ** 60:
            raise NoConvergence("left bracket expansion for the lowest eigenvalue failed")
        lo = start - dist
    return lo


@dataclass(frozen=True)
class EigenPair:
    """Eigenvalue and squared first component of its normalized eigenvector."""

    energy: float
    apex_weight: float


def lowest_eigenpair(mat: ArrowheadMatrix, tol: float = 1e-12) -> EigenPair:
    """Lowest eigenvalue (below d_1) and its squared apex component.

    Requires either a coupled continuum (some c_i != 0) or an apex already
    below d_1; otherwise the lowest state is a pure continuum mode and carries
    no apex weight.
    """
    d1 = float(mat.diag[0])
    coupled = bool(np.any(mat.coupling != 0.0))
    if not coupled and mat.apex >= d1:
        raise ValueError("decoupled apex does not lie below the continuum block")
    lo = _expand_below(mat)
    lam = _root_between(mat, lo, d1, tol)
    weight = 1.0 / (1.0 + float(np.sum(mat.coupling ** 2 / (lam - mat.diag) ** 2)))
    return EigenPair(energy=lam, apex_weight=weight)


def all_eigenvalues(mat: ArrowheadMatrix, tol: float = 1e-12) -> np.ndarray:
    """All n+1 eigenvalues via per-interval secular bisection.

    With distinct diagonal entries and all couplings nonzero the spectrum
    strictly interlaces the diagonal: lam_0 < d_1 < lam_1 < ... < d_n < lam_n.
    """
    if np.any(mat.coupling == 0.0):
        raise ValueError("all couplings must be nonzero for the interlacing structure")
    d = mat.diag
    roots = [_root_between(mat, _expand_below(mat), float(d[0]), tol)]
    for i in range(mat.n - 1):
        roots.append(_root_between(mat, float(d[i]), float(d[i + 1]), tol))
    # top root: s -> +inf just above d_n and -lam wins far to the right
    start = float(d[-1])
    dist = 1.0
    hi = start + dist
    while _secular(mat, hi) >= 0.0:
        dist *= 2.0
        if dist > 2.0 ** 60:
            raise NoConvergence("right bracket expansion for the top eigenvalue failed")
        hi = start + dist
    roots.append(_root_between(mat, start, hi, tol))
    return np.asarray(roots)


def jacobi_eigenvalues(matrix: np.ndarray, max_sweeps: int = 60) -> np.ndarray:
    """Eigenvalues of a real symmetric matrix by classical cyclic Jacobi sweeps.

    Kept dependency-free on purpose: it is the in-repo cross-check for the
    secular bisection, not a wrapper around a library eigensolver.
    """
    a = np.array(matrix, dtype=float, copy=True)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("matrix must be square")
    n = a.shape[0]
    if not np.allclose(a, a.T, rtol=0.0, atol=1e-12 * max(1.0, float(np.abs(a).max()))):
        raise ValueError("matrix must be symmetric")
    if n == 1:
        return np.array([a[0, 0]])
    anorm = max(float(np.sqrt(np.sum(a * a))), 1e-300)
    for _ in range(max_sweeps):
        off = math.sqrt(2.0 * float(np.sum(np.tril(a, -1) ** 2)))
        if off <= 1e-15 * anorm:
            return np.sort(np.diag(a))
        skip = 1e-20 * anorm
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) <= skip:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                if theta == 0.0:
                    t = 1.0
                else:
                    t = math.copysign(1.0, theta) / (abs(theta) + math.hypot(theta, 1.0))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                row_p, row_q = a[p, :].copy(), a[q, :].copy()
                a[p, :] = c * row_p - s * row_q
                a[q, :] = s * row_p + c * row_q
                col_p, col_q = a[:, p].copy(), a[:, q].copy()
                a[:, p] = c * col_p - s * col_q
                a[:, q] = s * col_p + c * col_q
    raise NoConvergence(f"Jacobi did not converge within {max_sweeps} sweeps")


def dense_cross_check(mat: ArrowheadMatrix) -> np.ndarray:
    """Eigenvalues of the dense arrowhead by the in-repo Jacobi solver.

    Intended as the independent mate of :func:`all_eigenvalues` on small
    truncations; n is capped because Jacobi cost grows like n^3 per sweep.
    """
    if mat.n > 256:
        raise ValueError("dense cross-check is limited to n <= 256")
    return jacobi_eigenvalues(mat.to_dense())


def convergence_study(params: ModelParams, bare: BareCoupling,
                      n_list: Sequence[int], k_max: float,
                      scheme: str = GAUSS_LEGENDRE_K,
                      tol: float = 1e-12) -> list[tuple[int, float, float]]:
    """Lowest eigenpair for a ladder of truncation sizes.

    Returns (n, lowest eigenvalue, apex weight) per entry; as n grows these
    converge to the continuum physical mass and Z_V, which certifies the
    discretization against the quadrature pipeline (and vice versa).
    """
    if list(n_list) != sorted(set(n_list)):
        raise ValueError("n_list must be strictly increasing")
    rows = []
    for n in n_list:
        grid = build_grid(k_max, int(n), scheme)
        mat = build_arrowhead(params, bare, grid)
        pair = lowest_eigenpair(mat, tol)
        rows.append((int(n), pair.energy, pair.apex_weight))
    return rows
