"""Dense weighted least-squares kernel for mapped Chebyshev bases.

The design matrix has entries ``A[i, j] = T_j(M_alpha(x_i))`` and the row
weights are ``W = diag(sqrt(mu))``. One column-pivoted QR factorisation of
``W A`` serves both the coefficient solve ``W A gamma ~= W f`` and the
minimum-weighted-norm solution of ``A^T w = tau``; the two satisfy
``gamma . tau == w . f`` up to rounding.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
import scipy.linalg as sla

from .errors import DomainError, RankDeficiencyError, SingularSystemError
from .kt_map import MapParam, as_param, kt_forward
from .nodes import NodeSet

__all__ = [
    "DesignMatrix",
    "LSWeightDiag",
    "SolveReport",
    "WeightedQR",
    "RANK_RTOL",
    "chebyshev_vandermonde",
    "build_design",
    "ls_mu_weights",
    "solve_coefficients",
    "solve_weights",
    "solve_square_weights",
    "condition_estimate",
]

RANK_RTOL = 1e-12


def chebyshev_vandermonde(y, n) -> np.ndarray:
    """``T_j(y_i)`` for ``j = 0..n`` by the three-term recurrence."""
    y = np.asarray(y, dtype=float)
    V = np.empty((y.size, n + 1))
    V[:, 0] = 1.0
    if n >= 1:
        V[:, 1] = y
    for j in range(2, n + 1):
        V[:, j] = 2.0 * y * V[:, j - 1] - V[:, j - 2]
    return V


@dataclass(frozen=True)
class DesignMatrix:
    """Mapped Chebyshev design matrix for one node set and map parameter."""

    matrix: np.ndarray
    alpha: MapParam
    nodes: NodeSet

    @property
    def shape(self):
        return self.matrix.shape

    @property
    def n(self) -> int:
        return self.matrix.shape[1] - 1

    @property
    def mapped_nodes(self) -> np.ndarray:
        return kt_forward(self.alpha, self.nodes.nodes)


@dataclass(frozen=True)
class LSWeightDiag:
    """Least-squares row weights ``mu_i > 0``."""

    mu: np.ndarray

    @property
    def sqrt(self) -> np.ndarray:
        return np.sqrt(self.mu)


@dataclass(frozen=True)
class SolveReport:
    """Solution vector with solver diagnostics."""

    solution: np.ndarray
    condition_estimate: float
    rank: int
    residual_norm: float


def _as_nodeset(nodes) -> NodeSet:
    return nodes if isinstance(nodes, NodeSet) else NodeSet(nodes)


def build_design(p, nodes, n) -> DesignMatrix:
    """Design matrix ``A[i, j] = T_j(M_alpha(x_i))``, ``j = 0..n``."""
    p = as_param(p)
    nodes = _as_nodeset(nodes)
    if isinstance(n, bool) or int(n) != n or n < 0:
        raise DomainError(f"degree n must be a non-negative integer, got {n!r}")
    y = kt_forward(p, nodes.nodes)
    M = chebyshev_vandermonde(y, int(n))
    M.setflags(write=False)
    return DesignMatrix(M, p, nodes)


def ls_mu_weights(p, nodes) -> LSWeightDiag:
    """``mu_i = (arcsin(M(x_{i+1})) - arcsin(M(x_{i-1}))) / 2`` with ``x_{-1} = -1``, ``x_{m+1} = 1``."""
    p = as_param(p)
    nodes = _as_nodeset(nodes)
    x = np.concatenate(([-1.0], nodes.nodes, [1.0]))
    theta = np.arcsin(np.clip(kt_forward(p, x), -1.0, 1.0))
    mu = 0.5 * (theta[2:] - theta[:-2])
    if np.any(mu <= 0):
        raise DomainError("non-positive least-squares weight; nodes too close together")
    mu.setflags(write=False)
    return LSWeightDiag(mu)


class WeightedQR:
    """Column-pivoted QR of ``W A``, reused for coefficient and weight solves.

    Raises :class:`RankDeficiencyError` when a diagonal entry of ``R`` falls
    below ``rtol`` times the largest one.
    """

    def __init__(self, A, mu, rtol=RANK_RTOL):
        A = A.matrix if isinstance(A, DesignMatrix) else np.asarray(A, dtype=float)
        mu = mu.mu if isinstance(mu, LSWeightDiag) else np.asarray(mu, dtype=float)
        rows, cols = A.shape
        if mu.shape != (rows,):
            raise DomainError(f"mu has shape {mu.shape}, expected ({rows},)")
        if rows < cols:
            raise DomainError(f"need at least as many nodes as basis functions ({rows} < {cols})")
        self.A = A
        self.sqrt_mu = np.sqrt(mu)
        B = self.sqrt_mu[:, None] * A
        self.Q, self.R, self.piv = sla.qr(B, mode="economic", pivoting=True)
        d = np.abs(np.diag(self.R))
        self.rank = int(np.sum(d > rtol * d[0])) if d.size and d[0] > 0 else 0
        if self.rank < cols:
            raise RankDeficiencyError(
                f"weighted design matrix is rank deficient: numerical rank {self.rank} < {cols} "
                f"(|R_kk|/|R_00| threshold {rtol:g})", rank=self.rank, cols=cols)

    @property
    def cond(self) -> float:
        """2-norm condition number of ``W A`` (exact, from the singular values of R)."""
        s = np.linalg.svd(self.R, compute_uv=False)
        return float(s[0] / s[-1])

    def coefficients(self, f):
        f = np.asarray(f, dtype=float)
        if f.shape != (self.A.shape[0],):
            raise DomainError(f"sample vector has shape {f.shape}, expected ({self.A.shape[0]},)")
        g = np.empty(self.A.shape[1])
        g[self.piv] = sla.solve_triangular(self.R, self.Q.T @ (self.sqrt_mu * f))
        return g

    def weights(self, tau):
        tau = np.asarray(tau, dtype=float)
        if tau.shape != (self.A.shape[1],):
            raise DomainError(f"moment vector has shape {tau.shape}, expected ({self.A.shape[1]},)")
        z = sla.solve_triangular(self.R, tau[self.piv], trans="T")
        return self.sqrt_mu * (self.Q @ z)


def solve_coefficients(A, mu, f) -> SolveReport:
    """Weighted least-squares coefficients: minimise ``sum mu_i (f_i - (A gamma)_i)^2``."""
    qr = WeightedQR(A, mu)
    g = qr.coefficients(f)
    res = qr.sqrt_mu * (qr.A @ g - np.asarray(f, dtype=float))
    return SolveReport(g, qr.cond, qr.rank, float(np.linalg.norm(res)))


def _square_lu(M, rhs):
    with warnings.catch_warnings():
        # singularity is reported below with a library error
        warnings.simplefilter("ignore", sla.LinAlgWarning)
        lu, piv = sla.lu_factor(M, check_finite=True)
    d = np.abs(np.diag(lu))
    if not np.all(d > M.shape[0] * np.finfo(float).eps * d.max()):
        raise SingularSystemError("interpolation matrix is numerically singular "
                                  "(coincident mapped nodes?)", rank=int(np.sum(d > 0)), cols=M.shape[0])
    return sla.lu_solve((lu, piv), rhs)


def _symmetric_pairs(x):
    """Index pairs (i, m-i) when ``x_i + x_{m-i} == 0`` exactly, else None."""
    if not np.array_equal(x, -x[::-1]):
        return None
    return np.arange((x.size + 1) // 2)


def solve_square_weights(A, tau, symmetric=None):
    """Solve ``A^T w = tau`` for square ``A``.

    For a node set symmetric about 0 the odd moments vanish, so the
    antisymmetric part of ``w`` is zero and only the half-size system on the
    even basis functions is solved. Pass ``symmetric=False`` to force the
    full LU solve.
    """
    M = A.matrix if isinstance(A, DesignMatrix) else np.asarray(A, dtype=float)
    tau = np.asarray(tau, dtype=float)
    m1 = M.shape[0]
    if M.shape != (m1, m1) or tau.shape != (m1,):
        raise DomainError("square solve needs an (m+1)x(m+1) matrix and m+1 moments")
    half = None
    if symmetric is not False and isinstance(A, DesignMatrix):
        half = _symmetric_pairs(A.nodes.nodes)
    if half is None or np.any(tau[1::2] != 0.0):
        if symmetric is True:
            raise DomainError("symmetric solve requested for a non-symmetric problem")
        return _square_lu(M.T, tau)
    m = m1 - 1
    even = np.arange(0, m1, 2)
    # column for pair (i, m-i) counts both nodes, the centre node once
    mult = np.where(half == m - half, 1.0, 2.0)
    S = M[np.ix_(half, even)].T * mult
    u = _square_lu(S, tau[even])
    w = np.empty(m1)
    w[half] = u
    w[m - half] = u
    return w


def solve_weights(A, mu, tau) -> SolveReport:
    """Quadrature weights ``w = W^2 A (A^T W^2 A)^{-1} tau``.

    The square case solves ``A^T w = tau`` directly (see
    :func:`solve_square_weights`); ``mu`` is then not needed.
    """
    M = A.matrix if isinstance(A, DesignMatrix) else np.asarray(A, dtype=float)
    tau = np.asarray(tau, dtype=float)
    if M.shape[0] == M.shape[1]:
        w = solve_square_weights(A, tau)
        cond = float(np.linalg.cond(M))
        rank = M.shape[1]
    else:
        qr = WeightedQR(A, mu)
        w = qr.weights(tau)
        cond, rank = qr.cond, qr.rank
    res = M.T @ w - tau
    return SolveReport(w, cond, rank, float(np.linalg.norm(res)))


def condition_estimate(A, mu) -> float:
    """2-norm condition number of ``W A`` from its singular values."""
    M = A.matrix if isinstance(A, DesignMatrix) else np.asarray(A, dtype=float)
    mu = mu.mu if isinstance(mu, LSWeightDiag) else np.asarray(mu, dtype=float)
    s = np.linalg.svd(np.sqrt(mu)[:, None] * M, compute_uv=False)
    return float(s[0] / s[-1]) if s[-1] > 0 else float("inf")
