"""KTI / KTL quadrature rules and the generic mapped interpolatory rule.

A KTL rule integrates the weighted least-squares fit of the samples in the
mapped Chebyshev space of degree ``n``; with ``n = m`` (KTI) the fit
interpolates. Both are exact on every ``T_j(M_alpha(x))``, ``j <= n``.

>>> from mappedquad import equispaced_closed, kti_rule
>>> rule = kti_rule(1.0, equispaced_closed(4))
>>> rule.weights.tolist()
[0.25, 0.5, 0.5, 0.5, 0.25]
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import DomainError
from .kt_map import MapParam, as_param, cosine_map
from .lsq import (
    WeightedQR,
    build_design,
    chebyshev_vandermonde,
    ls_mu_weights,
    solve_square_weights,
)
from .moments import DEFAULT_TOL, MomentVector, moments
from .nodes import NodeSet
from .oracle import adaptive_integral

__all__ = [
    "QuadratureRule",
    "WeightDiagnostics",
    "ktl_rule",
    "kti_rule",
    "integrate",
    "integrate_coefficients",
    "mapped_interp_rule",
    "mapped_simpson_rule",
    "trapezoid_weights",
    "weight_diagnostics",
]


@dataclass(frozen=True)
class QuadratureRule:
    """Nodes, weights and provenance of a quadrature rule.

    ``mode`` is ``"KTI"``, ``"KTL"`` or ``"mapped"`` (generic map, in which
    case ``alpha`` and ``moments`` are None).
    """

    nodes: NodeSet
    weights: np.ndarray
    alpha: MapParam | None
    degree: int
    mode: str
    moments: MomentVector | None = field(default=None, repr=False)

    def __post_init__(self):
        w = np.array(self.weights, dtype=float)
        if w.shape != self.nodes.nodes.shape:
            raise DomainError("one weight per node required")
        if self.mode == "KTI" and self.degree != self.nodes.m:
            raise DomainError("a KTI rule has degree n = m")
        w.setflags(write=False)
        object.__setattr__(self, "weights", w)

    @property
    def m(self) -> int:
        return self.nodes.m

    @property
    def x(self) -> np.ndarray:
        return self.nodes.nodes

    def __call__(self, f):
        return integrate(self, f)


@dataclass(frozen=True)
class WeightDiagnostics:
    min_weight: float
    sum_abs_weights: float
    num_negative: int
    symmetric: bool

    def as_dict(self):
        return {
            "min_weight": self.min_weight,
            "sum_abs_weights": self.sum_abs_weights,
            "num_negative": self.num_negative,
            "symmetric": self.symmetric,
        }


def _as_nodeset(nodes) -> NodeSet:
    return nodes if isinstance(nodes, NodeSet) else NodeSet(nodes)


def trapezoid_weights(m, a=-1.0, b=1.0) -> np.ndarray:
    """Composite trapezoidal weights for ``m`` equal subintervals of [a, b]."""
    w = np.full(m + 1, (b - a) / m)
    w[0] = w[-1] = 0.5 * (b - a) / m
    return w


def ktl_rule(p, nodes, n, tol=DEFAULT_TOL) -> QuadratureRule:
    """Least-squares rule of degree ``n <= m`` on ``nodes`` with map parameter ``p``.

    Raises
    ------
    RankDeficiencyError
        If the weighted design matrix is numerically rank deficient.
    """
    p = as_param(p)
    nodes = _as_nodeset(nodes)
    if isinstance(n, bool) or int(n) != n or not 0 <= n <= nodes.m:
        raise DomainError(f"degree must satisfy 0 <= n <= m = {nodes.m}, got {n!r}")
    n = int(n)
    tau = moments(p, n, tol=tol)
    A = build_design(p, nodes, n)
    mu = ls_mu_weights(p, nodes)
    w = WeightedQR(A, mu).weights(tau.entries)
    return QuadratureRule(nodes, w, p, n, "KTL", tau)


def kti_rule(p, nodes, tol=DEFAULT_TOL) -> QuadratureRule:
    """Interpolatory rule (``n = m``) on ``nodes`` with map parameter ``p``.

    At ``alpha = 1`` on closed equispaced nodes the weights are the composite
    trapezoidal weights and are returned in closed form.

    Raises
    ------
    RankDeficiencyError
        If the interpolation matrix fails the same numerical-rank test as the
        least-squares path (see :class:`~mappedquad.lsq.WeightedQR`).
    SingularSystemError
        If the mapped nodes are numerically coincident.
    """
    p = as_param(p)
    nodes = _as_nodeset(nodes)
    m = nodes.m
    tau = moments(p, m, tol=tol)
    if p.alpha == 1.0 and nodes.family == "closed" and m >= 1:
        return QuadratureRule(nodes, trapezoid_weights(m), p, m, "KTI", tau)
    A = build_design(p, nodes, m)
    WeightedQR(A, ls_mu_weights(p, nodes))  # rank test only
    w = solve_square_weights(A, tau.entries)
    return QuadratureRule(nodes, w, p, m, "KTI", tau)


def _samples(rule, f):
    if callable(f):
        fx = np.asarray(f(rule.x), dtype=float)
        if fx.shape != rule.x.shape:
            fx = np.broadcast_to(fx, rule.x.shape)
    else:
        fx = np.asarray(f, dtype=float)
        if fx.shape != rule.x.shape:
            raise DomainError(f"expected {rule.x.size} samples, got shape {fx.shape}")
    return fx


def integrate(rule: QuadratureRule, f) -> float:
    """``sum_i w_i f(x_i)``; ``f`` is a vectorised callable or the sample vector."""
    return float(np.dot(rule.weights, _samples(rule, f)))


def integrate_coefficients(rule: QuadratureRule, f) -> float:
    """Same value computed as ``gamma . tau`` from the fitted coefficients.

    Agrees with :func:`integrate` up to rounding. Only for KTI/KTL rules.
    """
    if rule.mode not in ("KTI", "KTL"):
        raise DomainError("coefficient form needs a KTI or KTL rule")
    fx = _samples(rule, f)
    A = build_design(rule.alpha, rule.nodes, rule.degree)
    gamma = WeightedQR(A, ls_mu_weights(rule.alpha, rule.nodes)).coefficients(fx)
    return float(np.dot(gamma, rule.moments.entries))


def mapped_interp_rule(S: Callable, nodes, a=None, b=None, tol=1e-14) -> QuadratureRule:
    """Interpolatory weights for the mapped basis ``T_j(H(S(x)))`` on [a, b].

    ``S`` is a strictly monotone, smooth map on [a, b] and ``H`` the affine
    map of ``S([a, b])`` onto [-1, 1]. Moments are integrated in ``x`` with
    the adaptive oracle, so the ``1/S'`` factor of the image-space form never
    has to be evaluated.

    Parameters
    ----------
    S : callable
        Vectorised map.
    nodes : NodeSet or array
        Nodes in [a, b]. A NodeSet carries its own interval.
    a, b : float, optional
        Interval; defaults to the NodeSet interval.
    """
    if isinstance(nodes, NodeSet):
        a0, b0 = nodes.interval
        a = a0 if a is None else a
        b = b0 if b is None else b
        x = nodes.nodes
    else:
        x = np.asarray(nodes, dtype=float)
    a = -1.0 if a is None else float(a)
    b = 1.0 if b is None else float(b)
    ns = NodeSet(x, interval=(a, b), family=getattr(nodes, "family", "custom"))
    m = ns.m
    Sa, Sb = float(S(np.array(a))), float(S(np.array(b)))
    lo, hi = min(Sa, Sb), max(Sa, Sb)
    if not lo < hi:
        raise DomainError("S must be injective on [a, b]")

    def to_unit(y):
        return np.clip((2.0 * np.asarray(y) - (lo + hi)) / (hi - lo), -1.0, 1.0)

    z = to_unit(S(ns.nodes))
    if np.any(np.diff(z) == 0) or not (np.all(np.diff(z) > 0) or np.all(np.diff(z) < 0)):
        raise DomainError("S must be strictly monotone with distinct images of the nodes")
    V = chebyshev_vandermonde(z, m)
    tau = np.empty(m + 1)
    for j in range(m + 1):
        e = np.zeros(j + 1)
        e[j] = 1.0
        tau[j] = adaptive_integral(
            lambda t, e=e: np.polynomial.chebyshev.chebval(to_unit(S(t)), e), a, b, tol=tol)
    from .lsq import _square_lu

    w = _square_lu(V.T, tau)
    return QuadratureRule(ns, w, None, m, "mapped", None)


def mapped_simpson_rule(a, b, m) -> tuple[np.ndarray, np.ndarray]:
    """Composite Cavalieri-Simpson weights assembled from two cosine-mapped rules.

    On the ``2m + 1`` equispaced nodes of [a, b], two thirds of the midpoint
    rule on the odd nodes plus one third of the trapezoidal rule on the even
    nodes, both obtained from :func:`mapped_interp_rule` with
    :func:`cosine_map`. Returns ``(nodes, weights)``.
    """
    a = float(a)
    b = float(b)
    m = int(m)
    if m < 1:
        raise DomainError("m must be >= 1")
    i = np.arange(2 * m + 1)
    x = a + i * (b - a) / (2 * m)
    x[-1] = b

    def S(t):
        return cosine_map(a, b, t)

    odd = mapped_interp_rule(S, x[1::2], a, b)
    even = mapped_interp_rule(S, x[0::2], a, b)
    w = np.zeros(2 * m + 1)
    w[1::2] += 2.0 / 3.0 * odd.weights
    w[0::2] += 1.0 / 3.0 * even.weights
    return x, w


def weight_diagnostics(rule: QuadratureRule, sym_tol=1e-9) -> WeightDiagnostics:
    """Sign and size summary of the weights."""
    w = rule.weights
    return WeightDiagnostics(
        min_weight=float(w.min()),
        sum_abs_weights=float(np.sum(np.abs(w))),
        num_negative=int(np.sum(w < 0)),
        symmetric=bool(np.all(np.abs(w - w[::-1]) <= sym_tol)),
    )
