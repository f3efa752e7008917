"""Kosloff Tal-Ezer map family on [-1, 1].

The map

    M_alpha(x) = sin(alpha * pi * x / 2) / sin(alpha * pi / 2),   0 < alpha <= 1,

with ``M_0`` the identity, pushes a quasi-uniform grid towards the ends of
the interval. At ``alpha = 1`` the closed equispaced grid lands on the
Chebyshev-Lobatto points.

All functions accept scalars or arrays and return the same kind.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError

__all__ = [
    "MapParam",
    "IDENTITY_THRESHOLD",
    "BOUNDARY_TOL",
    "kt_forward",
    "kt_inverse",
    "kt_derivative",
    "cosine_map",
]

#: alpha below this value is treated as the identity map (avoids 0/0).
IDENTITY_THRESHOLD = 1e-8
#: slack allowed when checking |x| <= 1.
BOUNDARY_TOL = 1e-14


@dataclass(frozen=True)
class MapParam:
    """Validated map parameter ``alpha`` in the closed interval [0, 1]."""

    alpha: float

    def __post_init__(self):
        a = float(self.alpha)
        if not np.isfinite(a) or a < 0.0 or a > 1.0:
            raise DomainError(f"map parameter alpha must lie in [0, 1], got {self.alpha!r}")
        object.__setattr__(self, "alpha", a)

    @property
    def is_identity(self) -> bool:
        return self.alpha < IDENTITY_THRESHOLD

    @property
    def half_angle(self) -> float:
        """``alpha * pi / 2``."""
        return 0.5 * np.pi * self.alpha

    @property
    def scale(self) -> float:
        """``sin(alpha * pi / 2)``; the normalisation of the map."""
        return float(np.sin(self.half_angle))

    def __float__(self):
        return self.alpha


def as_param(p) -> MapParam:
    """Accept a MapParam or a bare float."""
    return p if isinstance(p, MapParam) else MapParam(p)


def _check_unit(x, name="x"):
    x = np.asarray(x, dtype=float)
    if np.any(~np.isfinite(x)) or np.any(np.abs(x) > 1.0 + BOUNDARY_TOL):
        bad = x[np.abs(x) > 1.0 + BOUNDARY_TOL] if x.ndim else x
        raise DomainError(f"{name} must lie in [-1, 1]; offending value(s): {np.ravel(bad)[:3]}")
    return np.clip(x, -1.0, 1.0)


def _out(x, like):
    return float(x) if np.ndim(like) == 0 else x


def kt_forward(p, x):
    """Evaluate ``M_alpha(x)``.

    Values within ``BOUNDARY_TOL`` outside [-1, 1] are clipped to the
    endpoints; anything further out raises :class:`DomainError`.
    """
    p = as_param(p)
    xc = _check_unit(x)
    if p.is_identity:
        return _out(xc.copy(), x)
    y = np.sin(p.half_angle * xc) / p.scale
    return _out(y, x)


def kt_inverse(p, y):
    """Evaluate ``M_alpha^{-1}(y) = 2/(alpha pi) * arcsin(sin(alpha pi / 2) * y)``."""
    p = as_param(p)
    yc = _check_unit(y, "y")
    if p.is_identity:
        return _out(yc.copy(), y)
    # rounding can push the product just past 1
    arg = np.clip(p.scale * yc, -1.0, 1.0)
    x = np.arcsin(arg) / p.half_angle
    return _out(x, y)


def kt_derivative(p, x):
    """Evaluate ``M_alpha'(x) = alpha pi cos(alpha pi x / 2) / (2 sin(alpha pi / 2))``.

    Strictly positive on [-1, 1] for ``alpha < 1``; at ``alpha = 1`` it
    vanishes at the endpoints.
    """
    p = as_param(p)
    xc = _check_unit(x)
    if p.is_identity:
        return _out(np.ones_like(xc), x)
    d = p.half_angle * np.cos(p.half_angle * xc) / p.scale
    return _out(d, x)


def cosine_map(a, b, x):
    """The map ``S(x) = -cos(pi (x - a) / (b - a))`` from [a, b] onto [-1, 1].

    It sends the closed equispaced grid on [a, b] to Chebyshev-Lobatto points
    and the midpoint grid to Chebyshev points.
    """
    a = float(a)
    b = float(b)
    if not a < b:
        raise DomainError(f"need a < b, got a={a}, b={b}")
    xa = np.asarray(x, dtype=float)
    tol = BOUNDARY_TOL * max(1.0, abs(a), abs(b))
    if np.any(xa < a - tol) or np.any(xa > b + tol):
        raise DomainError(f"x must lie in [{a}, {b}]")
    xa = np.clip(xa, a, b)
    return _out(-np.cos(np.pi * (xa - a) / (b - a)), x)
