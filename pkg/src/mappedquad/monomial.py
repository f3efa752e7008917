"""Monomial-basis moments via the sine-power recursion, and why not to use them.

With ``C = alpha pi / 2`` the monomial moments are

    int_{-1}^{1} M_alpha(x)^i dx = sin(C)^{-i} * int_{-1}^{1} sin(C x)^i dx,

and integration by parts gives, for even ``i >= 2``,

    S_i = -(2/i) sin(C)^{i-1} cos(C) / C + (i-1)/i * S_{i-2},   S_0 = 2.

An error ``e_0`` in the seed propagates as ``e_{2k} = (2k-1)/(2k) e_{2k-2}``,
which decays only like ``k^{-1/2}`` while the scaling ``sin(C)^{-2k}`` grows
geometrically for ``alpha < 1``. :func:`sine_power_integral_recursive`
records that blow-up. The quadrature path never uses this module.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath
import numpy as np

from .errors import DomainError
from .kt_map import as_param

__all__ = [
    "RecursionTrace",
    "sine_power_integral_recursive",
    "monomial_moment",
    "DEFAULT_PERTURBATION",
]

DEFAULT_PERTURBATION = 1e-12


@dataclass(frozen=True)
class RecursionTrace:
    """Output of :func:`sine_power_integral_recursive`.

    Arrays are indexed by the power ``i = 0..i_max``; odd entries are zero.
    ``errors[i] = S[i] - exact[i]`` and
    ``scaled_errors[i] = errors[i] / sin(C)^i``.
    """

    C: float
    s0: float
    perturbation: float
    S: np.ndarray
    exact: np.ndarray
    errors: np.ndarray
    scaled_errors: np.ndarray

    @property
    def i_max(self) -> int:
        return self.S.size - 1

    @property
    def alpha(self) -> float:
        """Map parameter for which ``C = alpha pi / 2``."""
        return 2.0 * self.C / math.pi

    def even(self, name):
        """Entries ``k = 0..i_max/2`` of the named array at even powers ``2k``."""
        return getattr(self, name)[::2]


def _boundary_term(C, i):
    # [sin(Cx)^{i-1} cos(Cx) / C] from -1 to 1, i even
    return 2 * mpmath.sin(C) ** (i - 1) * mpmath.cos(C) / C


def _run(C, i_max, seed):
    S = [mpmath.mpf(0)] * (i_max + 1)
    S[0] = seed
    for i in range(2, i_max + 1, 2):
        S[i] = -_boundary_term(C, i) / i + mpmath.mpf(i - 1) / i * S[i - 2]
    return S


def _to_float(values, what):
    out = np.array([float(v) for v in values])
    if not np.all(np.isfinite(out)):
        raise OverflowError(f"{what} exceed the double-precision range")
    return out


def sine_power_integral_recursive(C, i_max, s0=2.0, dps=50) -> RecursionTrace:
    """Run the sine-power recursion from seed ``s0`` and measure its error.

    The recursion is carried out in ``dps``-digit arithmetic twice, once from
    ``s0`` and once from the exact seed 2, so the recorded errors reflect
    propagation of the seed perturbation rather than double-precision noise.

    Parameters
    ----------
    C : float
        Nonzero frequency; ``C = alpha pi / 2`` for the map moments.
    i_max : int
        Largest (even) power.
    s0 : float
        Seed ``S_0``; the exact value is 2.
    dps : int
        Working precision in decimal digits.

    Raises
    ------
    DomainError
        For ``C == 0`` or odd/too small ``i_max``.
    OverflowError
        When scaled errors leave the double range.
    """
    C = float(C)
    if C == 0.0 or not math.isfinite(C):
        raise DomainError("C must be finite and nonzero")
    if isinstance(i_max, bool) or int(i_max) != i_max or i_max < 2 or i_max % 2:
        raise DomainError(f"i_max must be an even integer >= 2, got {i_max!r}")
    i_max = int(i_max)
    with mpmath.workdps(dps):
        Cm = mpmath.mpf(C)
        seed = mpmath.mpf(float(s0))
        S = _run(Cm, i_max, seed)
        E = _run(Cm, i_max, mpmath.mpf(2))
        err = [a - b for a, b in zip(S, E)]
        sC = mpmath.sin(Cm)
        scaled = [err[i] / sC ** i if sC != 0 else mpmath.inf for i in range(i_max + 1)]
        return RecursionTrace(
            C=C,
            s0=float(s0),
            perturbation=float(seed - 2),
            S=_to_float(S, "S"),
            exact=_to_float(E, "exact"),
            errors=_to_float(err, "errors"),
            scaled_errors=_to_float(scaled, "scaled errors"),
        )


def monomial_moment(p, i) -> float:
    """``int_{-1}^{1} M_alpha(x)^i dx`` from the recursion in double precision.

    For demonstration only: the result is unreliable for large ``i`` when
    ``alpha < 1``.

    Raises
    ------
    OverflowError
        If ``sin(alpha pi / 2)^{-i}`` is not representable.
    """
    p = as_param(p)
    if p.alpha == 0.0:
        raise DomainError("monomial_moment needs alpha > 0")
    if isinstance(i, bool) or int(i) != i or i < 0:
        raise DomainError(f"i must be a non-negative integer, got {i!r}")
    i = int(i)
    if i % 2:
        return 0.0
    s = p.scale
    if i * -math.log(s) > math.log(np.finfo(float).max):
        raise OverflowError(f"sin(alpha pi/2)^-{i} overflows for alpha={p.alpha}")
    C = p.half_angle
    S = 2.0
    for k in range(2, i + 1, 2):
        S = -2.0 * math.sin(C) ** (k - 1) * math.cos(C) / (C * k) + (k - 1) / k * S
    return S / s ** i
