"""Moments of the mapped Chebyshev basis.

``tau_i = int_{-1}^{1} T_i(M_alpha(x)) dx`` equals the i-th coefficient of the
continuous cosine transform of

    g_alpha(t) = sin(t) / (alpha * sqrt(1/sin^2(alpha pi/2) - cos^2(t))),  t in [0, pi],

that is ``tau_i = (2/pi) int_0^pi cos(i t) g_alpha(t) dt``.

Two discretisations of that integral are provided.

``"dct"``
    Write ``g_alpha(t) = sin(t) * q(cos t)`` with the analytic factor
    ``q(y) = 2 s / (alpha pi sqrt(1 - s^2 y^2))``, ``s = sin(alpha pi/2)``.
    A type-I DCT of ``q`` on Chebyshev-Lobatto angles gives its cosine
    coefficients, and the products with ``sin(t)`` are integrated exactly.
    Converges geometrically; the number of samples grows like ``1/(1 - alpha)``.
``"mapped"``
    Substitute ``t = arccos(M_alpha(x))`` (so ``(2/pi) g_alpha(t) dt = dx``)
    and apply Clenshaw-Curtis in ``x``. The integrand is entire for every
    alpha, so this stays cheap when alpha is extremely close to 1.

``method="auto"`` uses ``"dct"`` unless its predicted sample count is large
(alpha within a few 1e-4 of 1). Both refine by doubling the sample count
until two successive levels agree to ``tol``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.fft import dct

from .errors import DomainError, MomentConvergenceError
from .kt_map import MapParam, as_param, kt_forward

__all__ = [
    "MomentVector",
    "moments",
    "moments_cosine",
    "moments_alpha_zero",
    "chebyshev_integrals",
    "clenshaw_curtis",
    "DEFAULT_TOL",
    "MAX_SAMPLES",
]

DEFAULT_TOL = 1e-13
MAX_SAMPLES = 2 ** 20
_MAPPED_MAX_SAMPLES = 2 ** 16
# auto-selection switches to the mapped route beyond this predicted DCT size;
# the peak of the weight factor grows like 1/(1 - alpha) and erodes accuracy
_AUTO_DCT_LIMIT = 2 ** 16
_EPS = np.finfo(float).eps


@dataclass(frozen=True)
class MomentVector:
    """Moments ``tau_0 .. tau_n`` for one map parameter (immutable).

    ``method`` records how the entries were obtained (``"closed_form"``,
    ``"dct"`` or ``"mapped"``) and ``samples`` the final sample count used.
    """

    alpha: MapParam
    entries: np.ndarray
    method: str = "closed_form"
    samples: int = 0

    def __post_init__(self):
        e = np.array(self.entries, dtype=float)
        e.setflags(write=False)
        object.__setattr__(self, "entries", e)

    @property
    def n(self) -> int:
        return self.entries.size - 1

    def __len__(self):
        return self.entries.size

    def __getitem__(self, i):
        return self.entries[i]

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.entries, dtype=dtype)


def _check_n(n):
    if isinstance(n, bool) or int(n) != n or n < 0:
        raise DomainError(f"degree n must be a non-negative integer, got {n!r}")
    return int(n)


def chebyshev_integrals(n) -> np.ndarray:
    """``int_{-1}^{1} T_i(x) dx`` for ``i = 0..n``: ``2/(1 - i^2)`` for even i, else 0."""
    i = np.arange(_check_n(n) + 1, dtype=float)
    out = np.zeros_like(i)
    even = (np.arange(i.size) % 2) == 0
    out[even] = 2.0 / (1.0 - i[even] ** 2)
    return out


def moments_alpha_zero(n) -> MomentVector:
    """Closed-form moments of the unmapped Chebyshev basis."""
    return MomentVector(MapParam(0.0), chebyshev_integrals(n), "closed_form", 0)


def _alpha_one(n):
    e = np.zeros(n + 1)
    e[0] = 2.0
    return MomentVector(MapParam(1.0), e, "closed_form", 0)


# -- DCT route ---------------------------------------------------------------

def _weight_factor(p: MapParam, y):
    s = p.scale
    return (2.0 * s / (p.alpha * np.pi)) / np.sqrt(1.0 - (s * y) ** 2)


def _dct_level(p, n, N):
    j = np.arange(N + 1)
    y = np.cos(np.pi * j / N)
    c = dct(_weight_factor(p, y), type=1) / N
    c[0] *= 0.5
    c[-1] *= 0.5
    # q is even: odd coefficients vanish
    c[1::2] = 0.0
    cmax = np.max(np.abs(c))
    keep = np.nonzero(np.abs(c) > _EPS * 1e-3 * cmax)[0]
    K = int(keep[-1]) + 1 if keep.size else 1
    c = c[:K]
    k = np.arange(0, K, 2)
    ck = c[k]
    tau0 = chebyshev_integrals(n + K)
    out = np.zeros(n + 1)
    for i in range(0, n + 1, 2):
        # int T_i T_k = (int T_{i+k} + int T_{|i-k|}) / 2
        out[i] = 0.5 * np.dot(ck, tau0[i + k] + tau0[np.abs(i - k)])
    return out, float(np.sum(np.abs(ck)))


def _predicted_dct_samples(p: MapParam) -> float:
    s = p.scale
    if s >= 1.0:
        return np.inf
    y0 = 1.0 / s
    rho = y0 + np.sqrt((y0 - 1.0) * (y0 + 1.0))
    return 40.0 / np.log(rho)


# -- mapped (Clenshaw-Curtis in x) route ---------------------------------------

def clenshaw_curtis(N):
    """Clenshaw-Curtis nodes ``cos(j pi / N)`` and weights on [-1, 1] (``N >= 1``).

    Weights are computed with a type-I DCT (Waldvogel's construction).
    """
    N = int(N)
    if N < 1:
        raise DomainError("Clenshaw-Curtis needs N >= 1")
    x = np.cos(np.pi * np.arange(N + 1) / N)
    if N == 1:
        return x, np.array([1.0, 1.0])
    u = np.zeros(N + 1)
    u[0] = 1.0
    k = np.arange(1, N // 2 + 1)
    b = np.where(2 * k == N, 1.0, 2.0)
    u[2 * k] = -b / (4.0 * k * k - 1.0)
    # sum_l u_l cos(l j pi / N) via DCT-I
    y = dct(u, type=1)
    s = 0.5 * (y + u[0] + ((-1.0) ** np.arange(N + 1)) * u[N])
    c = np.full(N + 1, 2.0)
    c[0] = c[-1] = 1.0
    return x, c / N * s


def _cheb_columns(y, n):
    """``T_0..T_n`` evaluated at ``y`` by the three-term recurrence, shape (len(y), n+1)."""
    T = np.empty((y.size, n + 1))
    T[:, 0] = 1.0
    if n >= 1:
        T[:, 1] = y
    for j in range(2, n + 1):
        T[:, j] = 2.0 * y * T[:, j - 1] - T[:, j - 2]
    return T


def _mapped_level(p, n, N):
    x, w = clenshaw_curtis(N)
    y = kt_forward(p, x)
    T = _cheb_columns(y, n)
    out = w @ T
    out[1::2] = 0.0
    return out, float(np.max(np.abs(out)))


def _refine(level, p, n, N0, Nmax, tol, name):
    N = N0
    prev, _ = level(p, n, N)
    while True:
        N *= 2
        if N > Nmax:
            raise MomentConvergenceError(
                f"{name} moments for alpha={p.alpha!r}, n={n} did not settle to {tol:g} "
                f"within {Nmax} samples")
        cur, scale = level(p, n, N)
        # allow for rounding in the transform itself
        floor = 64 * _EPS * max(scale, 1.0)
        if np.max(np.abs(cur - prev)) <= max(tol, floor):
            return cur, N
        prev = cur


def moments_cosine(p, n, tol=DEFAULT_TOL, method="auto", max_samples=MAX_SAMPLES) -> MomentVector:
    """Moments ``tau_0..tau_n`` for ``0 < alpha <= 1`` via the cosine transform of ``g_alpha``.

    Parameters
    ----------
    p : MapParam or float
        Map parameter; must be positive (use :func:`moments_alpha_zero` for 0).
    n : int
        Highest moment index.
    tol : float
        Agreement required between two successive refinement levels.
    method : {"auto", "dct", "mapped"}
        Discretisation, see the module docstring.
    max_samples : int
        Sample budget; the mapped route is further capped at ``2**16``
        unless ``n`` needs more.

    Raises
    ------
    MomentConvergenceError
        If refinement does not settle within the budget.
    """
    p = as_param(p)
    n = _check_n(n)
    if p.alpha == 0.0:
        raise DomainError("moments_cosine needs alpha > 0; use moments_alpha_zero")
    if method not in ("auto", "dct", "mapped"):
        raise DomainError(f"unknown method {method!r}")
    if p.alpha == 1.0:
        return _alpha_one(n)
    if method == "auto":
        method = "dct" if _predicted_dct_samples(p) <= min(_AUTO_DCT_LIMIT, max_samples / 2) else "mapped"
    if method == "dct":
        N0 = 1 << int(np.ceil(np.log2(max(1024, 16 * (n + 1)))))
        e, N = _refine(_dct_level, p, n, N0, max_samples, tol, "DCT")
    else:
        N0 = 1 << int(np.ceil(np.log2(max(64, 2 * (n + 1)))))
        cap = min(max_samples, max(_MAPPED_MAX_SAMPLES, 4 * N0))
        e, N = _refine(_mapped_level, p, n, N0, cap, tol, "mapped")
    e[1::2] = 0.0
    return MomentVector(p, e, method, N)


def moments(p, n, tol=DEFAULT_TOL, method="auto", max_samples=MAX_SAMPLES) -> MomentVector:
    """Moment vector for any ``alpha`` in [0, 1] (closed form at the identity branch)."""
    p = as_param(p)
    if p.is_identity:
        return MomentVector(p, chebyshev_integrals(n), "closed_form", 0)
    return moments_cosine(p, n, tol=tol, method=method, max_samples=max_samples)
