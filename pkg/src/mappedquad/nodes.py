"""Quadrature node families and the shared node-set validator.

Random draws use numpy's ``Philox`` counter-based bit generator, so a given
``(m, seed)`` gives the same node set on every platform.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, NodeGenerationError

__all__ = [
    "NodeSet",
    "MIN_GAP",
    "fill_distance",
    "equispaced_closed",
    "equispaced_midpoint",
    "perturbed_equispaced",
    "van_der_corput",
    "halton_nodes",
    "make_nodes",
    "NODE_FAMILIES",
]

MIN_GAP = 1e-12
MAX_REDRAWS = 100


def fill_distance(nodes, a=-1.0, b=1.0) -> float:
    """Largest gap between consecutive nodes, with ``a`` and ``b`` as virtual end nodes."""
    x = np.concatenate(([a], np.asarray(nodes, dtype=float), [b]))
    return float(np.max(np.diff(x)))


@dataclass(frozen=True)
class NodeSet:
    """Strictly increasing quadrature nodes in ``[a, b]`` (default [-1, 1]).

    Attributes
    ----------
    nodes : ndarray
        The points ``x_0 < ... < x_m``; stored read-only.
    h : float
        Fill distance, see :func:`fill_distance`.
    family : str
        Generator that produced the set (``"closed"``, ``"midpoint"``,
        ``"perturbed"``, ``"halton"`` or ``"custom"``).
    seed : int or None
        Seed for random families.
    """

    nodes: np.ndarray
    h: float = field(default=None)
    family: str = "custom"
    seed: int | None = None
    interval: tuple = (-1.0, 1.0)

    def __post_init__(self):
        a, b = (float(v) for v in self.interval)
        if not a < b:
            raise DomainError(f"invalid interval [{a}, {b}]")
        x = np.array(self.nodes, dtype=float).ravel()
        if x.size == 0:
            raise DomainError("a node set needs at least one node")
        if not np.all(np.isfinite(x)):
            raise DomainError("nodes must be finite")
        if x[0] < a or x[-1] > b:
            raise DomainError(f"nodes must lie in [{a}, {b}]")
        gaps = np.diff(x)
        if np.any(gaps <= MIN_GAP):
            i = int(np.argmin(gaps))
            raise DomainError(
                f"nodes must be strictly increasing with gaps > {MIN_GAP:g}; "
                f"gap {gaps[i]:.3g} between nodes {i} and {i + 1}"
            )
        x.setflags(write=False)
        object.__setattr__(self, "nodes", x)
        object.__setattr__(self, "interval", (a, b))
        h = fill_distance(x, a, b) if self.h is None else float(self.h)
        object.__setattr__(self, "h", h)

    @property
    def m(self) -> int:
        """Number of nodes minus one."""
        return self.nodes.size - 1

    def __len__(self):
        return self.nodes.size

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.nodes, dtype=dtype)

    def is_symmetric(self, tol=0.0) -> bool:
        """True when ``x_i + x_{m-i} == (a + b)`` to within ``tol``."""
        a, b = self.interval
        return bool(np.all(np.abs(self.nodes + self.nodes[::-1] - (a + b)) <= tol))


def _check_m(m, minimum):
    if isinstance(m, bool) or int(m) != m or m < minimum:
        raise DomainError(f"m must be an integer >= {minimum}, got {m!r}")
    return int(m)


def equispaced_closed(m) -> NodeSet:
    """``m + 1`` equispaced nodes ``x_i = -1 + 2i/m`` including both endpoints."""
    m = _check_m(m, 1)
    i = np.arange(m + 1)
    # integer numerator keeps x_i + x_{m-i} == 0 exact
    x = (2 * i - m) / m
    return NodeSet(x, h=2.0 / m, family="closed")


def equispaced_midpoint(m) -> NodeSet:
    """``m + 1`` open (midpoint) nodes ``x_k = -1 + (2k + 1)/(m + 1)``."""
    m = _check_m(m, 0)
    k = np.arange(m + 1)
    x = (2 * k - m) / (m + 1)
    return NodeSet(x, family="midpoint")


def _rng(seed):
    return np.random.Generator(np.random.Philox(int(seed)))


def _open_uniform(rng, low, high):
    u = rng.uniform(low, high)
    # uniform() is half-open; the perturbation intervals are open
    bad = u <= low
    while bad.any():
        u[bad] = rng.uniform(low[bad], high[bad])
        bad = u <= low
    return u


def perturbed_equispaced(m, seed=0) -> NodeSet:
    """Closed equispaced nodes with independent uniform perturbations.

    ``x_i = -1 + 2i/m + delta_i`` with ``delta_i`` uniform on ``(-1/m, 1/m)``
    for interior nodes, on ``(0, 1/m)`` for ``i = 0`` and on ``(-1/m, 0)`` for
    ``i = m``. A draw that fails the node-set checks is discarded and the whole
    set redrawn (up to 100 attempts).
    """
    m = _check_m(m, 2)
    base = (2 * np.arange(m + 1) - m) / m
    low = np.full(m + 1, -1.0 / m)
    high = np.full(m + 1, 1.0 / m)
    low[0] = 0.0
    high[-1] = 0.0
    rng = _rng(seed)
    for _ in range(MAX_REDRAWS):
        x = base + _open_uniform(rng, low, high)
        if np.all(np.diff(x) > MIN_GAP) and -1.0 <= x[0] and x[-1] <= 1.0:
            return NodeSet(x, family="perturbed", seed=int(seed))
    raise NodeGenerationError(f"no admissible perturbed node set after {MAX_REDRAWS} draws (m={m}, seed={seed})")


def van_der_corput(count, base=2) -> np.ndarray:
    """First ``count`` terms of the van der Corput sequence in ``base``, starting at 0."""
    if isinstance(base, bool) or int(base) != base or base < 2:
        raise DomainError(f"base must be an integer >= 2, got {base!r}")
    base = int(base)
    out = np.zeros(count)
    for k in range(count):
        q, denom, v = k, 1, 0.0
        while q:
            q, r = divmod(q, base)
            denom *= base
            v += r / denom
        out[k] = v
    return out


def halton_nodes(m, base=2) -> NodeSet:
    """First ``m + 1`` van der Corput points mapped affinely onto [-1, 1] and sorted."""
    m = _check_m(m, 1)
    raw = van_der_corput(m + 1, base)
    return NodeSet(np.sort(2.0 * raw - 1.0), family="halton")


NODE_FAMILIES = ("closed", "midpoint", "perturbed", "halton")


def make_nodes(family, m, seed=0, base=2) -> NodeSet:
    """Dispatch on a node family name."""
    if family == "closed":
        return equispaced_closed(m)
    if family == "midpoint":
        return equispaced_midpoint(m)
    if family == "perturbed":
        return perturbed_equispaced(m, seed)
    if family == "halton":
        return halton_nodes(m, base)
    raise DomainError(f"unknown node family {family!r}; choose from {NODE_FAMILIES}")
