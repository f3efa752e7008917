"""Parameter selection: how ``alpha`` and the degree ``n`` follow from the grid size.

Alpha rules
    ``Fixed(alpha)``, ``DynLog(eps)`` with ``alpha_n = 1 - 2|log eps| / (n pi)``
    and ``DynArctan(eps)`` with ``alpha_n = (4/pi) arctan(eps^(1/n))``.
Degree rules
    ``Full`` (``n = m``), ``SqrtC(c)`` (``n = ceil(c sqrt(m))``) and
    ``Ratio(r)`` (``n = ceil(r m)``).

The logarithm in DynLog is natural by default; ``log_base=10`` switches it.

>>> resolve(parse_strategy("dynlog:eps=1e-12,ratio=0.5"), 500).n
250
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

from .errors import DomainError
from .kt_map import MapParam

__all__ = [
    "Fixed",
    "DynLog",
    "DynArctan",
    "Full",
    "SqrtC",
    "Ratio",
    "StrategySpec",
    "Resolved",
    "resolve",
    "degree_for",
    "parse_strategy",
    "format_strategy",
]

# tolerance for float noise before taking a ceiling, e.g. 0.1 * 30 = 3.0000000000000004
_CEIL_SLACK = 1e-9


def _check_eps(eps):
    eps = float(eps)
    if not 0.0 < eps < 1.0:
        raise DomainError(f"eps must lie in (0, 1), got {eps!r}")
    return eps


@dataclass(frozen=True)
class Fixed:
    alpha: float

    def __post_init__(self):
        MapParam(self.alpha)


@dataclass(frozen=True)
class DynLog:
    eps: float
    log_base: float = math.e

    def __post_init__(self):
        _check_eps(self.eps)
        if self.log_base not in (math.e, 10.0, 10):
            raise DomainError("log_base must be e or 10")


@dataclass(frozen=True)
class DynArctan:
    eps: float

    def __post_init__(self):
        _check_eps(self.eps)


@dataclass(frozen=True)
class Full:
    pass


@dataclass(frozen=True)
class SqrtC:
    c: float = 4.0

    def __post_init__(self):
        if not self.c > 0:
            raise DomainError("SqrtC needs c > 0")


@dataclass(frozen=True)
class Ratio:
    r: float = 0.5

    def __post_init__(self):
        if not 0 < self.r <= 1:
            raise DomainError("Ratio needs 0 < r <= 1")


AlphaRule = Union[Fixed, DynLog, DynArctan]
DegreeRule = Union[Full, SqrtC, Ratio]


@dataclass(frozen=True)
class StrategySpec:
    """An alpha rule paired with a degree rule."""

    alpha_rule: AlphaRule
    degree_rule: DegreeRule = Full()

    @property
    def epsilon(self):
        return getattr(self.alpha_rule, "eps", None)


@dataclass(frozen=True)
class Resolved:
    """Outcome of :func:`resolve`; ``clamped`` flags a DynLog value pushed into [0, 1]."""

    alpha: MapParam
    n: int
    clamped: bool = False

    def __iter__(self):
        return iter((self.alpha, self.n))


def _ceil(x):
    return int(math.ceil(x - _CEIL_SLACK))


def degree_for(rule: DegreeRule, m: int) -> int:
    """Degree prescribed by ``rule`` on a grid with ``m + 1`` nodes."""
    if isinstance(rule, Full):
        n = m
    elif isinstance(rule, SqrtC):
        n = _ceil(rule.c * math.sqrt(m))
    elif isinstance(rule, Ratio):
        n = _ceil(rule.r * m)
    else:
        raise DomainError(f"unknown degree rule {rule!r}")
    if n > m:
        raise DomainError(f"degree rule {format_degree(rule)} gives n={n} > m={m}")
    return max(n, 0)


def resolve(spec: StrategySpec, m: int) -> Resolved:
    """Map parameter and degree for grid size ``m``.

    DynLog values below 0 are clamped to 0 (identity map) and flagged; with
    ``n = 0`` the DynLog formula is undefined and the identity map is used.
    """
    if isinstance(m, bool) or int(m) != m or m < 1:
        raise DomainError(f"m must be a positive integer, got {m!r}")
    m = int(m)
    n = degree_for(spec.degree_rule, m)
    rule = spec.alpha_rule
    clamped = False
    if isinstance(rule, Fixed):
        a = float(rule.alpha)
    elif isinstance(rule, DynLog):
        lg = abs(math.log(rule.eps, rule.log_base) if rule.log_base != math.e else math.log(rule.eps))
        a = 1.0 - 2.0 * lg / (n * math.pi) if n > 0 else -math.inf
        if not 0.0 <= a <= 1.0:
            a = min(max(a, 0.0), 1.0)
            clamped = True
    elif isinstance(rule, DynArctan):
        a = 4.0 / math.pi * math.atan(rule.eps ** (1.0 / n)) if n > 0 else 0.0
    else:
        raise DomainError(f"unknown alpha rule {rule!r}")
    return Resolved(MapParam(a), n, clamped)


# -- string form ---------------------------------------------------------------

def _num(key, val):
    try:
        return float(val)
    except ValueError:
        raise DomainError(f"strategy field {key!r} needs a number, got {val!r}") from None


def parse_strategy(text: str, log_base: float = math.e) -> StrategySpec:
    """Parse ``"<kind>:key=value,..."``.

    Kinds are ``fixed`` (``alpha=``), ``dynlog`` and ``dynarctan`` (``eps=``).
    Degree fields are ``full``, ``sqrt=c`` or ``ratio=r``; the default is
    ``full``. Example: ``"dynlog:eps=1e-12,ratio=0.5"``.
    """
    kind, _, rest = text.strip().partition(":")
    kind = kind.strip().lower()
    fields = {}
    degree = None
    for item in filter(None, (s.strip() for s in rest.split(","))):
        key, eq, val = item.partition("=")
        key = key.strip().lower()
        if key == "full" and not eq:
            new = Full()
        elif key in ("sqrt", "sqrtc"):
            new = SqrtC(_num(key, val))
        elif key == "ratio":
            new = Ratio(_num(key, val))
        elif eq and key in ("alpha", "eps"):
            if key in fields:
                raise DomainError(f"duplicate strategy field {key!r}")
            fields[key] = _num(key, val)
            continue
        else:
            raise DomainError(f"unknown strategy field {item!r}")
        if degree is not None:
            raise DomainError("more than one degree rule given")
        degree = new
    degree = degree or Full()
    need = {"fixed": "alpha", "dynlog": "eps", "dynarctan": "eps"}
    if kind not in need:
        raise DomainError(f"unknown strategy kind {kind!r}; choose fixed, dynlog or dynarctan")
    if set(fields) != {need[kind]}:
        raise DomainError(f"{kind} takes exactly the field {need[kind]!r}")
    v = fields[need[kind]]
    if kind == "fixed":
        rule = Fixed(v)
    elif kind == "dynlog":
        rule = DynLog(v, log_base)
    else:
        rule = DynArctan(v)
    return StrategySpec(rule, degree)


def format_degree(rule: DegreeRule) -> str:
    if isinstance(rule, SqrtC):
        return f"sqrt={rule.c!r}"
    if isinstance(rule, Ratio):
        return f"ratio={rule.r!r}"
    return "full"


def format_strategy(spec: StrategySpec) -> str:
    """Inverse of :func:`parse_strategy` (log base is not encoded)."""
    r = spec.alpha_rule
    if isinstance(r, Fixed):
        head = f"fixed:alpha={float(r.alpha)!r}"
    elif isinstance(r, DynLog):
        head = f"dynlog:eps={float(r.eps)!r}"
    else:
        head = f"dynarctan:eps={float(r.eps)!r}"
    return f"{head},{format_degree(spec.degree_rule)}"
