"""Gauge functions ``f: [0, inf) -> [0, inf)``.

A gauge aggregates componentwise quantities as ``f^{-1}(sum_m f(q_m))``.
The built-in family is ``t**p`` with ``p >= 1`` (``identity`` is ``p = 1``);
custom gauges must bring their own inverse.
"""

from dataclasses import dataclass, field, replace
from typing import Callable, Optional

import numpy as np

from .errors import NegativeArgument

__all__ = ["GaugeFunction", "PropertyReport", "power", "identity", "custom", "validate", "parse_gauge"]


def _check_nonneg(t):
    arr = np.asarray(t, dtype=float)
    if np.any(arr < 0) or np.any(np.isnan(arr)):
        raise NegativeArgument("gauge argument must be >= 0")
    return arr


@dataclass(frozen=True)
class GaugeFunction:
    kind: str
    p: float = 1.0
    name: str = ""
    forward_map: Optional[Callable] = field(default=None, compare=False, repr=False)
    inverse_map: Optional[Callable] = field(default=None, compare=False, repr=False)
    derivative_map: Optional[Callable] = field(default=None, compare=False, repr=False)
    multiplicative: bool = False
    # "proved", "validated(<n>)" or "unknown"
    geometrically_convex: str = "unknown"
    convex: str = "unknown"

    @property
    def key(self):
        if self.kind == "custom":
            return ("custom", self.name)
        return ("power", float(self.p))

    @property
    def is_power(self):
        return self.kind in ("power", "identity")

    def __str__(self):
        if self.kind == "identity":
            return "identity"
        if self.kind == "power":
            return f"power:{self.p:g}"
        return f"custom:{self.name}"

    def __call__(self, t):
        arr = _check_nonneg(t)
        if self.is_power:
            if self.p == 1.0:
                out = arr
            elif self.p == 2.0:
                out = arr * arr
            elif self.p == 3.0:
                out = arr * arr * arr
            else:
                out = arr ** self.p
        else:
            out = np.asarray(self.forward_map(arr), dtype=float)
        return float(out) if np.ndim(out) == 0 else out

    def inverse(self, s):
        arr = _check_nonneg(s)
        if self.is_power:
            out = arr if self.p == 1.0 else arr ** (1.0 / self.p)
        else:
            out = np.asarray(self.inverse_map(arr), dtype=float)
        return float(out) if np.ndim(out) == 0 else out

    def derivative(self, t):
        """f'(t); central differences for custom gauges without an explicit map."""
        arr = np.asarray(t, dtype=float)
        if self.is_power:
            if self.p == 1.0:
                out = np.ones_like(arr)
            else:
                out = self.p * np.clip(arr, 0.0, None) ** (self.p - 1.0)
        elif self.derivative_map is not None:
            out = np.asarray(self.derivative_map(arr), dtype=float)
        else:
            h = 1e-6 * (1.0 + np.abs(arr))
            lo = np.clip(arr - h, 0.0, None)
            hi = arr + h
            out = (self.forward_map(hi) - self.forward_map(lo)) / (hi - lo)
        return float(out) if np.ndim(out) == 0 else out

    def aggregate(self, values, axis=-1):
        """``f^{-1}(sum f(values))`` along ``axis``."""
        return self.inverse(np.sum(self(np.asarray(values, dtype=float)), axis=axis))

    def has(self, prop):
        """True if the property is proved or was established by validation."""
        if prop == "multiplicative":
            return self.multiplicative
        status = getattr(self, prop)
        return status == "proved" or status.startswith("validated")


def power(p):
    p = float(p)
    if not p >= 1.0:
        raise ValueError("power gauges need p >= 1")
    kind = "identity" if p == 1.0 else "power"
    return GaugeFunction(kind=kind, p=p, multiplicative=True, geometrically_convex="proved", convex="proved")


def identity():
    return power(1.0)


def custom(name, forward, inverse, derivative=None):
    return GaugeFunction(kind="custom", name=name, forward_map=forward, inverse_map=inverse,
                         derivative_map=derivative)


def parse_gauge(text):
    """Parse the command-line syntax ``power:P`` or ``identity``."""
    text = text.strip()
    if text == "identity":
        return identity()
    kind, sep, arg = text.partition(":")
    if kind == "power" and sep:
        return power(float(arg))
    raise ValueError(f"unknown gauge {text!r}; expected 'power:P' or 'identity'")


@dataclass(frozen=True)
class PropertyReport:
    monotone: bool
    zero_at_zero: bool
    multiplicative: bool
    geometrically_convex: bool
    convex: bool
    n_samples: int


def validate(f, n_samples=10_000, rng_seed=0):
    """Sample-based check of the structural gauge properties on ``[0, 100]^2``."""
    if n_samples < 1:
        raise ValueError("n_samples must be >= 1")
    rng = np.random.default_rng(rng_seed)
    x = rng.uniform(0.0, 100.0, n_samples)
    y = rng.uniform(0.0, 100.0, n_samples)
    rtol = 1e-8
    with np.errstate(over="ignore", invalid="ignore"):
        fx, fy = f(x), f(y)
        lo, hi = np.minimum(x, y), np.maximum(x, y)
        distinct = hi > lo
        monotone = bool(np.all(f(lo)[distinct] < f(hi)[distinct]))
        zero = abs(f(0.0)) <= 1e-12
        prod = fx * fy
        fxy = f(x * y)
        mult = bool(np.all(np.abs(fxy - prod) <= rtol * (1.0 + np.abs(prod))))
        gm = f(np.sqrt(x * y))
        rhs = np.sqrt(prod)
        geo = bool(np.all(gm <= rhs + rtol * (1.0 + rhs)))
        mid = f(0.5 * (x + y))
        avg = 0.5 * (fx + fy)
        cvx = bool(np.all(mid <= avg + rtol * (1.0 + avg)))
    return PropertyReport(monotone, bool(zero), mult, geo, cvx, n_samples)


def with_validation(f, report):
    """Return a copy of a custom gauge carrying the flags established by ``report``."""
    tag = f"validated({report.n_samples})"
    changes = {}
    if f.geometrically_convex == "unknown" and report.geometrically_convex:
        changes["geometrically_convex"] = tag
    if f.convex == "unknown" and report.convex:
        changes["convex"] = tag
    if not f.multiplicative and report.multiplicative:
        changes["multiplicative"] = True
    return replace(f, **changes) if changes else f
