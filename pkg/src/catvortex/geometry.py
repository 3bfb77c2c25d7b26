"""Pure geometry of the catenoid with throat radius ``a``.

All functions below are closed-form and total; they accept scalars or
NumPy arrays in the coordinate argument.  The azimuthal coordinate ``u``
is stored unwrapped everywhere in this package (secular azimuthal drift
is measured as an unbounded quantity); wrapping to [0, 2*pi) happens
only inside :func:`embed`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class CatenoidParams:
    """The surface: a catenoid of throat radius ``a > 0``.

    ``a`` is the global length unit; all other geometric quantities
    derive from it.
    """

    a: float = 1.0

    def __post_init__(self):
        if not (math.isfinite(self.a) and self.a > 0.0):
            raise ValueError(f"throat radius must be positive and finite, got {self.a}")


@dataclass(frozen=True)
class SurfacePoint:
    """Intrinsic coordinates (v, u): meridional position and unwrapped azimuth."""

    v: float
    u: float

    def __post_init__(self):
        if not (math.isfinite(self.v) and math.isfinite(self.u)):
            raise ValueError(f"coordinates must be finite, got (v={self.v}, u={self.u})")


@dataclass(frozen=True)
class EmbeddedPoint:
    """Ambient 3-space image of a surface point."""

    x: float
    y: float
    z: float

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z])


def conformal_factor(v, p: CatenoidParams):
    """h(v) = cosh(v/a), the conformal weight of the metric.  h >= 1, even in v."""
    h = np.cosh(np.asarray(v, dtype=float) / p.a)
    return h if np.ndim(v) else float(h)


def gaussian_curvature(V, p: CatenoidParams):
    """K(V) = -1 / (a^2 cosh^4(V/a)); strictly negative, most curved at the throat."""
    h = np.cosh(np.asarray(V, dtype=float) / p.a)
    K = -1.0 / (p.a**2 * h**4)
    return K if np.ndim(V) else float(K)


def curvature_gradient(V, p: CatenoidParams):
    """K'(V) = (4/a^3) sinh(V/a) / cosh^5(V/a); odd in V, zero at the throat."""
    x = np.asarray(V, dtype=float) / p.a
    Kp = (4.0 / p.a**3) * np.sinh(x) / np.cosh(x) ** 5
    return Kp if np.ndim(V) else float(Kp)


def momentum_density(v, p: CatenoidParams):
    """S(v) = (a/2) v + (a^2/4) sinh(2v/a).

    Generator of the rotational momentum map; odd and strictly
    increasing with S'(v) = a cosh^2(v/a).
    """
    x = np.asarray(v, dtype=float)
    S = 0.5 * p.a * x + 0.25 * p.a**2 * np.sinh(2.0 * x / p.a)
    return S if np.ndim(v) else float(S)


def embed(pt: SurfacePoint, p: CatenoidParams) -> EmbeddedPoint:
    """Map (v, u) to ambient coordinates (a h(v) cos u, a h(v) sin u, v).

    ``u`` is reduced mod 2*pi before evaluating the trigonometric pair,
    so arbitrarily large unwrapped azimuths stay accurate.
    """
    u = pt.u % TWO_PI
    r = p.a * math.cosh(pt.v / p.a)
    return EmbeddedPoint(r * math.cos(u), r * math.sin(u), pt.v)


def chord_distance(pt1: SurfacePoint, pt2: SurfacePoint, p: CatenoidParams) -> float:
    """Euclidean distance between the two embedded points.

    Uses the closed form
    d^2 = a^2 [h^2(v1) + h^2(v2) - 2 h(v1) h(v2) cos(du)] + dv^2,
    which agrees with |embed(pt1) - embed(pt2)|.
    """
    h1 = math.cosh(pt1.v / p.a)
    h2 = math.cosh(pt2.v / p.a)
    dv = pt1.v - pt2.v
    d2 = p.a**2 * (h1 * h1 + h2 * h2 - 2.0 * h1 * h2 * math.cos(pt1.u - pt2.u)) + dv * dv
    return math.sqrt(max(d2, 0.0))
