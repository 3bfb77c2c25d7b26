"""Closed forms for the rigidly rotating antipodal pair and its stability.

Two identical vortices at the same latitude V0 with du = pi rotate
rigidly at Omega(V0); the rate is set by the curvature gradient, peaks
at V* = (a/2) ln(2 + sqrt(3)), and the state is linearly unstable away
from the throat with growth rate sqrt(3) |Omega(V0)|.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .dynamics import VortexSystem
from .errors import PerturbationTooLarge
from .geometry import CatenoidParams, curvature_gradient, gaussian_curvature

FOUR_PI = 4.0 * math.pi


def omega_symmetric(V0: float, Gamma: float, p: CatenoidParams) -> float:
    """Angular velocity Omega = Gamma/(4 pi a^2) tanh(V0/a) sech^2(V0/a).

    Odd in V0 and zero only at the throat.
    """
    x = V0 / p.a
    return Gamma / (FOUR_PI * p.a**2) * math.tanh(x) / math.cosh(x) ** 2


def omega_from_curvature(V: float, Gamma: float, p: CatenoidParams) -> float:
    """Same rate written geometrically: Omega = Gamma/(16 pi) K'(V)/sqrt(-K(V))."""
    return Gamma / (16.0 * math.pi) * curvature_gradient(V, p) / math.sqrt(
        -gaussian_curvature(V, p)
    )


def v_star(p: CatenoidParams) -> float:
    """Latitude of maximal rotation rate, V* = (a/2) ln(2 + sqrt(3))."""
    return 0.5 * p.a * math.log(2.0 + math.sqrt(3.0))


@dataclass(frozen=True)
class SymmetricOrbit:
    """The exact co-rotating solution at latitude V0."""

    V0: float
    Gamma: float
    params: CatenoidParams
    Omega: float

    def initial_system(self, u1: float = math.pi / 2.0) -> VortexSystem:
        """Antipodal two-vortex state (v = V0 for both, du = pi exactly)."""
        return VortexSystem(
            self.params,
            np.array([self.Gamma, self.Gamma]),
            np.array([self.V0, self.V0]),
            np.array([u1, u1 - math.pi]),
        )


def symmetric_orbit(V0: float, Gamma: float, p: CatenoidParams) -> SymmetricOrbit:
    return SymmetricOrbit(V0, Gamma, p, omega_symmetric(V0, Gamma, p))


@dataclass(frozen=True)
class StabilityData:
    """Linearization about the antipodal state.

    eta = dv and phi = du - pi evolve by eta' = -A phi, phi' = -B eta;
    the growth rate is lambda = sqrt(A B) and the growing mode has
    phi/eta = eigen_ratio = -lambda/A.
    """

    A: float
    B: float
    lam: float
    eigen_ratio: float


def stability(V0: float, Gamma: float, p: CatenoidParams) -> StabilityData:
    """Couplings, growth rate lambda = sqrt(3)|Omega(V0)|, and the unstable eigenvector."""
    a = p.a
    sech2 = 1.0 / math.cosh(V0 / a) ** 2
    tanh = math.tanh(V0 / a)
    A = Gamma / (FOUR_PI * a) * sech2
    B = 3.0 * Gamma / (FOUR_PI * a**3) * sech2 * tanh**2
    lam = math.sqrt(A * B) if A * B >= 0.0 else float("nan")
    return StabilityData(A, B, lam, -lam / A)


def seed_unstable(V0: float, eta0: float, Gamma: float, p: CatenoidParams) -> VortexSystem:
    """Two-vortex state displaced along the unstable eigenvector.

    v_{1,2} = V0 +/- eta0/2 and u_{1,2} = +/-(pi + phi0)/2 with
    phi0 = eigen_ratio * eta0.  The amplitude bound |eta0| <= a/100
    keeps several e-folds of growth inside the linear regime.
    """
    if abs(eta0) > 1e-2 * p.a:
        raise PerturbationTooLarge(
            f"|eta0|={abs(eta0):.3g} exceeds the linear-regime bound {1e-2 * p.a:.3g}"
        )
    phi0 = stability(V0, Gamma, p).eigen_ratio * eta0
    return VortexSystem(
        p,
        np.array([Gamma, Gamma]),
        np.array([V0 + eta0 / 2.0, V0 - eta0 / 2.0]),
        np.array([(math.pi + phi0) / 2.0, -(math.pi + phi0) / 2.0]),
    )
