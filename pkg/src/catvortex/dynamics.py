"""N-vortex Hamiltonian dynamics on the catenoid.

The phase space is (v_i, u_i) with circulations gamma_i; the flow is
generated by the pairwise log kernel plus a curvature self-term.  The
equations of motion are evaluated by the compiled/pure kernel backend
(:mod:`catvortex.kernels`); this module owns the value types, the
collision floor, and the finite-difference Poisson bracket used for the
integrability checks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from . import kernels
from .errors import CollisionError
from .geometry import CatenoidParams, SurfacePoint

FOUR_PI = 4.0 * math.pi

#: Default floor on the pair factor F = cosh(dv/a) - cos(du).  Evaluations
#: below it raise CollisionError rather than regularizing.
EPS_F = 1e-12


def _as_locked_array(x, name: str) -> np.ndarray:
    arr = np.array(x, dtype=float, copy=True).reshape(-1)
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} must be finite")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class VortexSystem:
    """Phase-space state: N circulations plus N surface positions.

    Coordinate arrays are copied and locked read-only; derived states are
    produced with :meth:`with_coords`.
    """

    params: CatenoidParams
    circulations: np.ndarray
    v: np.ndarray
    u: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "circulations", _as_locked_array(self.circulations, "circulations"))
        object.__setattr__(self, "v", _as_locked_array(self.v, "v"))
        object.__setattr__(self, "u", _as_locked_array(self.u, "u"))
        n = self.circulations.shape[0]
        if n < 1:
            raise ValueError("need at least one vortex")
        if self.v.shape[0] != n or self.u.shape[0] != n:
            raise ValueError("circulations, v and u must have equal length")
        if np.any(self.circulations == 0.0):
            raise ValueError("every circulation must be nonzero")
        if kernels.min_pair_factor(self.v, self.u, self.params.a) <= 0.0:
            raise CollisionError("coincident vortices in initial data")

    @property
    def n(self) -> int:
        return self.circulations.shape[0]

    @property
    def positions(self) -> tuple[SurfacePoint, ...]:
        return tuple(SurfacePoint(float(vi), float(ui)) for vi, ui in zip(self.v, self.u))

    @classmethod
    def from_points(
        cls,
        params: CatenoidParams,
        circulations: Sequence[float],
        points: Sequence[SurfacePoint],
    ) -> "VortexSystem":
        return cls(
            params,
            np.asarray(circulations, dtype=float),
            np.array([pt.v for pt in points]),
            np.array([pt.u for pt in points]),
        )

    def with_coords(self, v=None, u=None) -> "VortexSystem":
        return VortexSystem(
            self.params,
            self.circulations,
            self.v if v is None else v,
            self.u if u is None else u,
        )

    def rotated(self, theta: float) -> "VortexSystem":
        """Global azimuthal shift u_i -> u_i + theta (a symmetry of the flow)."""
        return self.with_coords(u=self.u + theta)

    def reversed(self) -> "VortexSystem":
        """Time-reversed twin: negating every circulation negates the vector field."""
        return VortexSystem(self.params, -self.circulations, self.v, self.u)


@dataclass(frozen=True)
class PhaseVelocity:
    """(dv_i/dt, du_i/dt) for each vortex."""

    dv: np.ndarray
    du: np.ndarray


@dataclass(frozen=True)
class Invariants:
    """The two conserved quantities of the flow."""

    H: float
    J: float


def pair_kernel(
    pt_i: SurfacePoint,
    pt_j: SurfacePoint,
    p: CatenoidParams,
    eps_f: float = EPS_F,
) -> float:
    """Interaction factor F = cosh((v_i - v_j)/a) - cos(u_i - u_j).

    F >= 0 with equality only for coincident points; symmetric and
    2*pi-periodic in the azimuthal difference.  Raises CollisionError
    below the floor ``eps_f``.
    """
    F = math.cosh((pt_i.v - pt_j.v) / p.a) - math.cos(pt_i.u - pt_j.u)
    if F < eps_f:
        raise CollisionError(f"pair factor F={F:.3e} below floor {eps_f:.1e}")
    return F


def green_function(pt_i: SurfacePoint, pt_j: SurfacePoint, p: CatenoidParams) -> float:
    """Hydrodynamic Green's function G = log(F) / (4 pi)."""
    return math.log(pair_kernel(pt_i, pt_j, p)) / FOUR_PI


def hamiltonian(sys: VortexSystem, eps_f: float = EPS_F) -> float:
    """Total interaction energy of the system.

    Pairwise term sum_{i<j} g_i g_j G(i, j) minus the curvature
    self-energy (1/4 pi) sum_i g_i^2 log h(v_i).
    """
    _check_floor(sys, eps_f)
    return kernels.hamiltonian(sys.v, sys.u, sys.circulations, sys.params.a)


def momentum(sys: VortexSystem) -> float:
    """Rotational momentum J = sum_i gamma_i S(v_i); independent of all u_i."""
    return kernels.momentum(sys.v, sys.circulations, sys.params.a)


def invariants(sys: VortexSystem, eps_f: float = EPS_F) -> Invariants:
    return Invariants(hamiltonian(sys, eps_f), momentum(sys))


def vector_field(sys: VortexSystem, eps_f: float = EPS_F) -> PhaseVelocity:
    """Explicit phase-space velocity of every vortex.

    Consistent with Hamilton's equations
    gamma_i a h^2(v_i) dv_i/dt =  dH/du_i,
    gamma_i a h^2(v_i) du_i/dt = -dH/dv_i.
    """
    dv = np.empty(sys.n)
    du = np.empty(sys.n)
    min_f = kernels.rhs(sys.v, sys.u, sys.circulations, sys.params.a, dv, du)
    if min_f < eps_f:
        raise CollisionError(f"pair factor F={min_f:.3e} below floor {eps_f:.1e}")
    return PhaseVelocity(dv, du)


def _check_floor(sys: VortexSystem, eps_f: float) -> None:
    min_f = kernels.min_pair_factor(sys.v, sys.u, sys.params.a)
    if min_f < eps_f:
        raise CollisionError(f"pair factor F={min_f:.3e} below floor {eps_f:.1e}")


Observable = Callable[[VortexSystem], float]


def _fd_step(x: float) -> float:
    # truncation/round-off balance at double precision
    return 1e-6 * max(1.0, abs(x))


def _partials(f: Observable, sys: VortexSystem, step: float | None):
    """Central-difference gradients of a scalar observable.

    Returns (dA/dv_i, dA/du_i) arrays.  Per-coordinate steps follow
    1e-6 * max(1, |x|) unless an explicit ``step`` is given.
    """
    n = sys.n
    dfv = np.empty(n)
    dfu = np.empty(n)
    for i in range(n):
        hv = step if step is not None else _fd_step(sys.v[i])
        vp = sys.v.copy()
        vm = sys.v.copy()
        vp[i] += hv
        vm[i] -= hv
        dfv[i] = (f(sys.with_coords(v=vp)) - f(sys.with_coords(v=vm))) / (2.0 * hv)
        hu = step if step is not None else _fd_step(sys.u[i])
        up = sys.u.copy()
        um = sys.u.copy()
        up[i] += hu
        um[i] -= hu
        dfu[i] = (f(sys.with_coords(u=up)) - f(sys.with_coords(u=um))) / (2.0 * hu)
    return dfv, dfu


def poisson_bracket(
    fA: Observable,
    fB: Observable,
    sys: VortexSystem,
    step: float | None = None,
) -> float:
    """Numerical Poisson bracket of two scalar observables.

    {A, B} = sum_i [ (dA/dv_i dB/du_i - dA/du_i dB/dv_i)
                     / (gamma_i a h^2(v_i)) ],
    with partials by central differences.  Antisymmetric up to
    discretization error; {A, A} is exactly zero.
    """
    if step is not None and step <= 0.0:
        raise ValueError("step must be positive")
    dAv, dAu = _partials(fA, sys, step)
    dBv, dBu = _partials(fB, sys, step)
    weight = sys.circulations * sys.params.a * np.cosh(sys.v / sys.params.a) ** 2
    return float(np.sum((dAv * dBu - dAu * dBv) / weight))
