"""Liouville reduction of the two-vortex problem.

Fixing the rotational momentum J eliminates the collective meridional
coordinate V as a function of the separation dv; fixing the energy E
then determines the relative angle du algebraically, up to a branch
sign eps = sign(sin du) that flips at turning points.  What remains is
a single first-order flow in dv, solvable by quadrature, from which the
mean azimuth U is reconstructed by integrating the drift rate.

Only same-sign circulation pairs are supported: there the momentum
constraint is strictly monotone in V and the inversion is unique.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import cumulative_simpson, cumulative_trapezoid, quad, solve_ivp

from .dynamics import EPS_F, VortexSystem, hamiltonian, momentum
from .errors import (
    CollisionError,
    InadmissibleError,
    NoRootError,
    StepFailure,
    UnsupportedError,
)
from .geometry import CatenoidParams, momentum_density

FOUR_PI = 4.0 * math.pi

#: Overshoot past |cos du| = 1 that is clamped instead of raised; turning
#: points sit exactly on the boundary, so floating-point spill is expected.
CLAMP_TOL = 1e-12

#: Residual tolerance of the momentum inversion, relative to max(1, |J0|).
SOLVE_V_TOL = 1e-13


@dataclass(frozen=True)
class CollectiveState:
    """Two-vortex collective/relative coordinates plus the branch sign.

    V = (v1+v2)/2, dv = v1-v2, U = (u1+u2)/2, du = u1-u2 (all
    unwrapped); eps = sign(sin du) with the tie sin du = 0 resolved
    to +1.  The round trip through absolute coordinates is exact up to
    one rounding of the larger coordinate of each pair.
    """

    V: float
    dv: float
    U: float
    du: float
    eps: int


def to_collective(sys: VortexSystem) -> CollectiveState:
    """Collective coordinates of a two-vortex state."""
    if sys.n != 2:
        raise UnsupportedError("collective coordinates are defined for exactly two vortices")
    v1, v2 = sys.v
    u1, u2 = sys.u
    du = u1 - u2
    eps = -1 if math.sin(du) < 0.0 else 1
    return CollectiveState((v1 + v2) / 2.0, v1 - v2, (u1 + u2) / 2.0, du, eps)


def from_collective(cs: CollectiveState, circulations, params: CatenoidParams) -> VortexSystem:
    """Absolute coordinates v_{1,2} = V +/- dv/2, u_{1,2} = U +/- du/2."""
    v = np.array([cs.V + cs.dv / 2.0, cs.V - cs.dv / 2.0])
    u = np.array([cs.U + cs.du / 2.0, cs.U - cs.du / 2.0])
    return VortexSystem(params, np.asarray(circulations, dtype=float), v, u)


@dataclass(frozen=True)
class ReducedConstants:
    """Conserved values and strengths that drive the reduced flow."""

    E: float
    J0: float
    Gamma1: float
    Gamma2: float
    params: CatenoidParams

    def __post_init__(self):
        if self.Gamma1 == 0.0 or self.Gamma2 == 0.0:
            raise ValueError("circulations must be nonzero")
        if not (math.isfinite(self.E) and math.isfinite(self.J0)):
            raise ValueError("E and J0 must be finite")

    @property
    def C_E(self) -> float:
        """Energy constant exp(4 pi E / (Gamma1 Gamma2)); exp(4 pi E / Gamma^2) for equal strengths."""
        return math.exp(FOUR_PI * self.E / (self.Gamma1 * self.Gamma2))

    @property
    def same_sign(self) -> bool:
        return self.Gamma1 * self.Gamma2 > 0.0

    @classmethod
    def from_system(cls, sys: VortexSystem) -> "ReducedConstants":
        if sys.n != 2:
            raise UnsupportedError("reduction applies to exactly two vortices")
        g1, g2 = sys.circulations
        return cls(hamiltonian(sys), momentum(sys), float(g1), float(g2), sys.params)


def solve_V(dv: float, rc: ReducedConstants, tol: float = SOLVE_V_TOL) -> float:
    """Invert the momentum constraint for the collective coordinate.

    Solves Gamma1 S(V + dv/2) + Gamma2 S(V - dv/2) = J0 for V.  For
    same-sign strengths the left side is strictly monotone in V
    (dJ/dV = sum_i Gamma_i a h^2(v_i)), so the root is unique; it is
    found by geometric bracket expansion followed by safeguarded Newton.
    """
    if not rc.same_sign:
        raise UnsupportedError(
            "mixed-sign momentum inversion has non-unique branches; only same-sign pairs are supported"
        )
    a = rc.params.a
    g1, g2 = rc.Gamma1, rc.Gamma2
    sgn = 1.0 if g1 > 0.0 else -1.0  # sign of dJ/dV

    def resid(V):
        return (
            g1 * momentum_density(V + dv / 2.0, rc.params)
            + g2 * momentum_density(V - dv / 2.0, rc.params)
            - rc.J0
        )

    def dresid(V):
        return g1 * a * math.cosh((V + dv / 2.0) / a) ** 2 + g2 * a * math.cosh(
            (V - dv / 2.0) / a
        ) ** 2

    r0 = abs(rc.J0) / (min(abs(g1), abs(g2)) * a) + abs(dv) + 1.0
    lo, hi = -r0, r0
    for _ in range(200):
        if sgn * resid(lo) <= 0.0 <= sgn * resid(hi):
            break
        lo *= 2.0
        hi *= 2.0
    else:
        raise NoRootError("bracket expansion failed for the momentum constraint")

    tol_abs = tol * max(1.0, abs(rc.J0))
    x = 0.5 * (lo + hi)
    for _ in range(200):
        r = resid(x)
        if abs(r) <= tol_abs:
            return x
        if sgn * r > 0.0:
            hi = x
        else:
            lo = x
        x_new = x - r / dresid(x)
        if not (lo < x_new < hi):
            x_new = 0.5 * (lo + hi)
        if x_new == x:
            return x
        x = x_new
    raise NoRootError("momentum inversion did not converge")


def _split_positions(dv: float, rc: ReducedConstants) -> tuple[float, float]:
    V = solve_V(dv, rc)
    return V + dv / 2.0, V - dv / 2.0


def _eval(dv: float, rc: ReducedConstants) -> tuple[float, float, float, float]:
    """One momentum inversion feeding all reduced quantities.

    Returns (v1, v2, F_E, cos_du_raw); cos_du_raw is the unclamped
    cosh(dv/a) - F_E(dv).
    """
    v1, v2 = _split_positions(dv, rc)
    a = rc.params.a
    h1 = math.cosh(v1 / a)
    h2 = math.cosh(v2 / a)
    fe = rc.C_E * h1 ** (rc.Gamma1 / rc.Gamma2) * h2 ** (rc.Gamma2 / rc.Gamma1)
    return v1, v2, fe, math.cosh(dv / a) - fe


def energy_factor(dv: float, rc: ReducedConstants) -> float:
    """F_E(dv) = C_E h(v1)^(G1/G2) h(v2)^(G2/G1) with v_{1,2} from the momentum constraint."""
    return _eval(dv, rc)[2]


def _cos_du_raw(dv: float, rc: ReducedConstants) -> float:
    return _eval(dv, rc)[3]


def _clamp_cos(c: float, dv: float) -> float:
    if abs(c) <= 1.0:
        return c
    if abs(c) <= 1.0 + CLAMP_TOL:
        return math.copysign(1.0, c)
    raise InadmissibleError(
        f"dv={dv:.6g} outside the allowed window: cos(du)={c:.15g}"
    )


def cos_relative_angle(dv: float, rc: ReducedConstants) -> float:
    """cos(du) determined algebraically by dv through energy conservation.

    Admissible separations satisfy |cos(du)| <= 1; overshoot up to
    CLAMP_TOL is clamped to the boundary (turning points sit exactly
    there), anything beyond raises InadmissibleError.
    """
    return _clamp_cos(_cos_du_raw(dv, rc), dv)


def relative_angle(dv: float, eps: int, rc: ReducedConstants) -> float:
    """du on the branch eps: du = eps * arccos(cos(du)), in (-pi, pi]."""
    return eps * math.acos(cos_relative_angle(dv, rc))


def _prefactor_from(v1: float, v2: float, fe: float, rc: ReducedConstants) -> float:
    a = rc.params.a
    h1sq = math.cosh(v1 / a) ** 2
    h2sq = math.cosh(v2 / a) ** 2
    return (rc.Gamma2 / h1sq + rc.Gamma1 / h2sq) / (FOUR_PI * a * fe)


def _rate_prefactor(dv: float, rc: ReducedConstants) -> float:
    """[Gamma2/h^2(v1) + Gamma1/h^2(v2)] / (4 pi a F_E), the smooth part of the reduced rate."""
    v1, v2, fe, _ = _eval(dv, rc)
    return _prefactor_from(v1, v2, fe, rc)


def reduced_dv_rate(dv: float, eps: int, rc: ReducedConstants) -> float:
    """The single first-order flow: d(dv)/dt on the branch eps.

    d(dv)/dt = eps/(4 pi a F_E) [Gamma2 h^-2(v1) + Gamma1 h^-2(v2)]
               sqrt(1 - cos^2(du)).
    Exactly zero at turning points (|cos du| = 1).
    """
    v1, v2, fe, c_raw = _eval(dv, rc)
    c = _clamp_cos(c_raw, dv)
    return eps * _prefactor_from(v1, v2, fe, rc) * math.sqrt(max(1.0 - c * c, 0.0))


def drift_rate(dv: float, du: float, rc: ReducedConstants, eps_f: float = EPS_F) -> float:
    """Instantaneous mean azimuthal velocity dU/dt at the reduced state (dv, du).

    dU/dt = 1/(8 pi a^2) [ -sinh(dv/a)/F (Gamma2/h1^2 - Gamma1/h2^2)
                           + Gamma1 tanh(v1/a)/h1^2
                           + Gamma2 tanh(v2/a)/h2^2 ],
    the curvature-induced drift with no planar analogue.
    """
    v1, v2, _, _ = _eval(dv, rc)
    a = rc.params.a
    F = math.cosh(dv / a) - math.cos(du)
    if F < eps_f:
        raise CollisionError(f"pair factor F={F:.3e} below floor {eps_f:.1e}")
    h1sq = math.cosh(v1 / a) ** 2
    h2sq = math.cosh(v2 / a) ** 2
    interaction = -math.sinh(dv / a) / F * (rc.Gamma2 / h1sq - rc.Gamma1 / h2sq)
    self_terms = (
        rc.Gamma1 * math.tanh(v1 / a) / h1sq + rc.Gamma2 * math.tanh(v2 / a) / h2sq
    )
    return (interaction + self_terms) / (8.0 * math.pi * a * a)


def _window_gap(dv: float, rc: ReducedConstants) -> float:
    """G(dv) = 1 - cos^2(du); positive inside the allowed window, zero at turning points."""
    c = _cos_du_raw(dv, rc)
    return 1.0 - c * c


def _bisect_wall(inner: float, outer: float, rc: ReducedConstants, iters: int = 100) -> float:
    """Bisect G between an inside point and an outside point; returns the inside endpoint."""
    g_inner = _window_gap(inner, rc)
    if g_inner < 0.0:
        raise InadmissibleError(f"dv={inner:.6g} is not inside the window")
    for _ in range(iters):
        mid = 0.5 * (inner + outer)
        if mid == inner or mid == outer:
            break
        if _window_gap(mid, rc) >= 0.0:
            inner = mid
        else:
            outer = mid
    return inner


def admissible_window(rc: ReducedConstants, dv_seed: float, step0: float | None = None) -> tuple[float, float]:
    """Turning points (dv_lo, dv_hi) of the window containing ``dv_seed``.

    Expands geometrically outward from the seed until G = 1 - cos^2(du)
    changes sign, then bisects each wall to floating-point resolution.
    """
    if _window_gap(dv_seed, rc) < 0.0:
        raise InadmissibleError(f"seed dv={dv_seed:.6g} is outside the allowed window")
    a = rc.params.a
    step0 = 0.05 * a if step0 is None else step0
    walls = []
    for direction in (-1.0, 1.0):
        inner = dv_seed
        step = step0
        for _ in range(200):
            outer = inner + direction * step
            if _window_gap(outer, rc) < 0.0:
                walls.append(_bisect_wall(inner, outer, rc))
                break
            inner = outer
            step *= 1.6
        else:
            raise NoRootError("no turning point found; window appears unbounded")
    lo, hi = sorted(walls)
    return float(lo), float(hi)


def quadrature_time(
    dv0: float,
    dv1: float,
    eps: int,
    rc: ReducedConstants,
    abs_tol: float = 1e-10,
) -> float:
    """Elapsed time along the reduced flow from dv0 to dv1 on branch eps.

    t - t0 = eps * integral of d(xi) / [prefactor(xi) sqrt(1 - cos^2 du)].
    The endpoints may be turning points: substituting xi = end +/- s^2
    removes the inverse-square-root singularity exactly, after which
    adaptive quadrature on each half converges at the stated absolute
    tolerance.  Positive result means the motion direction matches eps.
    """
    if dv1 == dv0:
        return 0.0
    lo, hi = (dv0, dv1) if dv1 > dv0 else (dv1, dv0)
    orient = 1.0 if dv1 > dv0 else -1.0
    mid = 0.5 * (lo + hi)
    if _window_gap(mid, rc) < 0.0:
        raise InadmissibleError("integration interval leaves the allowed window")

    def integrand(xi):
        g = _window_gap(xi, rc)
        if g < -1e-9:
            raise InadmissibleError(
                f"integration interval leaves the allowed window at dv={xi:.6g}"
            )
        g = max(g, 1e-300)  # guard against fp underflow exactly at a wall
        return 1.0 / (_rate_prefactor(xi, rc) * math.sqrt(g))

    left, _ = quad(
        lambda s: 2.0 * s * integrand(lo + s * s),
        0.0,
        math.sqrt(mid - lo),
        epsabs=abs_tol / 2.0,
        epsrel=1e-11,
        limit=200,
    )
    right, _ = quad(
        lambda s: 2.0 * s * integrand(hi - s * s),
        0.0,
        math.sqrt(hi - mid),
        epsabs=abs_tol / 2.0,
        epsrel=1e-11,
        limit=200,
    )
    return eps * orient * (left + right)


def reconstruct_U(times, dv, eps, rc: ReducedConstants, U0: float) -> np.ndarray:
    """Cumulative integral of the drift rate along a sampled dv(t) series.

    ``du`` is reconstructed on the recorded branch, du = eps arccos(C);
    composite Simpson quadrature runs over the sampled cadence.  A
    single-sample series returns just [U0].
    """
    times = np.asarray(times, dtype=float)
    dv = np.asarray(dv, dtype=float)
    eps = np.asarray(eps)
    if times.size == 0:
        return np.array([])
    udot = np.array(
        [
            drift_rate(dv[k], relative_angle(dv[k], int(eps[k]), rc), rc)
            for k in range(times.size)
        ]
    )
    if times.size == 1:
        return np.array([U0])
    if times.size == 2:
        return U0 + np.concatenate([[0.0], cumulative_trapezoid(udot, x=times)])
    return U0 + cumulative_simpson(udot, x=times, initial=0.0)


@dataclass(frozen=True)
class ReducedTrajectory:
    """Sampled solution of the reduced dv flow with branch bookkeeping."""

    times: np.ndarray
    dv: np.ndarray
    eps: np.ndarray
    turning_times: tuple[float, ...]
    turning_points: tuple[float, ...]


def integrate_reduced(
    dv0: float,
    eps0: int,
    rc: ReducedConstants,
    t_final: float,
    sample_dt: float,
    rel_tol: float = 1e-12,
    abs_tol: float = 1e-12,
    theta: float = 1e-8,
) -> ReducedTrajectory:
    """Integrate d(dv)/dt = eps * rate(dv) with event-driven branch flips.

    The flow approaches each turning point with square-root tangency, so
    the integration terminates on the event G(dv) = theta (a small gap
    threshold), the wall is localized by bisection, and the passage
    through the turning point is taken analytically: locally
    dv(t) = dv_wall -/+ (c B^2/4)(t - t_turn)^2, which mirrors the state
    back to the event gap with eps negated.  The local slope c = |G'| is
    measured at the wall itself (the event-side position is below the
    integrator's resolution there), so theta only needs to be small
    against the window width.  Start strictly inside the window.
    """
    g_start = _window_gap(dv0, rc)
    if g_start <= 0.0:
        raise InadmissibleError("initial dv must lie strictly inside the allowed window")

    def rate_mag(x: float) -> float:
        v1, v2, fe, c_raw = _eval(x, rc)
        g = max(1.0 - c_raw * c_raw, 0.0)
        return _prefactor_from(v1, v2, fe, rc) * math.sqrt(g)

    def event(t, y):
        return _window_gap(y[0], rc) - theta

    event.terminal = True
    event.direction = -1.0

    segments = []  # (t0, t1, dense solution, eps)
    gaps = []  # (t_enter, t_exit, dv_wall, t_turn, curv) with dv = dv_wall - curv (t-t_turn)^2
    turning_times: list[float] = []
    turning_points: list[float] = []

    t_cur, x_cur, eps = 0.0, dv0, int(eps0)
    for _ in range(10_000):
        if t_cur >= t_final:
            break
        sol = solve_ivp(
            lambda t, y: (eps * rate_mag(y[0]),),
            (t_cur, t_final),
            [x_cur],
            method="DOP853",
            events=event,
            dense_output=True,
            rtol=rel_tol,
            atol=abs_tol,
        )
        if sol.status == 0:
            segments.append((t_cur, t_final, sol.sol, eps))
            break
        if sol.status != 1:
            raise StepFailure(f"reduced integration failed: {sol.message}")

        t_e = float(sol.t_events[0][0])
        x_e = float(sol.y_events[0][0][0])
        segments.append((t_cur, t_e, sol.sol, eps))

        # locate the wall ahead of the motion
        step = max(4.0 * theta, 1e-9)
        inner = x_e
        for _ in range(200):
            outer = inner + eps * step
            if _window_gap(outer, rc) < 0.0:
                break
            inner = outer
            step *= 2.0
        else:
            raise NoRootError("turning-point localization failed")
        wall = _bisect_wall(inner, outer, rc)

        # local model from wall-side quantities only: G(x) ~ c |wall - x|,
        # c = |G'| = 2|C'| there, with C' from a centered difference of the
        # smooth cos(du) relation (no cancellation, unlike G near the wall)
        hc = 1e-6 * max(1.0, abs(wall))
        cprime = (_cos_du_raw(wall + hc, rc) - _cos_du_raw(wall - hc, rc)) / (2.0 * hc)
        c_loc = 2.0 * abs(cprime)
        if c_loc <= 0.0:
            raise NoRootError("degenerate turning point: window has zero slope")
        b_wall = _rate_prefactor(wall, rc)
        t_rem = 2.0 * math.sqrt(theta) / (c_loc * b_wall)
        t_turn = t_e + t_rem
        curv = eps * c_loc * b_wall**2 / 4.0
        gaps.append((t_e, t_e + 2.0 * t_rem, wall, t_turn, curv, eps))
        turning_times.append(t_turn)
        turning_points.append(wall)

        eps = -eps
        t_cur = t_e + 2.0 * t_rem
        x_cur = wall + eps * (theta / c_loc)  # mirrored back inside the window

    ts = np.arange(int(math.floor(t_final / sample_dt + 1e-9)) + 1) * sample_dt
    if ts[-1] < t_final * (1.0 - 1e-12):
        ts = np.append(ts, t_final)
    else:
        ts[-1] = min(ts[-1], t_final)
    dv_out = np.empty_like(ts)
    eps_out = np.empty(ts.shape, dtype=int)
    for k, t in enumerate(ts):
        placed = False
        for (t0, t1, dense, seg_eps) in segments:
            if t0 - 1e-12 <= t <= t1 + 1e-12:
                dv_out[k] = float(dense(min(max(t, t0), t1))[0])
                eps_out[k] = seg_eps
                placed = True
                break
        if not placed:
            for (t_in, t_out, wall, t_turn, curv, gap_eps) in gaps:
                if t_in <= t <= t_out:
                    dv_out[k] = wall - curv * (t - t_turn) ** 2
                    eps_out[k] = gap_eps if t <= t_turn else -gap_eps
                    placed = True
                    break
        if not placed:
            raise StepFailure(f"no segment covers sample time t={t:.6g}")
    return ReducedTrajectory(
        ts, dv_out, eps_out, tuple(turning_times), tuple(turning_points)
    )


def write_reduced_csv(times, dv, du, V, U_reconstructed, eps, path) -> None:
    """Reduced-trajectory CSV: t, dv, du, V, U_reconstructed, eps at 17 significant digits."""
    data = np.column_stack([times, dv, du, V, U_reconstructed, np.asarray(eps, dtype=float)])
    np.savetxt(
        path,
        data,
        fmt="%.17g",
        delimiter=",",
        header="t,dv,du,V,U_reconstructed,eps",
        comments="",
    )
