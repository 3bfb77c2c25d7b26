"""Reproducible experiment drivers behind the CLI.

Each ``run_*`` function builds its initial state, integrates, computes
the scenario's diagnostics and regression fits, and (when ``out_dir``
is set) writes the trajectory CSV plus a machine-readable summary JSON.
Identical configuration and seed give bit-identical CSV output; wall
time appears only in the JSON.
"""

from __future__ import annotations

import json
import math
import time
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np
from scipy.optimize import brentq

from . import kernels
from .dynamics import VortexSystem, vector_field
from .errors import CollisionError, WindowEmpty
from .exact import (
    omega_from_curvature,
    omega_symmetric,
    seed_unstable,
    stability,
    symmetric_orbit,
    v_star,
)
from .geometry import CatenoidParams, curvature_gradient, gaussian_curvature
from .integrate import IntegratorSettings, Trajectory, drift_report, integrate, write_trajectory_csv
from .reduction import (
    ReducedConstants,
    admissible_window,
    cos_relative_angle,
    quadrature_time,
    reconstruct_U,
    reduced_dv_rate,
    relative_angle,
    solve_V,
    to_collective,
    write_reduced_csv,
)

SCENARIOS = ("rigid", "instability", "pair", "reduce", "cluster", "profile")

#: Draw-rejection floor on the pair factor for cluster initial conditions.
#: Rejects only genuine near-collisions; the draw stays uniform otherwise.
DRAW_FLOOR = 1e-6

#: Default PRNG seed of the cluster scenario (recorded in every summary).
#: Chosen once so the shipped configuration has no accidental close pair.
DEFAULT_CLUSTER_SEED = 17

#: The cluster is the only scenario with fast internal orbits; its default
#: tolerances sit at the double-precision floor of the step controller.
CLUSTER_TOL = 2.5e-14


@dataclass
class ScenarioConfig:
    """Flat configuration shared by all scenarios; unused fields are ignored.

    ``t_final``/``sample_dt`` default per scenario (rigid 50, instability
    6/lambda, pair/reduce 40, cluster 60).
    """

    scenario: str
    a: float = 1.0
    gamma: float = 1.0
    v0: float = 0.5
    eta0: float = 1e-6
    t_final: float | None = None
    sample_dt: float | None = None
    rel_tol: float | None = None
    abs_tol: float | None = None
    seed: int | None = None
    out_dir: str | None = None
    # generic pair initial condition (paper test case)
    u1: float = 0.0
    v1: float = 0.0
    u2: float = math.pi / 3.0
    v2: float = math.pi / 4.0
    # cluster configuration
    n_vortices: int = 10
    center_u: float = 0.0
    center_v: float = 0.7
    spread_u: float = 0.12
    spread_v: float = 0.12
    # omega profile grid
    grid_limit: float = 3.0
    grid_step: float = 1e-3

    def __post_init__(self):
        if self.scenario not in SCENARIOS:
            raise ValueError(f"unknown scenario {self.scenario!r}; expected one of {SCENARIOS}")

    @property
    def params(self) -> CatenoidParams:
        return CatenoidParams(self.a)

    def settings(self, t_final: float, sample_dt: float, tol: float = 1e-12) -> IntegratorSettings:
        return IntegratorSettings(
            t_final=self.t_final if self.t_final is not None else t_final,
            sample_dt=self.sample_dt if self.sample_dt is not None else sample_dt,
            rel_tol=self.rel_tol if self.rel_tol is not None else tol,
            abs_tol=self.abs_tol if self.abs_tol is not None else tol,
        )


@dataclass(frozen=True)
class FitResult:
    """Ordinary least-squares line fit over a time window."""

    slope: float
    intercept: float
    rms_residual: float
    window: tuple[float, float]


@dataclass(frozen=True)
class ClusterDiagnostics:
    """Cluster-center series and the fitted azimuthal drift rate."""

    Uc_series: np.ndarray
    Vc_series: np.ndarray
    mean_chord_series: np.ndarray
    Omega_eff: float
    fit: FitResult = field(repr=False)


def _ols(t: np.ndarray, y: np.ndarray) -> FitResult:
    A = np.column_stack([t, np.ones_like(t)])
    (slope, intercept), *_ = np.linalg.lstsq(A, y, rcond=None)
    resid = y - (slope * t + intercept)
    return FitResult(
        float(slope),
        float(intercept),
        float(np.sqrt(np.mean(resid**2))),
        (float(t[0]), float(t[-1])),
    )


def _write_summary(out_dir: str | None, summary: dict) -> None:
    if out_dir is None:
        return
    path = Path(out_dir)
    path.mkdir(parents=True, exist_ok=True)
    with open(path / "summary.json", "w") as fh:
        json.dump(summary, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _write_trajectory(out_dir: str | None, tr: Trajectory) -> None:
    if out_dir is None:
        return
    path = Path(out_dir)
    path.mkdir(parents=True, exist_ok=True)
    write_trajectory_csv(tr, path / "trajectory.csv")


def _hermite_derivative_root(t0, t1, x0, x1, d0, d1) -> float:
    """Zero of the derivative of the cubic Hermite interpolant on [t0, t1].

    Requires d0 and d1 of opposite sign (a bracketed extremum).
    """
    h = t1 - t0

    def dH(s):
        return (
            (6.0 * s * s - 6.0 * s) * x0
            + h * (3.0 * s * s - 4.0 * s + 1.0) * d0
            + (-6.0 * s * s + 6.0 * s) * x1
            + h * (3.0 * s * s - 2.0 * s) * d1
        )

    return t0 + h * brentq(dH, 0.0, 1.0, xtol=1e-15)


def turning_times_from_series(times, x, xdot) -> np.ndarray:
    """Extremum times of a sampled signal, refined on the Hermite interpolant."""
    roots = []
    for k in range(len(times) - 1):
        if xdot[k] == 0.0:
            continue
        if xdot[k] * xdot[k + 1] < 0.0:
            roots.append(
                _hermite_derivative_root(
                    times[k], times[k + 1], x[k], x[k + 1], xdot[k], xdot[k + 1]
                )
            )
    return np.asarray(roots)


def measure_period(times, x, xdot) -> float:
    """Oscillation period as twice the mean spacing of consecutive extrema."""
    turns = turning_times_from_series(times, x, xdot)
    if len(turns) < 2:
        raise WindowEmpty("fewer than two extrema in the series; integrate longer")
    return 2.0 * float(np.mean(np.diff(turns)))


def _pair_series(tr: Trajectory):
    """dv, du, and their exact time derivatives along a two-vortex trajectory."""
    m = tr.n_samples
    dv = tr.v[:, 0] - tr.v[:, 1]
    du = tr.u[:, 0] - tr.u[:, 1]
    dvdot = np.empty(m)
    dudot_mean = np.empty(m)
    for k in range(m):
        pv = vector_field(tr.state_at(k))
        dvdot[k] = pv.dv[0] - pv.dv[1]
        dudot_mean[k] = 0.5 * (pv.du[0] + pv.du[1])
    return dv, du, dvdot, dudot_mean


# ----------------------------------------------------------------------
# scenario runners
# ----------------------------------------------------------------------


def run_rigid(cfg: ScenarioConfig):
    """Rigid co-rotation check against the exact antipodal solution."""
    t0 = time.perf_counter()
    orb = symmetric_orbit(cfg.v0, cfg.gamma, cfg.params)
    sys0 = orb.initial_system()
    tr = integrate(sys0, cfg.settings(t_final=50.0, sample_dt=0.05))
    max_dH, max_dJ = drift_report(tr)

    dv = tr.v[:, 0] - tr.v[:, 1]
    du = tr.u[:, 0] - tr.u[:, 1]
    rotation = tr.u[:, 0] - tr.u[0, 0] - orb.Omega * tr.times
    summary = {
        "scenario": "rigid",
        "a": cfg.a,
        "gamma": cfg.gamma,
        "V0": cfg.v0,
        "Omega": orb.Omega,
        "max_dv_deviation": float(np.abs(dv).max()),
        "max_du_deviation": float(np.abs(du - math.pi).max()),
        "max_rotation_deviation": float(np.abs(rotation).max()),
        "max_abs_dH": max_dH,
        "max_abs_dJ": max_dJ,
        "n_samples": tr.n_samples,
        "wall_time_s": time.perf_counter() - t0,
    }
    _write_trajectory(cfg.out_dir, tr)
    _write_summary(cfg.out_dir, summary)
    return tr, summary


def run_instability(cfg: ScenarioConfig):
    """Growth-rate fit of the antipodal instability seeded on the unstable eigenvector."""
    t0 = time.perf_counter()
    sd = stability(cfg.v0, cfg.gamma, cfg.params)
    if sd.lam <= 0.0:
        raise WindowEmpty(f"no unstable mode at V0={cfg.v0} (lambda={sd.lam})")
    sys0 = seed_unstable(cfg.v0, cfg.eta0, cfg.gamma, cfg.params)
    tr = integrate(sys0, cfg.settings(t_final=6.0 / sd.lam, sample_dt=1.0 / (50.0 * sd.lam)))
    max_dH, max_dJ = drift_report(tr)

    eta = tr.v[:, 0] - tr.v[:, 1]
    abs_eta = np.abs(eta)
    eta0 = abs(cfg.eta0)
    # one to three e-folds: past startup, before nonlinear saturation
    mask = (abs_eta >= math.e * eta0) & (abs_eta <= math.e**3 * eta0)
    if not mask.any():
        raise WindowEmpty("no samples between one and three e-folds of growth")
    fit = _ols(tr.times[mask], np.log(abs_eta[mask]))
    ratio = eta[mask] / (cfg.eta0 * np.exp(sd.lam * tr.times[mask]))

    summary = {
        "scenario": "instability",
        "a": cfg.a,
        "gamma": cfg.gamma,
        "V0": cfg.v0,
        "eta0": cfg.eta0,
        "lambda_theory": sd.lam,
        "lambda_fit": fit.slope,
        "lambda_rel_error": abs(fit.slope - sd.lam) / sd.lam,
        "fit_intercept": fit.intercept,
        "fit_rms_residual": fit.rms_residual,
        "fit_window": list(fit.window),
        "linear_ratio_min": float(ratio.min()),
        "linear_ratio_max": float(ratio.max()),
        "max_abs_dH": max_dH,
        "max_abs_dJ": max_dJ,
        "wall_time_s": time.perf_counter() - t0,
    }
    _write_trajectory(cfg.out_dir, tr)
    _write_summary(cfg.out_dir, summary)
    return tr, fit, summary


def _pair_initial_system(cfg: ScenarioConfig) -> VortexSystem:
    return VortexSystem(
        cfg.params,
        np.array([cfg.gamma, cfg.gamma]),
        np.array([cfg.v1, cfg.v2]),
        np.array([cfg.u1, cfg.u2]),
    )


def _chord_series(tr: Trajectory) -> np.ndarray:
    """Mean chord distance over all unordered pairs, per sample."""
    a = tr.params.a
    r = a * np.cosh(tr.v / a)
    x = r * np.cos(tr.u)
    y = r * np.sin(tr.u)
    pts = np.stack([x, y, tr.v], axis=-1)  # (samples, N, 3)
    iu, ju = np.triu_indices(tr.v.shape[1], k=1)
    diff = pts[:, iu, :] - pts[:, ju, :]
    return np.sqrt((diff**2).sum(axis=-1)).mean(axis=1)


def run_generic_pair(cfg: ScenarioConfig):
    """Generic equal-strength pair: bounded oscillation plus azimuthal drift."""
    t0 = time.perf_counter()
    sys0 = _pair_initial_system(cfg)
    tr = integrate(sys0, cfg.settings(t_final=40.0, sample_dt=0.02))
    max_dH, max_dJ = drift_report(tr)

    chord = _chord_series(tr)
    U = 0.5 * (tr.u[:, 0] + tr.u[:, 1])
    u_fit = _ols(tr.times, U)
    summary = {
        "scenario": "pair",
        "a": cfg.a,
        "gamma": cfg.gamma,
        "initial_condition": {"u1": cfg.u1, "v1": cfg.v1, "u2": cfg.u2, "v2": cfg.v2},
        "chord_min": float(chord.min()),
        "chord_max": float(chord.max()),
        "chord_initial": float(chord[0]),
        "U_drift_slope": u_fit.slope,
        "U_excursion": float(U.max() - U.min()),
        "max_abs_dH": max_dH,
        "max_abs_dJ": max_dJ,
        "wall_time_s": time.perf_counter() - t0,
    }
    _write_trajectory(cfg.out_dir, tr)
    _write_summary(cfg.out_dir, summary)
    return tr, summary


def run_reduced_compare(cfg: ScenarioConfig):
    """Quadrature reduction vs the full dynamics on the generic-pair state.

    Compares the reduced d(dv)/dt and the reconstructed mean azimuth
    U(t) against the full integration, checks the energy identity
    cos(du) = C(dv), and reports the turning points and the oscillation
    period (measured and from the quadrature).
    """
    t0 = time.perf_counter()
    sys0 = _pair_initial_system(cfg)
    rc = ReducedConstants.from_system(sys0)
    tr = integrate(sys0, cfg.settings(t_final=40.0, sample_dt=0.02))
    max_dH, max_dJ = drift_report(tr)

    dv, du, dvdot, _ = _pair_series(tr)
    eps = np.where(np.sin(du) < 0.0, -1, 1)
    rate_reduced = np.array(
        [reduced_dv_rate(dv[k], int(eps[k]), rc) for k in range(tr.n_samples)]
    )
    cos_reduced = np.array([cos_relative_angle(dv[k], rc) for k in range(tr.n_samples)])
    U_full = 0.5 * (tr.u[:, 0] + tr.u[:, 1])
    U_rec = reconstruct_U(tr.times, dv, eps, rc, U0=float(U_full[0]))
    du_rec = np.array([relative_angle(dv[k], int(eps[k]), rc) for k in range(tr.n_samples)])
    V_rec = np.array([solve_V(dv[k], rc) for k in range(tr.n_samples)])

    lo, hi = admissible_window(rc, to_collective(sys0).dv)
    period_quad = 2.0 * abs(quadrature_time(lo, hi, +1, rc))
    try:
        period_measured = measure_period(tr.times, dv, dvdot)
    except WindowEmpty:
        period_measured = float("nan")

    summary = {
        "scenario": "reduce",
        "a": cfg.a,
        "gamma": cfg.gamma,
        "E": rc.E,
        "J0": rc.J0,
        "turning_points": [lo, hi],
        "period_quadrature": period_quad,
        "period_measured": period_measured,
        "sup_rate_mismatch": float(np.abs(rate_reduced - dvdot).max()),
        "sup_U_mismatch": float(np.abs(U_rec - U_full).max()),
        "sup_energy_identity": float(np.abs(cos_reduced - np.cos(du)).max()),
        "max_abs_dH": max_dH,
        "max_abs_dJ": max_dJ,
        "wall_time_s": time.perf_counter() - t0,
    }
    if cfg.out_dir is not None:
        path = Path(cfg.out_dir)
        path.mkdir(parents=True, exist_ok=True)
        write_trajectory_csv(tr, path / "trajectory.csv")
        write_reduced_csv(tr.times, dv, du_rec, V_rec, U_rec, eps, path / "reduced.csv")
    _write_summary(cfg.out_dir, summary)
    return tr, summary


def draw_cluster(cfg: ScenarioConfig) -> VortexSystem:
    """Uniform draw of the cluster on the configured rectangle, with redraws.

    A draw containing a near-collision (pair factor below DRAW_FLOOR) is
    rejected and redrawn, up to 100 times.
    """
    if cfg.seed is None:
        raise ValueError("cluster scenario requires a seed")
    rng = np.random.default_rng(cfg.seed)
    for _ in range(100):
        u = cfg.center_u + rng.uniform(-cfg.spread_u, cfg.spread_u, cfg.n_vortices)
        v = cfg.center_v + rng.uniform(-cfg.spread_v, cfg.spread_v, cfg.n_vortices)
        if kernels.min_pair_factor(v, u, cfg.a) >= DRAW_FLOOR:
            return VortexSystem(cfg.params, np.full(cfg.n_vortices, cfg.gamma), v, u)
    raise CollisionError("100 cluster draws in a row contained a near-collision")


def run_cluster(cfg: ScenarioConfig):
    """Localized same-sign cluster: coherent azimuthal drift while staying compact."""
    t0 = time.perf_counter()
    if cfg.seed is None:
        cfg = replace(cfg, seed=DEFAULT_CLUSTER_SEED)
    sys0 = draw_cluster(cfg)
    tr = integrate(sys0, cfg.settings(t_final=60.0, sample_dt=0.05, tol=CLUSTER_TOL))
    max_dH, max_dJ = drift_report(tr)

    Uc = tr.u.mean(axis=1)
    Vc = tr.v.mean(axis=1)
    chord = _chord_series(tr)
    fit = _ols(tr.times, Uc)
    diag = ClusterDiagnostics(Uc, Vc, chord, fit.slope, fit)

    summary = {
        "scenario": "cluster",
        "a": cfg.a,
        "gamma": cfg.gamma,
        "n_vortices": cfg.n_vortices,
        "seed": cfg.seed,
        "center": [cfg.center_u, cfg.center_v],
        "spread": [cfg.spread_u, cfg.spread_v],
        "Omega_eff": fit.slope,
        "Uc_fit_rms_residual": fit.rms_residual,
        "Uc_excursion": float(Uc.max() - Uc.min()),
        "max_Vc_drift": float(np.abs(Vc - Vc[0]).max()),
        "mean_chord_initial": float(chord[0]),
        "mean_chord_max": float(chord.max()),
        "max_abs_dH": max_dH,
        "max_abs_dJ": max_dJ,
        "wall_time_s": time.perf_counter() - t0,
    }
    if cfg.out_dir is not None:
        path = Path(cfg.out_dir)
        path.mkdir(parents=True, exist_ok=True)
        write_trajectory_csv(tr, path / "trajectory.csv")
        series = np.column_stack([tr.times, Uc, Vc, chord])
        np.savetxt(
            path / "cluster_series.csv",
            series,
            fmt="%.17g",
            delimiter=",",
            header="t,Uc,Vc,mean_chord",
            comments="",
        )
    _write_summary(cfg.out_dir, summary)
    return tr, diag, summary


def run_omega_profile(cfg: ScenarioConfig):
    """Tabulate Omega(V), K(V), K'(V) on a grid and locate the rotation maximum."""
    t0 = time.perf_counter()
    p = cfg.params
    n = int(round(cfg.grid_limit / cfg.grid_step))
    V = np.arange(-n, n + 1) * cfg.grid_step
    omega = np.array([omega_symmetric(float(x), cfg.gamma, p) for x in V])
    omega_geom = np.array([omega_from_curvature(float(x), cfg.gamma, p) for x in V])
    K = gaussian_curvature(V, p)
    Kp = curvature_gradient(V, p)

    k_max = int(np.argmax(omega))
    grid_argmax = float(V[k_max])
    vstar = v_star(p)
    scale = np.maximum(np.abs(omega), 1e-300)
    identity_mismatch = float(np.abs(omega - omega_geom).max()), float(
        (np.abs(omega - omega_geom) / scale).max()
    )

    summary = {
        "scenario": "profile",
        "a": cfg.a,
        "gamma": cfg.gamma,
        "grid_limit": cfg.grid_limit,
        "grid_step": cfg.grid_step,
        "argmax_V": grid_argmax,
        "v_star": vstar,
        "argmax_deviation": abs(grid_argmax - vstar),
        "omega_at_argmax": float(omega[k_max]),
        "identity_mismatch_abs": identity_mismatch[0],
        "identity_mismatch_rel": identity_mismatch[1],
        "wall_time_s": time.perf_counter() - t0,
    }
    table = np.column_stack([V, omega, K, Kp])
    if cfg.out_dir is not None:
        path = Path(cfg.out_dir)
        path.mkdir(parents=True, exist_ok=True)
        np.savetxt(
            path / "profile.csv",
            table,
            fmt="%.17g",
            delimiter=",",
            header="V,Omega,K,Kprime",
            comments="",
        )
    _write_summary(cfg.out_dir, summary)
    return table, summary


RUNNERS = {
    "rigid": run_rigid,
    "instability": run_instability,
    "pair": run_generic_pair,
    "reduce": run_reduced_compare,
    "cluster": run_cluster,
    "profile": run_omega_profile,
}
