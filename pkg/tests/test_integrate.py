"""Adaptive integration: exact-solution tracking, conservation, reversibility.

The rigid co-rotating state is the analytic oracle; time reversal uses
the fact that negating every circulation negates the vector field, so a
forward run of the reversed system undoes the original one.
"""

import csv
import math

import numpy as np
import pytest

import catvortex as cv

P = cv.CatenoidParams(1.0)


def rigid_system(V0=0.5, gamma=1.0):
    return cv.symmetric_orbit(V0, gamma, P).initial_system()


class TestSettings:
    def test_validation(self):
        with pytest.raises(ValueError):
            cv.IntegratorSettings(t_final=1.0, sample_dt=2.0)
        with pytest.raises(ValueError):
            cv.IntegratorSettings(t_final=1.0, sample_dt=0.1, rel_tol=0.0)
        with pytest.raises(ValueError):
            cv.IntegratorSettings(t_final=1.0, sample_dt=-0.1)

    def test_defaults(self):
        cfg = cv.IntegratorSettings(t_final=1.0, sample_dt=0.1)
        assert cfg.rel_tol == 1e-12 and cfg.abs_tol == 1e-12


class TestRigidOrbit:
    def test_tracks_exact_solution(self):
        orb = cv.symmetric_orbit(0.5, 1.0, P)
        tr = cv.integrate(orb.initial_system(), cv.IntegratorSettings(t_final=50.0, sample_dt=0.05))
        dv = tr.v[:, 0] - tr.v[:, 1]
        du = tr.u[:, 0] - tr.u[:, 1]
        assert np.abs(dv).max() < 1e-10
        assert np.abs(du - math.pi).max() < 1e-10
        assert np.abs(tr.u[:, 0] - tr.u[0, 0] - orb.Omega * tr.times).max() < 1e-8

    def test_conservation_at_default_tolerances(self):
        tr = cv.integrate(rigid_system(), cv.IntegratorSettings(t_final=50.0, sample_dt=0.05))
        max_dH, max_dJ = cv.drift_report(tr)
        assert max_dH <= 1e-12 and max_dJ <= 1e-12

    def test_samples_on_cadence(self):
        tr = cv.integrate(rigid_system(), cv.IntegratorSettings(t_final=1.0, sample_dt=0.25))
        np.testing.assert_allclose(tr.times, [0.0, 0.25, 0.5, 0.75, 1.0], atol=1e-15)


class TestReversibility:
    def test_round_trip(self, pair_system):
        cfg = cv.IntegratorSettings(t_final=20.0, sample_dt=20.0)
        fwd = cv.integrate(pair_system, cfg)
        end = fwd.state_at(-1)
        back = cv.integrate(end.reversed(), cfg)
        assert np.abs(back.v[-1] - pair_system.v).max() < 1e-8
        assert np.abs(back.u[-1] - pair_system.u).max() < 1e-8


class TestDriftReport:
    def test_single_sample_is_zero(self, pair_system):
        tr = cv.Trajectory(
            P,
            pair_system.circulations,
            np.array([0.0]),
            pair_system.v[None, :],
            pair_system.u[None, :],
            np.array([cv.hamiltonian(pair_system)]),
            np.array([cv.momentum(pair_system)]),
        )
        assert cv.drift_report(tr) == (0.0, 0.0)

    def test_loose_tolerance_drifts_more(self, pair_system):
        tight = cv.integrate(pair_system, cv.IntegratorSettings(t_final=10.0, sample_dt=0.1))
        loose = cv.integrate(
            pair_system,
            cv.IntegratorSettings(t_final=10.0, sample_dt=0.1, rel_tol=1e-4, abs_tol=1e-4),
        )
        assert max(cv.drift_report(loose)) > max(cv.drift_report(tight))

    def test_tightening_tolerance_never_hurts(self, pair_system):
        # halve tolerances across two decades; max drift must not increase
        drifts = []
        tol = 1e-5
        while tol >= 1e-7:
            tr = cv.integrate(
                pair_system,
                cv.IntegratorSettings(t_final=10.0, sample_dt=0.5, rel_tol=tol, abs_tol=tol),
            )
            drifts.append(max(cv.drift_report(tr)))
            tol /= 2.0
        for a, b in zip(drifts, drifts[1:]):
            assert b <= a + 1e-15


class TestCollisionAbort:
    def test_near_collision_halts_with_diagnostic(self):
        sys0 = cv.VortexSystem(P, [1.0, 1.0], [0.0, 1e-6], [0.0, 0.0])
        with pytest.raises(cv.CollisionError, match="near-collision at t="):
            cv.integrate(sys0, cv.IntegratorSettings(t_final=1.0, sample_dt=0.1))


class TestCsvFormat:
    def test_round_trip_and_header(self, pair_trajectory_t20, tmp_path):
        path = tmp_path / "traj.csv"
        cv.write_trajectory_csv(pair_trajectory_t20, path)
        with open(path) as fh:
            rows = list(csv.reader(fh))
        assert rows[0] == ["t", "v_1", "v_2", "u_1", "u_2", "H", "J", "dH", "dJ"]
        data = np.array(rows[1:], dtype=float)
        assert data.shape == (pair_trajectory_t20.n_samples, 9)
        # 17 significant digits round-trips float64 exactly
        np.testing.assert_array_equal(data[:, 0], pair_trajectory_t20.times)
        np.testing.assert_array_equal(data[:, 1], pair_trajectory_t20.v[:, 0])
        np.testing.assert_array_equal(data[:, 5], pair_trajectory_t20.H_series)
        np.testing.assert_array_equal(data[:, 8], pair_trajectory_t20.dJ_series)


class TestTrajectoryValidation:
    def test_requires_increasing_times(self, pair_system):
        with pytest.raises(ValueError):
            cv.Trajectory(
                P,
                pair_system.circulations,
                np.array([0.0, 0.0]),
                np.zeros((2, 2)),
                np.zeros((2, 2)) + [0.0, 1.0],
                np.zeros(2),
                np.zeros(2),
            )
