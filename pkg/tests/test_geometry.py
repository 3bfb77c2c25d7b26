"""Closed-form geometry against arbitrary-precision and finite-difference oracles.

Frozen expected values were computed with mpmath at 40 digits, e.g.
cosh(1) = 1.5430806348152437785, -1/cosh(1)^4 = -0.17637844761413466908,
4 sinh(1)/cosh(1)^5 = 0.53731517975789994641,
1/2 + sinh(2)/4 = 1.4067151019617546919.
"""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import catvortex as cv

P = cv.CatenoidParams(1.0)


class TestCatenoidParams:
    def test_positive_radius_required(self):
        with pytest.raises(ValueError):
            cv.CatenoidParams(0.0)
        with pytest.raises(ValueError):
            cv.CatenoidParams(-1.0)
        with pytest.raises(ValueError):
            cv.CatenoidParams(math.nan)


class TestConformalFactor:
    def test_throat(self):
        assert cv.conformal_factor(0.0, P) == 1.0

    def test_frozen_value(self):
        assert cv.conformal_factor(1.0, P) == pytest.approx(1.5430806348152437785, rel=1e-15)

    def test_even(self):
        assert cv.conformal_factor(-1.0, P) == cv.conformal_factor(1.0, P)

    @given(st.floats(-5.0, 5.0))
    @settings(max_examples=200, deadline=None)
    def test_at_least_one(self, v):
        h = cv.conformal_factor(v, P)
        assert h >= 1.0
        if v == 0.0:
            assert h == 1.0
        elif abs(v) >= 1e-7:  # below this cosh(v/a) underflows to 1.0
            assert h > 1.0


class TestGaussianCurvature:
    def test_throat(self):
        assert cv.gaussian_curvature(0.0, P) == -1.0

    def test_frozen_value(self):
        assert cv.gaussian_curvature(1.0, P) == pytest.approx(-0.17637844761413466908, rel=1e-15)

    def test_asymptotically_flat(self):
        K = cv.gaussian_curvature(40.0, P)
        assert -1e-30 < K < 0.0

    def test_composition_identity(self):
        # K(V) = -1 / (a^2 h(V)^4) exactly as composed functions
        V = np.linspace(-5.0, 5.0, 1001)
        K = cv.gaussian_curvature(V, P)
        K_composed = -1.0 / (P.a**2 * cv.conformal_factor(V, P) ** 4)
        assert np.max(np.abs(K - K_composed) / np.abs(K)) < 1e-14

    def test_most_curved_at_throat(self):
        V = np.linspace(-3.0, 3.0, 601)
        K = cv.gaussian_curvature(V, P)
        assert np.argmin(K) == 300  # V = 0


class TestCurvatureGradient:
    def test_zero_at_throat(self):
        assert cv.curvature_gradient(0.0, P) == 0.0

    def test_frozen_value(self):
        assert cv.curvature_gradient(1.0, P) == pytest.approx(0.53731517975789994641, rel=1e-15)

    def test_odd(self):
        V = np.linspace(0.1, 4.0, 40)
        np.testing.assert_allclose(
            cv.curvature_gradient(-V, P), -cv.curvature_gradient(V, P), rtol=1e-15
        )

    def test_matches_finite_difference(self):
        # second-order truncation ~ eps^2 K''' plus a ~1e-16 |K|/eps round-off floor
        eps = 1e-6
        for V in np.linspace(-4.0, 4.0, 81):
            fd = (cv.gaussian_curvature(V + eps, P) - cv.gaussian_curvature(V - eps, P)) / (
                2.0 * eps
            )
            assert cv.curvature_gradient(float(V), P) == pytest.approx(fd, abs=5e-10)


class TestMomentumDensity:
    def test_odd_origin(self):
        assert cv.momentum_density(0.0, P) == 0.0

    def test_frozen_value(self):
        assert cv.momentum_density(1.0, P) == pytest.approx(1.4067151019617546919, rel=1e-15)

    def test_derivative_is_a_h_squared(self):
        eps = 1e-6
        for v in np.linspace(-3.0, 3.0, 61):
            fd = (cv.momentum_density(v + eps, P) - cv.momentum_density(v - eps, P)) / (2.0 * eps)
            assert fd == pytest.approx(P.a * cv.conformal_factor(float(v), P) ** 2, rel=1e-9)

    @given(st.floats(0.01, 4.0), st.floats(0.01, 4.0))
    @settings(max_examples=100, deadline=None)
    def test_strictly_increasing(self, v, dv):
        assert cv.momentum_density(v + dv, P) > cv.momentum_density(v, P)


class TestEmbed:
    def test_throat_points(self):
        pt = cv.embed(cv.SurfacePoint(0.0, 0.0), P)
        assert (pt.x, pt.y, pt.z) == (1.0, 0.0, 0.0)
        pt = cv.embed(cv.SurfacePoint(0.0, math.pi), P)
        assert pt.x == pytest.approx(-1.0, rel=1e-15)
        assert abs(pt.y) < 1e-15

    def test_quarter_turn(self):
        pt = cv.embed(cv.SurfacePoint(1.0, math.pi / 2.0), P)
        assert abs(pt.x) < 1e-15
        assert pt.y == pytest.approx(1.5430806348152437785, rel=1e-15)
        assert pt.z == 1.0

    @given(st.floats(-3.0, 3.0), st.floats(-50.0, 50.0))
    @settings(max_examples=200, deadline=None)
    def test_embedding_invariant(self, v, u):
        pt = cv.embed(cv.SurfacePoint(v, u), P)
        assert pt.x**2 + pt.y**2 == pytest.approx(P.a**2 * math.cosh(v / P.a) ** 2, rel=1e-12)
        assert pt.z == v


class TestChordDistance:
    def test_throat_diameter(self):
        d = cv.chord_distance(cv.SurfacePoint(0.0, 0.0), cv.SurfacePoint(0.0, math.pi), P)
        assert d == pytest.approx(2.0, rel=1e-15)

    def test_coincident(self):
        pt = cv.SurfacePoint(0.7, 1.3)
        assert cv.chord_distance(pt, pt, P) == 0.0

    def test_symmetric(self):
        p1 = cv.SurfacePoint(0.0, 0.0)
        p2 = cv.SurfacePoint(math.pi / 4.0, math.pi / 3.0)
        assert cv.chord_distance(p1, p2, P) == cv.chord_distance(p2, p1, P)

    def test_matches_ambient_norm(self):
        # cross-check against the embed + Euclidean norm oracle
        rng = np.random.default_rng(42)
        for _ in range(1000):
            v1, v2 = rng.uniform(-3.0, 3.0, 2)
            u1, u2 = rng.uniform(-8.0, 8.0, 2)
            p1 = cv.SurfacePoint(v1, u1)
            p2 = cv.SurfacePoint(v2, u2)
            ambient = np.linalg.norm(cv.embed(p1, P).as_array() - cv.embed(p2, P).as_array())
            assert abs(cv.chord_distance(p1, p2, P) - ambient) < 1e-12
