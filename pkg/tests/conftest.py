import math

import numpy as np
import pytest

import catvortex as cv

#: Initial condition of the generic equal-strength pair test case:
#: vortex 1 at (u, v) = (0, 0), vortex 2 at (pi/3, pi/4), Gamma = 1, a = 1.
PAIR_U = (0.0, math.pi / 3.0)
PAIR_V = (0.0, math.pi / 4.0)


@pytest.fixture(scope="session")
def params():
    return cv.CatenoidParams(1.0)


@pytest.fixture(scope="session")
def pair_system(params):
    return cv.VortexSystem(params, [1.0, 1.0], list(PAIR_V), list(PAIR_U))


@pytest.fixture(scope="session")
def pair_constants(pair_system):
    return cv.ReducedConstants.from_system(pair_system)


@pytest.fixture(scope="session")
def pair_trajectory_t40(pair_system):
    cfg = cv.IntegratorSettings(t_final=40.0, sample_dt=0.02)
    return cv.integrate(pair_system, cfg)


@pytest.fixture(scope="session")
def pair_trajectory_t20(pair_system):
    cfg = cv.IntegratorSettings(t_final=20.0, sample_dt=0.02)
    return cv.integrate(pair_system, cfg)


def random_two_vortex_systems(rng, count, params, min_factor=0.05):
    """Random valid two-vortex states with a comfortable pair separation."""
    out = []
    while len(out) < count:
        v = rng.uniform(-1.5, 1.5, 2)
        u = rng.uniform(-math.pi, math.pi, 2)
        gamma = rng.uniform(0.3, 2.0, 2) * rng.choice([-1.0, 1.0], 2)
        if math.cosh(v[0] - v[1]) - math.cos(u[0] - u[1]) < min_factor:
            continue
        out.append(cv.VortexSystem(params, gamma, v, u))
    return out


def random_systems(rng, count, n, params, min_factor=0.05):
    """Random valid N-vortex states."""
    out = []
    while len(out) < count:
        v = rng.uniform(-1.5, 1.5, n)
        u = rng.uniform(-math.pi, math.pi, n)
        gamma = rng.uniform(0.3, 2.0, n) * rng.choice([-1.0, 1.0], n)
        sys_try = cv.VortexSystem(params, gamma, v, u)
        from catvortex import kernels

        if kernels.min_pair_factor(sys_try.v, sys_try.u, params.a) < min_factor:
            continue
        out.append(sys_try)
    return out
