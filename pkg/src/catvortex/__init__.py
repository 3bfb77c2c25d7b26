"""Hamiltonian point-vortex dynamics on a catenoid.

Library layout:

- :mod:`catvortex.geometry`   -- the surface and its closed-form functions
- :mod:`catvortex.dynamics`   -- N-vortex Hamiltonian, momentum, vector field
- :mod:`catvortex.integrate`  -- adaptive integration + conservation diagnostics
- :mod:`catvortex.reduction`  -- two-vortex quadrature reduction and drift
- :mod:`catvortex.exact`      -- rigid co-rotating solution and its stability
- :mod:`catvortex.scenarios`  -- reproducible experiment drivers
- :mod:`catvortex.cli`        -- command-line front end

The hot kernels run on a compiled Cython core when available and fall
back to pure NumPy otherwise; ``catvortex.KERNEL_BACKEND`` names the
active one (force the fallback with ``CATVORTEX_PURE=1``).
"""

from .errors import (
    CatVortexError,
    CollisionError,
    InadmissibleError,
    NoRootError,
    PerturbationTooLarge,
    StepFailure,
    UnsupportedError,
    WindowEmpty,
)
from .geometry import (
    CatenoidParams,
    EmbeddedPoint,
    SurfacePoint,
    chord_distance,
    conformal_factor,
    curvature_gradient,
    embed,
    gaussian_curvature,
    momentum_density,
)
from .dynamics import (
    Invariants,
    PhaseVelocity,
    VortexSystem,
    green_function,
    hamiltonian,
    invariants,
    momentum,
    pair_kernel,
    poisson_bracket,
    vector_field,
)
from .integrate import IntegratorSettings, Trajectory, drift_report, integrate, write_trajectory_csv
from .reduction import (
    CollectiveState,
    ReducedConstants,
    ReducedTrajectory,
    admissible_window,
    cos_relative_angle,
    drift_rate,
    energy_factor,
    from_collective,
    integrate_reduced,
    quadrature_time,
    reconstruct_U,
    reduced_dv_rate,
    relative_angle,
    solve_V,
    to_collective,
)
from .exact import (
    StabilityData,
    SymmetricOrbit,
    omega_from_curvature,
    omega_symmetric,
    seed_unstable,
    stability,
    symmetric_orbit,
    v_star,
)
from .kernels import BACKEND as KERNEL_BACKEND

__version__ = "0.1.0"
