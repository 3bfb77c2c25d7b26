"""Backend selection for the hot evaluation kernels.

The compiled Cython extension is preferred; the pure-NumPy module is the
fallback when the extension is missing (or when ``CATVORTEX_PURE=1`` is
set, which forces the fallback for debugging and benchmarking).
``BACKEND`` reports which one is active.
"""

import os

if os.environ.get("CATVORTEX_PURE") == "1":
    from . import _kernels_py as _impl

    BACKEND = "python"
else:
    try:
        from . import _kernels_cy as _impl  # type: ignore[attr-defined]

        BACKEND = "cython"
    except ImportError:
        from . import _kernels_py as _impl

        BACKEND = "python"

rhs = _impl.rhs
hamiltonian = _impl.hamiltonian
momentum = _impl.momentum
min_pair_factor = _impl.min_pair_factor
