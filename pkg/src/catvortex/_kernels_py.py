"""Pure-NumPy implementation of the hot evaluation kernels.

Import-time fallback twin of ``_kernels_cy``.  Both backends expose the
same four functions on flat float64 arrays; summation order is fixed
within each backend so repeated evaluation is bit-reproducible.
"""

import math

import numpy as np

FOUR_PI = 4.0 * math.pi


def rhs(v, u, gamma, a, dv_out, du_out):
    """Phase-space velocity of the N-vortex system, written into the out arrays.

    dv_out[i] = 1/(4 pi a h_i^2) * sum_j gamma_j sin(u_i - u_j) / F_ij
    du_out[i] = 1/(4 pi a^2 h_i^2) * (-sum_j gamma_j sinh((v_i - v_j)/a) / F_ij
                                      + gamma_i tanh(v_i/a))

    with F_ij = cosh((v_i - v_j)/a) - cos(u_i - u_j).  Returns the
    minimum off-diagonal F (inf for N = 1) so the caller can enforce the
    collision floor with no extra pass.
    """
    n = v.shape[0]
    h2 = np.cosh(v / a) ** 2
    if n == 1:
        dv_out[0] = 0.0
        du_out[0] = gamma[0] * math.tanh(v[0] / a) / (FOUR_PI * a * a * h2[0])
        return math.inf
    dvm = (v[:, None] - v[None, :]) / a
    dum = u[:, None] - u[None, :]
    F = np.cosh(dvm) - np.cos(dum)
    np.fill_diagonal(F, np.inf)
    min_f = float(F.min())
    dv_out[:] = (np.sin(dum) / F) @ gamma / (FOUR_PI * a * h2)
    du_out[:] = (-(np.sinh(dvm) / F) @ gamma + gamma * np.tanh(v / a)) / (
        FOUR_PI * a * a * h2
    )
    return min_f


def hamiltonian(v, u, gamma, a):
    """Interaction energy: pairwise log kernel plus curvature self-term.

    H = (1/4 pi) [ sum_{i<j} g_i g_j log F_ij - sum_i g_i^2 log cosh(v_i/a) ]
    """
    n = v.shape[0]
    self_term = float(np.dot(gamma * gamma, np.log(np.cosh(v / a))))
    if n == 1:
        return -self_term / FOUR_PI
    iu, ju = np.triu_indices(n, k=1)
    F = np.cosh((v[iu] - v[ju]) / a) - np.cos(u[iu] - u[ju])
    pair_term = float(np.dot(gamma[iu] * gamma[ju], np.log(F)))
    return (pair_term - self_term) / FOUR_PI


def momentum(v, gamma, a):
    """Rotational momentum J = sum_i gamma_i [ (a/2) v_i + (a^2/4) sinh(2 v_i/a) ]."""
    return float(np.dot(gamma, 0.5 * a * v + 0.25 * a * a * np.sinh(2.0 * v / a)))


def min_pair_factor(v, u, a):
    """Smallest pairwise interaction factor F; inf when fewer than two vortices."""
    n = v.shape[0]
    if n < 2:
        return math.inf
    iu, ju = np.triu_indices(n, k=1)
    F = np.cosh((v[iu] - v[ju]) / a) - np.cos(u[iu] - u[ju])
    return float(F.min())
