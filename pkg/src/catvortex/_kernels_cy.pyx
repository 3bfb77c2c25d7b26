# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled evaluation kernels; signature-compatible twin of ``_kernels_py``."""

from libc.math cimport cos, cosh, log, sin, sinh, tanh, INFINITY

cdef double FOUR_PI = 12.566370614359172


def rhs(const double[::1] v, const double[::1] u, const double[::1] gamma, double a,
        double[::1] dv_out, double[::1] du_out):
    """Phase-space velocity into the out arrays; returns min off-diagonal F.

    The pair terms sin(u_i - u_j)/F and sinh((v_i - v_j)/a)/F are
    antisymmetric, so each pair is evaluated once; the out arrays double
    as accumulators before the per-vortex prefactors are applied.
    """
    cdef Py_ssize_t n = v.shape[0]
    cdef Py_ssize_t i, j
    cdef double F, s, sh, h2, min_f = INFINITY
    cdef double inv_a = 1.0 / a
    for i in range(n):
        dv_out[i] = 0.0
        du_out[i] = 0.0
    for i in range(n):
        for j in range(i + 1, n):
            F = cosh((v[i] - v[j]) * inv_a) - cos(u[i] - u[j])
            if F < min_f:
                min_f = F
            s = sin(u[i] - u[j]) / F
            sh = sinh((v[i] - v[j]) * inv_a) / F
            dv_out[i] += gamma[j] * s
            dv_out[j] -= gamma[i] * s
            du_out[i] += gamma[j] * sh
            du_out[j] -= gamma[i] * sh
    for i in range(n):
        h2 = cosh(v[i] * inv_a)
        h2 *= h2
        dv_out[i] /= FOUR_PI * a * h2
        du_out[i] = (-du_out[i] + gamma[i] * tanh(v[i] * inv_a)) / (FOUR_PI * a * a * h2)
    return min_f


def hamiltonian(const double[::1] v, const double[::1] u, const double[::1] gamma, double a):
    """H = (1/4 pi) [ sum_{i<j} g_i g_j log F_ij - sum_i g_i^2 log cosh(v_i/a) ]."""
    cdef Py_ssize_t n = v.shape[0]
    cdef Py_ssize_t i, j
    cdef double pair_term = 0.0, self_term = 0.0
    cdef double inv_a = 1.0 / a
    for i in range(n):
        self_term += gamma[i] * gamma[i] * log(cosh(v[i] * inv_a))
        for j in range(i + 1, n):
            pair_term += gamma[i] * gamma[j] * log(
                cosh((v[i] - v[j]) * inv_a) - cos(u[i] - u[j])
            )
    return (pair_term - self_term) / FOUR_PI


def momentum(const double[::1] v, const double[::1] gamma, double a):
    """J = sum_i gamma_i [ (a/2) v_i + (a^2/4) sinh(2 v_i/a) ]."""
    cdef Py_ssize_t n = v.shape[0]
    cdef Py_ssize_t i
    cdef double J = 0.0
    for i in range(n):
        J += gamma[i] * (0.5 * a * v[i] + 0.25 * a * a * sinh(2.0 * v[i] / a))
    return J


def min_pair_factor(const double[::1] v, const double[::1] u, double a):
    """Smallest pairwise F; inf when fewer than two vortices."""
    cdef Py_ssize_t n = v.shape[0]
    cdef Py_ssize_t i, j
    cdef double F, min_f = INFINITY
    cdef double inv_a = 1.0 / a
    for i in range(n):
        for j in range(i + 1, n):
            F = cosh((v[i] - v[j]) * inv_a) - cos(u[i] - u[j])
            if F < min_f:
                min_f = F
    return min_f
