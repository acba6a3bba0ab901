# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled Monte Carlo kernels.

Each kernel consumes pre-drawn uniforms positionally, so the numpy
fallback in _fallback.py produces bit-identical results when fed the
same arrays. Replicate r's j-th draw always comes from row r, column j.
"""

import numpy as np
cimport numpy as cnp


def crw_terminal(double p,
                 double[::1] u_init,
                 double[:, ::1] u_steps,
                 double[::1] out):
    """Terminal value of unit-step correlated walks.

    u_init[r] < 0.5 picks an initial +1 step; u_steps[r, j] < p repeats
    the previous step's sign. out[r] receives the terminal sum of signs.
    """
    cdef Py_ssize_t R = u_init.shape[0]
    cdef Py_ssize_t m = u_steps.shape[1]
    cdef Py_ssize_t r, j
    cdef double total
    cdef int s
    with nogil:
        for r in range(R):
            s = 1 if u_init[r] < 0.5 else -1
            total = s
            for j in range(m):
                if u_steps[r, j] >= p:
                    s = -s
                total += s
            out[r] = total


def semiparam_terminal(double p,
                       double[::1] u_init,
                       double[:, ::1] u_steps,
                       double[:, ::1] u_mag,
                       double[::1] mag_pool,
                       double[::1] out):
    """Terminal value of sign-times-magnitude walks.

    Magnitudes are resampled from mag_pool via u_mag; the sign chain
    consumes u_init/u_steps exactly as crw_terminal does.
    """
    cdef Py_ssize_t R = u_init.shape[0]
    cdef Py_ssize_t m = u_steps.shape[1]
    cdef Py_ssize_t K = mag_pool.shape[0]
    cdef Py_ssize_t r, j, k
    cdef double total
    cdef int s
    with nogil:
        for r in range(R):
            s = 1 if u_init[r] < 0.5 else -1
            k = <Py_ssize_t>(u_mag[r, 0] * K)
            if k >= K:
                k = K - 1
            total = s * mag_pool[k]
            for j in range(m):
                if u_steps[r, j] >= p:
                    s = -s
                k = <Py_ssize_t>(u_mag[r, j + 1] * K)
                if k >= K:
                    k = K - 1
                total += s * mag_pool[k]
            out[r] = total


def renewal_block(double p,
                  double horizon,
                  double[::1] mag_cat,
                  double[::1] tau_cat,
                  cnp.int64_t[::1] offsets,
                  double[:, ::1] u_sign,
                  double[:, ::1] u_pick,
                  double[::1] t_elapsed,
                  double[::1] cum,
                  cnp.int8_t[::1] s_prev,
                  cnp.uint8_t[::1] done,
                  cnp.int64_t[::1] n_events):
    """Advance a block of renewal replicates by up to u_sign.shape[1] events.

    Buckets are concatenated (mag_cat/tau_cat) with offsets[b]..offsets[b+1]
    holding bucket b, where b = 2*(s_now < 0) + (s_prev < 0). A proposed
    event whose inter-event time would push past the horizon finishes the
    replicate without being applied. Replicates still unfinished after the
    last column stay not-done; the caller re-invokes with fresh uniforms.
    """
    cdef Py_ssize_t R = u_sign.shape[0]
    cdef Py_ssize_t W = u_sign.shape[1]
    cdef Py_ssize_t r, j, b, lo, length, k
    cdef double t, c, tau
    cdef int s, s_next
    with nogil:
        for r in range(R):
            if done[r]:
                continue
            t = t_elapsed[r]
            c = cum[r]
            s = s_prev[r]
            for j in range(W):
                s_next = s if u_sign[r, j] < p else -s
                b = (2 if s_next < 0 else 0) + (1 if s < 0 else 0)
                lo = offsets[b]
                length = offsets[b + 1] - lo
                k = lo + <Py_ssize_t>(u_pick[r, j] * length)
                if k >= lo + length:
                    k = lo + length - 1
                tau = tau_cat[k]
                if t + tau > horizon:
                    done[r] = 1
                    break
                t = t + tau
                c = c + s_next * mag_cat[k]
                s = s_next
                n_events[r] += 1
            t_elapsed[r] = t
            cum[r] = c
            s_prev[r] = s
