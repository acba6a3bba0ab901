"""Pure-numpy implementations of the Monte Carlo kernels.

Consumes the same pre-drawn uniform arrays, positionally, as the
compiled kernels in _core.pyx. The sign arithmetic is exact, so
crw_terminal and renewal_block agree bit-for-bit with the compiled
versions; semiparam_terminal may differ by float summation-order
round-off only.
"""

from __future__ import annotations

import numpy as np


def crw_terminal(p, u_init, u_steps, out):
    s0 = np.where(u_init < 0.5, 1.0, -1.0)
    if u_steps.shape[1]:
        mult = np.where(u_steps < p, 1.0, -1.0)
        rest = s0[:, None] * np.cumprod(mult, axis=1)
        out[:] = s0 + rest.sum(axis=1)
    else:
        out[:] = s0


def semiparam_terminal(p, u_init, u_steps, u_mag, mag_pool, out):
    K = mag_pool.shape[0]
    s0 = np.where(u_init < 0.5, 1.0, -1.0)
    if u_steps.shape[1]:
        mult = np.where(u_steps < p, 1.0, -1.0)
        signs = np.concatenate(
            [s0[:, None], s0[:, None] * np.cumprod(mult, axis=1)], axis=1
        )
    else:
        signs = s0[:, None]
    idx = np.minimum((u_mag * K).astype(np.int64), K - 1)
    out[:] = np.einsum("ij,ij->i", signs, mag_pool[idx])


def renewal_block(p, horizon, mag_cat, tau_cat, offsets,
                  u_sign, u_pick, t_elapsed, cum, s_prev, done, n_events):
    W = u_sign.shape[1]
    active = done == 0
    for j in range(W):
        if not active.any():
            break
        s_next = np.where(u_sign[:, j] < p, s_prev, -s_prev).astype(np.int8)
        b = 2 * (s_next < 0) + (s_prev < 0)
        lo = offsets[b]
        length = offsets[b + 1] - lo
        k = lo + np.minimum((u_pick[:, j] * length).astype(np.int64), length - 1)
        tau = tau_cat[k]
        finish = active & (t_elapsed + tau > horizon)
        done[finish] = 1
        active = active & ~finish
        t_elapsed[active] += tau[active]
        cum[active] += s_next[active] * mag_cat[k[active]]
        s_prev[active] = s_next[active]
        n_events[active] += 1
