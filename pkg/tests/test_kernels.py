"""Backend equivalence: compiled kernels vs the numpy fallback.

The sign-walk and renewal kernels consume their pre-drawn uniforms in
the same positional order in both backends, so outputs must be
bit-identical. The semiparametric kernel differs only in floating-point
summation order, so it is compared at a tight tolerance instead.
"""

import numpy as np
import pytest

from trendvar._kernels import BACKEND, get_backend
from trendvar._kernels import _fallback

compiled = pytest.importorskip("trendvar._kernels._core",
                               reason="compiled backend not built")


def draws(shape, seed=0):
    return np.random.default_rng(seed).random(shape)


def test_backend_selection_exposes_known_name():
    assert BACKEND in ("compiled", "fallback")


def test_get_backend_round_trip():
    assert get_backend("fallback") is _fallback
    assert get_backend("compiled") is compiled
    with pytest.raises(ValueError):
        get_backend("nope")


def test_crw_terminal_bit_identical():
    R, n = 500, 257
    u0 = draws(R, 1)
    us = draws((R, n - 1), 2)
    out_c = np.empty(R)
    out_f = np.empty(R)
    for p in (0.05, 0.5, 0.93):
        compiled.crw_terminal(p, u0, us, out_c)
        _fallback.crw_terminal(p, u0, us, out_f)
        np.testing.assert_array_equal(out_c, out_f)


def test_semiparam_terminal_close():
    R, n = 400, 129
    pool = np.abs(np.random.default_rng(3).lognormal(0, 1, 37))
    u0 = draws(R, 4)
    us = draws((R, n - 1), 5)
    um = draws((R, n), 6)
    out_c = np.empty(R)
    out_f = np.empty(R)
    compiled.semiparam_terminal(0.7, u0, us, um, pool, out_c)
    _fallback.semiparam_terminal(0.7, u0, us, um, pool, out_f)
    np.testing.assert_allclose(out_c, out_f, rtol=1e-12, atol=1e-12)


def _renewal_inputs(R, width, seed):
    g = np.random.default_rng(seed)
    mag_cat = np.concatenate([g.lognormal(-1, 0.3, 10) for _ in range(4)])
    tau_cat = np.concatenate([g.exponential(1.0, 10) for _ in range(4)])
    offsets = np.arange(0, 41, 10, dtype=np.int64)
    u_sign = g.random((R, width))
    u_pick = g.random((R, width))
    s_prev = np.where(g.random(R) < 0.5, 1, -1).astype(np.int8)
    return mag_cat, tau_cat, offsets, u_sign, u_pick, s_prev


def test_renewal_block_bit_identical():
    R, width = 300, 64
    mag_cat, tau_cat, offsets, u_sign, u_pick, s_prev = _renewal_inputs(R, width, 7)
    state_c = [np.zeros(R), np.zeros(R), s_prev.copy(),
               np.zeros(R, dtype=np.uint8), np.zeros(R, dtype=np.int64)]
    state_f = [np.zeros(R), np.zeros(R), s_prev.copy(),
               np.zeros(R, dtype=np.uint8), np.zeros(R, dtype=np.int64)]
    horizon = 30.0
    compiled.renewal_block(0.65, horizon, mag_cat, tau_cat, offsets,
                           u_sign, u_pick, *state_c)
    _fallback.renewal_block(0.65, horizon, mag_cat, tau_cat, offsets,
                            u_sign, u_pick, *state_f)
    for a, b in zip(state_c, state_f):
        np.testing.assert_array_equal(a, b)


def test_renewal_block_respects_horizon():
    R, width = 100, 256
    mag_cat, tau_cat, offsets, u_sign, u_pick, s_prev = _renewal_inputs(R, width, 8)
    t_el = np.zeros(R)
    cum = np.zeros(R)
    done = np.zeros(R, dtype=np.uint8)
    n_ev = np.zeros(R, dtype=np.int64)
    compiled.renewal_block(0.5, 20.0, mag_cat, tau_cat, offsets,
                           u_sign, u_pick, t_el, cum, s_prev, done, n_ev)
    assert (t_el <= 20.0).all()
    assert done[n_ev < width].all()  # anyone under budget must have finished
