"""Representative velocity: Galilean constants, point samples, normal
velocity routes, and the 2D transform cross-check.

Frozen reference values: mpmath (mp.dps = 30) adaptive quadrature of the
defining contour integrals for the gaussian front (amplitude 0.5, width 2.0,
center 0) with reference depth h = 1. The integration line was split at the
probe abscissa and the edges of the numerically relevant support.
"""

import numpy as np
import pytest

from sqgfronts import (
    BoxSpec,
    KernelParams,
    box_riesz_crosscheck,
    front_profile,
    galilean_shift,
    make_grid,
    make_state,
    normal_velocity_background,
    normal_velocity_bmo,
    velocity_at,
)

ORACLE_UBAR = -0.6131062346376577
ORACLE_U_05_3 = 2.0228493696395711  # u at (0.5, 3.0)
ORACLE_V_05_3 = 0.021227123228235058
ORACLE_U_3_M5 = 3.262048301990763  # u at (3.0, -5.0)
ORACLE_V_3_M5 = 0.021393203828967115
ORACLE_UBAR_EXP = -0.73993755276824114  # for phi = exp(-x^2), h = 1


def _state(n=1200, amplitude=0.5, width=2.0, center=0.0):
    g = make_grid(-30.0, 60.0, n)
    phi, _ = front_profile(g.x, "gaussian", amplitude=amplitude, width=width, center=center)
    return make_state(g, phi)


def test_flat_front_shift_is_zero():
    g = make_grid(-30.0, 60.0, 600)
    st = make_state(g, np.zeros(600))
    sh = galilean_shift(st, KernelParams(h=1.0))
    assert sh.ubar == 0.0
    assert sh.vbar == 0.0


def test_galilean_shift_oracle():
    sh = galilean_shift(_state(), KernelParams(h=1.0))
    assert abs(sh.ubar - ORACLE_UBAR) < 1e-12
    assert abs(sh.vbar) < 1e-14  # even front


def test_galilean_shift_exp_front():
    sh = galilean_shift(_state(amplitude=1.0, width=1.0), KernelParams(h=1.0))
    assert abs(sh.ubar - ORACLE_UBAR_EXP) < 1e-12


def test_velocity_at_oracles():
    st = _state()
    sh = galilean_shift(st, KernelParams(h=1.0))
    s1 = velocity_at(st, 0.5, 3.0, sh)
    assert abs(s1.u - ORACLE_U_05_3) < 1e-12
    assert abs(s1.v - ORACLE_V_05_3) < 5e-8
    s2 = velocity_at(st, 3.0, -5.0, sh)
    assert abs(s2.u - ORACLE_U_3_M5) < 1e-12
    assert abs(s2.v - ORACLE_V_3_M5) < 5e-8


def test_velocity_field_h_independent():
    # the anchored reference sits at (0, -h); moving h only reshuffles the
    # constant absorbed in ubar, the sampled field must not move
    st = _state()
    for x, y in ((0.5, 3.0), (3.0, -5.0), (-7.0, 1.2)):
        samples = []
        for h in (1.0, 2.5, 4.0):
            sh = galilean_shift(st, KernelParams(h=h))
            s = velocity_at(st, x, y, sh)
            samples.append((s.u, s.v))
        us = [s[0] for s in samples]
        vs = [s[1] for s in samples]
        assert max(us) - min(us) < 1e-9
        assert max(vs) - min(vs) < 1e-9


def test_flat_front_hilbert_pair():
    # flat front: u = 2 log|y| everywhere, v = 0, at any x
    g = make_grid(-30.0, 60.0, 1024)
    st = make_state(g, np.zeros(1024))
    sh = galilean_shift(st, KernelParams(h=1.0))
    for x in (0.0, 1.7, -4.0):
        for y in (-50.0, -10.0, -2.0, 0.5, 3.0, 50.0):
            s = velocity_at(st, x, y, sh)
            assert abs(s.u - 2.0 * np.log(abs(y))) < 1e-10
            assert abs(s.v) < 1e-10


def test_far_field_at_fixed_x():
    # off the symmetry axis the log law still holds and v still decays
    st = _state()
    sh = galilean_shift(st, KernelParams(h=1.0))
    u_errs, v_errs = [], []
    for ay in (1e2, 1e3, 1e4):
        s = velocity_at(st, 3.0, -ay, sh)
        u_errs.append(abs(s.u - 2.0 * np.log(ay)))
        v_errs.append(abs(s.v))
    assert u_errs[0] > u_errs[1] > u_errs[2]
    assert v_errs[0] > v_errs[1] > v_errs[2]
    assert u_errs[1] < 1e-2


def test_reflection_symmetry_even_front():
    # even front: u even in x, v odd in x, to grid accuracy
    st = _state()
    sh = galilean_shift(st, KernelParams(h=1.0))
    for x, y in ((1.3, 2.0), (4.0, -3.5)):
        a = velocity_at(st, x, y, sh)
        b = velocity_at(st, -x, y, sh)
        assert abs(a.u - b.u) < 1e-12
        assert abs(a.v + b.v) < 1e-12


def test_probe_on_front_rejected():
    st = _state()
    sh = galilean_shift(st, KernelParams(h=1.0))
    with pytest.raises(ValueError):
        velocity_at(st, 0.0, float(st.phi[st.grid.n // 2]), sh)


def test_periodic_state_rejected():
    g = make_grid(0.0, 2 * np.pi, 128, periodic=True)
    st = make_state(g, 0.01 * np.cos(g.x))
    with pytest.raises(ValueError):
        galilean_shift(st, KernelParams(h=1.0))


def test_normal_velocity_routes_agree():
    # strip-referenced route vs representative-velocity route
    st = _state()
    p = KernelParams(h=1.0)
    nv1 = normal_velocity_background(st, p)
    nv2 = normal_velocity_bmo(st, galilean_shift(st, p), p)
    assert np.max(np.abs(nv1 - nv2)) < 1e-6


def test_normal_velocity_h_independent():
    st = _state()
    base = normal_velocity_background(st, KernelParams(h=1.0))
    for h in (2.0, 5.0):
        alt = normal_velocity_background(st, KernelParams(h=h))
        assert np.max(np.abs(alt - base)) < 1e-8
    base2 = normal_velocity_bmo(st, galilean_shift(st, KernelParams(h=1.0)), KernelParams(h=1.0))
    alt2 = normal_velocity_bmo(st, galilean_shift(st, KernelParams(h=3.0)), KernelParams(h=3.0))
    assert np.max(np.abs(alt2 - base2)) < 1e-8


def test_normal_velocity_flat_is_zero():
    g = make_grid(-30.0, 60.0, 600)
    st = make_state(g, np.zeros(600))
    p = KernelParams(h=1.0)
    assert np.max(np.abs(normal_velocity_background(st, p))) < 1e-12
    assert np.max(np.abs(normal_velocity_bmo(st, galilean_shift(st, p), p))) < 1e-12


def test_box_spec_validation():
    with pytest.raises(ValueError):
        BoxSpec(size=-10.0, n=256)
    with pytest.raises(ValueError):
        BoxSpec(size=40.0, n=10)


def test_box_crosscheck_flat_strip():
    g = make_grid(-30.0, 60.0, 1024)
    st = make_state(g, np.zeros(1024))
    rep = box_riesz_crosscheck(st, BoxSpec(size=80.0, n=1024), KernelParams(h=1.0))
    assert rep["sup"] < 5e-2


def test_box_crosscheck_bump_and_image_decay():
    st = _state(n=1024)
    p = KernelParams(h=1.0)
    rep1 = box_riesz_crosscheck(st, BoxSpec(size=80.0, n=1024), p)
    rep2 = box_riesz_crosscheck(st, BoxSpec(size=160.0, n=2048), p)
    assert rep1["sup"] < 1e-1
    # doubling the box at fixed cell size at least halves the image error
    assert rep2["sup"] < 0.5 * rep1["sup"]


def test_box_too_small_rejected():
    st = _state(n=1024)
    with pytest.raises(ValueError):
        box_riesz_crosscheck(st, BoxSpec(size=4.0, n=64), KernelParams(h=1.0))
