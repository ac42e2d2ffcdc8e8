import numpy as np
import pytest

from lwlab import (
    GridFunction,
    apply_id_minus_shift,
    apply_linear,
    dirac,
    step_nonlinear,
    step_shock,
)
from lwlab.errors import NonzeroTails
from lwlab.profiles import profile_with_mass
from lwlab.scheme import nonlinear_remainder


def test_step_shock_is_a_fixed_point(cfg):
    s = step_shock(cfg, half_width=6)
    out = step_nonlinear(cfg, s)
    np.testing.assert_array_equal(out.at(s.indices), s.at(s.indices))
    assert out.tail_left == cfg.u_l and out.tail_right == cfg.u_r


def test_constant_state_is_exact(cfg):
    g = GridFunction(0, np.full(5, 0.3), tail_left=0.3, tail_right=0.3)
    out = step_nonlinear(cfg, g)
    np.testing.assert_array_equal(out.values, np.full(7, 0.3))


def test_full_shock_operator_on_dirac(cfg):
    out = apply_linear("full_shock", cfg, dirac(0))
    assert out.j_min == -1
    np.testing.assert_allclose(
        out.values, [-3.0 / 32.0, 31.0 / 32.0, 1.0 / 8.0], rtol=0, atol=0
    )


def test_free_operators_on_dirac(cfg):
    right = apply_linear("free_right", cfg, dirac(0))
    assert right.j_min == -1
    np.testing.assert_allclose(
        right.values, [5.0 / 32.0, 15.0 / 16.0, -3.0 / 32.0], rtol=0, atol=0
    )
    left = apply_linear("free_left", cfg, dirac(0))
    assert left.j_min == -1
    np.testing.assert_allclose(
        left.values, [-3.0 / 32.0, 15.0 / 16.0, 5.0 / 32.0], rtol=0, atol=0
    )


def test_full_shock_matches_free_away_from_interface(cfg):
    for j0, kind in [(-7, "free_left"), (8, "free_right")]:
        a = apply_linear("full_shock", cfg, dirac(j0))
        b = apply_linear(kind, cfg, dirac(j0))
        np.testing.assert_array_equal(a.values, b.values)
        assert a.j_min == b.j_min


@pytest.mark.parametrize("kind", ["full_shock", "free_left", "free_right"])
def test_linear_operators_conserve_mass(cfg, rng, kind):
    w = GridFunction(-4, rng.standard_normal(11))
    out = apply_linear(kind, cfg, w)
    assert out.values.sum() == pytest.approx(w.values.sum(), abs=1e-13)


def test_linear_operators_reject_nonzero_tails(cfg):
    with pytest.raises(NonzeroTails):
        apply_linear("full_shock", cfg, step_shock(cfg))


def test_full_shock_is_the_linearization_at_the_step(cfg, rng):
    h = GridFunction(-5, rng.standard_normal(12))
    s = step_shock(cfg, half_width=8)
    eps = 1e-7
    pert = GridFunction(
        s.j_min,
        s.values + eps * h.padded(s.j_min, s.j_max),
        tail_left=s.tail_left,
        tail_right=s.tail_right,
    )
    fd = (step_nonlinear(cfg, pert).values - step_nonlinear(cfg, s).values) / eps
    lin = apply_linear("full_shock", cfg, h)
    js = np.arange(s.j_min - 1, s.j_max + 2)
    np.testing.assert_allclose(fd, lin.at(js), atol=5e-7)


def test_profile_linearization_at_theta_zero_matches_full_shock(cfg, rng):
    p = profile_with_mass(cfg, 0.0)
    w = GridFunction(-3, rng.standard_normal(9))
    a = apply_linear("full_shock", cfg, w)
    b = apply_linear(p, cfg, w)
    np.testing.assert_allclose(a.values, b.values, atol=1e-14)


def test_nonlinear_remainder_is_quadratic(cfg):
    p = profile_with_mass(cfg, 0.3)
    h = dirac(1, 1.0)
    norms = []
    for eps in (1e-3, 1e-4):
        scaled = GridFunction(h.j_min, eps * h.values)
        r = nonlinear_remainder(cfg, p, scaled)
        norms.append(np.abs(r.values).max())
    assert norms[0] / norms[1] == pytest.approx(100.0, rel=0.05)


def test_id_minus_shift_telescopes(cfg, rng):
    w = GridFunction(2, rng.standard_normal(7))
    d = apply_id_minus_shift(w)
    assert d.j_min == w.j_min - 1
    # summing the differences rightward from j recovers w_j
    js = np.arange(w.j_min, w.j_max + 1)
    partial = np.cumsum(d.at(js)[::-1])[::-1]
    np.testing.assert_allclose(partial, w.at(js), atol=1e-14)
    assert d.values.sum() == pytest.approx(0.0, abs=1e-14)
