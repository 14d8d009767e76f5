import math

import numpy as np
import pytest

from leemodel import (
    FormFactor,
    ModelParams,
    NoConvergence,
    QuadSpec,
    StabilityViolation,
    TWO_PI_CUBED,
    default_spec,
    mass_shift_integral,
    norm_integral,
    radial_integrate,
    upper_momentum,
    z_factor_integral,
)

from helpers import (
    ALL_MODELS,
    I1_AT_15,
    I2_AT_15,
    MU,
    RADIAL_F2_OVER_2W,
    SHARP_K_CUT,
    SPEC,
    X_AT_G1,
    riemann_radial,
    sharp_model,
)


def _f2_over_2w(params):
    ff, mu = params.form_factor, params.mu

    def integrand(om):
        fval = np.asarray(ff.evaluate(om, mu), dtype=float)
        return fval * fval / (2.0 * om)

    return integrand


def test_zero_integrand():
    assert radial_integrate(lambda om: 0.0, sharp_model(), SPEC) == 0.0


def test_ball_volume():
    # sharp cutoff at Lambda = sqrt(5) puts the momentum edge exactly at k = 2
    params = sharp_model(lam=math.sqrt(5.0))
    value = radial_integrate(lambda om: 1.0, params, SPEC)
    assert math.isclose(value, 32.0 * math.pi / 3.0, rel_tol=1e-13)


def test_radial_f2_over_2w_golden_and_riemann():
    params = sharp_model()
    value = radial_integrate(_f2_over_2w(params), params, SPEC)
    assert math.isclose(value, RADIAL_F2_OVER_2W, rel_tol=1e-11)
    brute = riemann_radial(lambda om: 1.0 / (2.0 * om), SHARP_K_CUT)
    assert math.isclose(value, brute, rel_tol=1e-8)


def test_i1_golden_and_riemann():
    params = sharp_model()
    value = mass_shift_integral(1.5, params, SPEC)
    assert math.isclose(value, I1_AT_15, rel_tol=1e-11)
    brute = riemann_radial(lambda om: 1.0 / (2.0 * om) / (0.5 - om), SHARP_K_CUT)
    assert math.isclose(value, brute, rel_tol=1e-8)


def test_i2_golden_and_riemann():
    params = sharp_model()
    value = z_factor_integral(1.5, params, SPEC)
    assert math.isclose(value, I2_AT_15, rel_tol=1e-11)
    brute = riemann_radial(lambda om: 1.0 / (2.0 * om) / (0.5 - om) ** 2, SHARP_K_CUT)
    assert math.isclose(value, brute, rel_tol=1e-8)


def test_integrals_vanish_with_the_form_factor():
    # sharp cutoff below mu leaves no momentum range at all
    params = sharp_model(lam=0.5)
    assert mass_shift_integral(1.5, params, SPEC) == 0.0
    assert z_factor_integral(1.5, params, SPEC) == 0.0


def test_integral_signs_all_models():
    for make in ALL_MODELS:
        params = make()
        spec = default_spec(params)
        for m in (0.3, 1.0, 1.7):
            assert mass_shift_integral(m, params, spec) < 0.0
            assert z_factor_integral(m, params, spec) > 0.0


def test_i1_monotone_decreasing_in_m():
    params = sharp_model()
    values = [mass_shift_integral(m, params, SPEC) for m in (0.5, 1.0, 1.5, 1.9)]
    assert all(b < a for a, b in zip(values, values[1:]))


def test_derivative_identity_all_models():
    # I2 = -dI1/dm, central differences with h = 1e-5 * mu
    h = 1e-5 * MU
    for make in ALL_MODELS:
        params = make()
        spec = default_spec(params)
        for m in np.linspace(0.1, 1.9, 10):
            fd = -(mass_shift_integral(m + h, params, spec)
                   - mass_shift_integral(m - h, params, spec)) / (2.0 * h)
            i2 = z_factor_integral(m, params, spec)
            assert abs(i2 - fd) / abs(i2) < 1e-6


def test_sharp_cutoff_exactness():
    # for the sharp family the limit is k(Lambda), never k_max
    params = sharp_model()
    tight = QuadSpec(k_max=SHARP_K_CUT)
    huge = QuadSpec(k_max=500.0)
    assert upper_momentum(params, tight) == upper_momentum(params, huge)
    a = z_factor_integral(1.5, params, tight)
    b = z_factor_integral(1.5, params, huge)
    assert a == b


def test_refinement_monotonicity():
    params = sharp_model()
    a = z_factor_integral(1.5, params, QuadSpec(panels=4))
    b = z_factor_integral(1.5, params, QuadSpec(panels=8))
    assert abs(a - b) <= max(SPEC.abs_tol, SPEC.rel_tol * abs(b))


def test_norm_integral():
    params = sharp_model()
    assert norm_integral(params, 0.0, 1.5, SPEC) == 0.0
    value = norm_integral(params, 1.0, 1.5, SPEC)
    assert math.isclose(value, X_AT_G1, rel_tol=1e-10)
    # algebraic identity: norm / I2 == g0^2/(2 pi)^3
    g0 = 1.3
    ratio = norm_integral(params, g0, 1.5, SPEC) / z_factor_integral(1.5, params, SPEC)
    assert math.isclose(ratio, g0 * g0 / TWO_PI_CUBED, rel_tol=1e-10)


def test_norm_integral_finite_for_all_models():
    for make in ALL_MODELS:
        params = make()
        value = norm_integral(params, 1.0, 1.5, default_spec(params))
        assert math.isfinite(value) and value > 0.0


def test_stability_violation():
    params = sharp_model()
    with pytest.raises(StabilityViolation):
        mass_shift_integral(2.0, params, SPEC)
    with pytest.raises(StabilityViolation):
        z_factor_integral(2.3, params, SPEC)
    with pytest.raises(StabilityViolation):
        norm_integral(params, 1.0, 2.0, SPEC)


def test_no_convergence_on_unresolvable_integrand():
    # oscillation far below any reachable panel width: refinement never settles
    params = sharp_model(lam=math.sqrt(5.0))
    with pytest.raises(NoConvergence):
        radial_integrate(lambda om: np.sin(1e9 * om) ** 2, params, SPEC)


def test_quadspec_validation():
    with pytest.raises(ValueError):
        QuadSpec(panels=0)
    with pytest.raises(ValueError):
        QuadSpec(nodes_per_panel=1)
    with pytest.raises(ValueError):
        QuadSpec(k_max=0.0)
    with pytest.raises(ValueError):
        QuadSpec(abs_tol=0.0)
    with pytest.raises(ValueError):
        QuadSpec(rel_tol=-1.0)


def test_default_spec_scales_with_cutoff():
    params = ModelParams(m_n=1.0, mu=1.0, form_factor=FormFactor.exponential(2.5))
    assert default_spec(params).k_max == 100.0
    assert default_spec(params, panels=8).panels == 8


def test_scalar_integrand_broadcast():
    params = sharp_model(lam=math.sqrt(5.0))
    value = radial_integrate(lambda om: 2.5, params, SPEC)
    assert math.isclose(value, 2.5 * 32.0 * math.pi / 3.0, rel_tol=1e-13)
