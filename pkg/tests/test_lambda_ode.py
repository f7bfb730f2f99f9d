import math

import numpy as np
import pytest

from tricomi_lab import lambda_ode as L
from tricomi_lab import specfun as sf
from tricomi_lab.integrate import StepUnderflowError, dp45

T_GRID = np.geomspace(0.05, 10, 50)
# sqrt(2) Gamma(3/4) from mpmath, 40 digits
C0_PLUS_M1 = 1.7330009201847698


def test_index_fields():
    idx = L.TricomiIndex(1.0)
    assert idx.mu == 0.25
    assert idx.nu_minus == idx.nu_plus == 0.75
    assert idx.phase_exponent == 2.0
    with pytest.raises(ValueError):
        L.TricomiIndex(-0.5)


@pytest.mark.parametrize("t", [0.5, 1.0, 2.0])
def test_m0_closed_forms(t):
    assert L.lambda_minus(0, t) == pytest.approx(math.sqrt(math.pi / 2) * math.exp(-t), rel=1e-14)
    assert L.lambda_plus(0, t) == pytest.approx(math.sqrt(2 / math.pi) * math.sinh(t), rel=1e-14)


@pytest.mark.parametrize("m", [0, 0.5, 1, 2])
def test_residual_and_wronskian(m):
    for which in ("minus", "plus"):
        assert np.max(L.ode_residual(m, T_GRID, which)) <= 1e-8
    w = L.wronskian_check(m, T_GRID)
    np.testing.assert_allclose(w, (m + 1) * T_GRID ** (2 * m), rtol=1e-9)


def test_wronskian_examples():
    assert L.wronskian_check(1, 1.0) == pytest.approx(2.0, rel=1e-12)
    assert L.wronskian_check(0, 3.7) == pytest.approx(1.0, rel=1e-12)
    assert L.wronskian_check(0.5, 2.0) == pytest.approx(3.0, rel=1e-12)


def test_signs_and_limits():
    for m in (0, 0.5, 1, 2):
        assert np.all(L.lambda_fn(m, T_GRID) > 0)
        assert np.all(L.lambda_fn_deriv(m, T_GRID) < 0)
        c_plus, c_minus = L.c0(m, 1), L.c0(m, -1)
        assert abs(L.lambda_fn(m, 1e-6) - c_plus) <= 1e-4 * c_plus
        assert abs(L.lambda_fn_deriv(m, 1e-6) / 1e-6 ** (2 * m) + c_minus) <= 1e-3 * c_minus
        assert L.lambda_fn(m, 0.0) == c_plus
        assert L.lambda_deriv_scaled(m, 0.0) == -c_minus


def test_c0_values():
    assert L.c0(0, 1) == pytest.approx(math.sqrt(math.pi / 2))
    assert L.c0(0, -1) == pytest.approx(math.sqrt(math.pi / 2))
    assert L.c0(1, 1) == pytest.approx(C0_PLUS_M1, rel=1e-13)
    assert L.lambda_fn(0, 0.0) == pytest.approx(1.2533141373155001)
    assert L.lambda_fn(0, 1.0) == pytest.approx(0.4610685044478946)
    with pytest.raises(ValueError):
        L.c0(1, 0)


def test_asymptotics():
    r_lam, _ = L.asymptotic_ratios(1, 10.0)
    assert abs(r_lam - 1) <= 5 * 10.0 ** -2
    t = np.linspace(5, 20, 31)
    for m in (0.5, 1):
        r1, r2 = L.asymptotic_ratios(m, t)
        for r in (r1, r2):
            dist = np.abs(r - 1)
            assert np.all(np.diff(dist) < 0)


def test_ode_oracle_m0():
    tol = 1e-10
    y, yp = L.ode_oracle(0, math.cosh(0.1), math.sinh(0.1), 0.1, 1.0, tol)
    assert abs(y - math.cosh(1)) <= 10 * tol * math.cosh(1)
    assert abs(yp - math.sinh(1)) <= 10 * tol * math.cosh(1)


def test_ode_oracle_matches_closed_form():
    tol = 1e-10
    times = np.array([0.5, 1.0, 2.0])
    for lam, dlam in ((L.lambda_minus, L.lambda_minus_prime), (L.lambda_plus, L.lambda_plus_prime)):
        y, yp = L.ode_oracle(1, lam(1, 0.1), dlam(1, 0.1), 0.1, times, tol)
        np.testing.assert_allclose(y, lam(1, times), rtol=100 * tol)
        np.testing.assert_allclose(y[:2], lam(1, times[:2]), rtol=1e-7)


def test_ode_oracle_linearity():
    a = L.ode_oracle(1, 0.7, -0.3, 0.2, 1.5, 1e-10)
    b = L.ode_oracle(1, 1.4, -0.6, 0.2, 1.5, 1e-10)
    assert b[0] == pytest.approx(2 * a[0], rel=1e-12, abs=0)
    assert b[1] == pytest.approx(2 * a[1], rel=1e-12, abs=0)


def test_ode_oracle_rejects_bad_input():
    with pytest.raises(ValueError):
        L.ode_oracle(1, 1.0, 0.0, 0.0, 1.0)
    with pytest.raises(ValueError):
        L.ode_oracle(1, 1.0, 0.0, 0.1, 1.0, tol=1e-3)


def test_step_underflow():
    with pytest.raises(StepUnderflowError):
        # finite-time blow-up of y' = y^2 forces the controller to collapse
        dp45(lambda t, y: y * y, 0.0, [1.0], [2.0], tol=1e-10)


def test_series_basics():
    c = L.series_coeffs(0, 1.0, 0.0, 12)
    assert L.series_lambda(c, 0.5, 10) == pytest.approx(math.cosh(0.5), abs=1e-10)
    assert L.series_coeff(1, 4, 1.0, 0.0) == 0.25
    assert L.series_coeff(1, 7, 0.0, 1.0) == pytest.approx(1 / 28)
    c1 = L.series_coeffs(1, 1.0, 2.0, 40).coeffs
    period = 4
    for h in range(40):
        if h % period not in (0, 3):
            assert c1[h] == 0.0
    with pytest.raises(ValueError):
        L.series_coeffs(0.5, 1.0, 0.0, 5)


def test_series_gamma_form():
    for m in range(4):
        period = 2 * (m + 1)
        for k in range(21):
            L.series_coeff(m, period * k, 1.3, -0.4)
            L.series_coeff(m, period * k + 2 * m + 1, 1.3, -0.4)


def test_series_even_half_is_bessel():
    # (a0, a3) = (1, 0) at m = 1: c_minus t^{3/2} I_{-3/4}(t^2/2)
    c_minus, _ = L.bessel_constants(1)
    assert c_minus == pytest.approx(sf.gamma(0.25) * 4 ** -0.75)
    s = L.series_lambda(L.series_coeffs(1, 1.0, 0.0, 40), 0.8, 40)
    ref = c_minus * 0.8 ** 1.5 * sf.bessel_i(-0.75, 0.32)
    assert s == pytest.approx(ref, rel=1e-9)


@pytest.mark.parametrize("m", [0, 1, 2])
def test_series_matches_closed_form(m):
    t = np.linspace(0, 1, 41)
    lam_minus = L.series_lambda(L.series_for(m, "minus"), t, 40)
    lam_plus = L.series_lambda(L.series_for(m, "plus"), t, 40)
    np.testing.assert_allclose(lam_minus, L.lambda_fn(m, t), atol=1e-8)
    np.testing.assert_allclose(lam_plus[1:], L.lambda_plus(m, t[1:]), atol=1e-8)
