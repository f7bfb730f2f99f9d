import math

import numpy as np
import pytest

from tricomi_lab import multiplier as M

RS = np.array([0.5, 1.0, 2.0, 5.0, 20.0])
TS = np.array([0.3, 1.0, 3.0])


def test_wave_limit_closed_forms():
    ms = M.ModeSymbol(0.0, 1.0, 3.0)
    assert M.v1_symbol(ms) == pytest.approx(math.cos(3.0), abs=1e-15)
    assert M.v2_symbol(ms) == pytest.approx(math.sin(3.0) / 3.0, abs=1e-15)
    ms = M.ModeSymbol(0.0, 0.7, 2.0)
    assert M.dt_v1_symbol(ms) == pytest.approx(-2 * math.sin(1.4), abs=1e-15)
    assert M.dt_v2_symbol(ms) == pytest.approx(math.cos(1.4), abs=1e-15)


@pytest.mark.parametrize("m", [0.0, 0.5, 1.0, 2.0])
def test_zero_frequency_and_initial_time(m):
    v1, v2, d1, d2 = M.symbols(m, np.array([0.0, 0.4, 2.0]), 0.0)
    np.testing.assert_array_equal(v1, 1.0)
    np.testing.assert_allclose(v2, [0.0, 0.4, 2.0], rtol=1e-15)
    np.testing.assert_array_equal(d1, 0.0)
    np.testing.assert_array_equal(d2, 1.0)
    v1, v2, d1, d2 = M.symbols(m, 0.0, RS)
    np.testing.assert_array_equal(v1, 1.0)
    np.testing.assert_array_equal(v2, 0.0)
    np.testing.assert_array_equal(d1, 0.0)
    np.testing.assert_array_equal(d2, 1.0)


def test_m_to_zero_continuity():
    t = TS[:, None]
    kummer = M.symbols(1e-6, t, RS[None, :])
    wave = M.symbols(0.0, t, RS[None, :])
    # dtV1 carries a factor r, so compare it on the scale of r
    scales = (1.0, 1.0, RS[None, :], 1.0)
    for a, b, sc in zip(kummer, wave, scales):
        np.testing.assert_allclose(a / sc, b / sc, atol=1e-4)


@pytest.mark.parametrize("m", [0.5, 1.0, 2.0])
def test_oracle_equivalence(m):
    oracle = M.mode_oracle(m, RS, TS, tol=1e-12)
    v1, v2, d1, d2 = M.symbols(m, TS[:, None], RS[None, :])
    for sym, ref in zip((v1, v2, d1, d2), oracle):
        assert np.max(np.abs(sym.imag)) < 1e-12
        assert np.max(np.abs(sym.real - ref) / np.abs(ref)) < 1e-6


def test_mode_oracle_wave_and_wronskian():
    tol = 1e-11
    t = np.linspace(0.5, 4.0, 8)
    y1, y2, y1p, y2p = M.mode_oracle(0.0, np.array([1.5, 4.0]), t, tol=tol)
    r = np.array([1.5, 4.0])
    np.testing.assert_allclose(y1, np.cos(np.outer(t, r)), atol=10 * tol * 100)
    np.testing.assert_allclose(y2, np.sin(np.outer(t, r)) / r, atol=10 * tol * 100)
    w = y1 * y2p - y2 * y1p
    y1, y2, y1p, y2p = M.mode_oracle(1.0, np.array([2.0]), t, tol=tol)
    w = y1 * y2p - y2 * y1p
    assert np.max(np.abs(w - 1)) < 100 * tol * 10


def test_mode_oracle_matches_symbols_example():
    y1, y2, _, _ = M.mode_oracle(1.0, 2.0, 1.5)
    ms = M.ModeSymbol(1.0, 1.5, 2.0)
    assert abs(M.v1_symbol(ms) - y1[0, 0]) < 1e-6
    assert abs(M.v2_symbol(ms) - y2[0, 0]) < 1e-6
    y1, y2, _, _ = M.mode_oracle(1.0, 2.0, 1.0)
    ms = M.ModeSymbol(1.0, 1.0, 2.0)
    assert abs(M.v1_symbol(ms) - y1[0, 0]) < 1e-7
    assert abs(M.v2_symbol(ms) - y2[0, 0]) < 1e-7


@pytest.mark.parametrize("m", [0.0, 0.5, 1.0, 2.0])
def test_wronskian_grid(m):
    t = np.geomspace(0.05, 10, 30)[:, None]
    r = np.geomspace(0.01, 300, 40)[None, :]
    assert np.max(np.abs(M.mode_wronskian(m, t, r) - 1)) < 1e-9


def test_time_derivative_finite_difference():
    h = 1e-5 * 1.3
    plus = M.v1_symbol(M.ModeSymbol(1.0, 1.3 + h, 1.0))
    minus = M.v1_symbol(M.ModeSymbol(1.0, 1.3 - h, 1.0))
    assert abs((plus - minus) / (2 * h) - M.dt_v1_symbol(M.ModeSymbol(1.0, 1.3, 1.0))) < 1e-6


@pytest.mark.parametrize("m", [0.5, 1.0, 2.0])
def test_mode_ode_residual(m):
    t = np.array([0.4, 1.1, 2.5])[:, None]
    r = np.array([0.3, 1.0, 4.0])[None, :]
    h = 1e-5 * np.maximum(1.0, t)
    for k in (0, 1):
        f = lambda tt: M.symbols(m, tt, r)[k]  # noqa: E731
        second = (f(t + h) - 2 * f(t) + f(t - h)) / h ** 2
        res = second + t ** (2 * m) * r ** 2 * f(t)
        scale = np.abs(second) + t ** (2 * m) * r ** 2 * np.abs(f(t)) + 1
        assert np.max(np.abs(res) / scale) < 1e-5


def test_w_symbols():
    w1, w2, _, _ = M.w_symbols(1.0, 0.8, 0.8, 2.0)
    assert w2 - w1 == 0
    w1, w2, _, _ = M.w_symbols(0.0, 0.5, 1.0, 2.0)
    assert (w2 - w1).real == pytest.approx(math.sin(1.0) / 2.0, abs=1e-15)
    _, dk = M.duhamel_kernel(1.0, 0.5, 0.5 + 1e-6, 1.0)
    assert abs(dk - 1) < 1e-5
    with pytest.raises(ValueError):
        M.w_symbols(1.0, 2.0, 1.0, 1.0)


def test_w_derivative_matches_finite_difference():
    s, t, r, h = 0.5, 1.5, 1.0, 1e-5
    _, _, dw1, dw2 = M.w_symbols(1.0, s, t, r)
    fwd = M.w_symbols(1.0, s, t + h, r)
    bwd = M.w_symbols(1.0, s, t - h, r)
    assert abs((fwd[0] - bwd[0]) / (2 * h) - dw1) < 1e-8
    assert abs((fwd[1] - bwd[1]) / (2 * h) - dw2) < 1e-8


def test_bound_examples():
    t = np.geomspace(0.1, 10, 20)
    r = np.geomspace(0.1, 100, 200)
    c = M.symbol_bound_check(M.SymbolBoundSpec("V1", 0.0, 0.0), t, r)
    assert c == pytest.approx(1.0, abs=1e-3)
    c = M.symbol_bound_check(M.SymbolBoundSpec("V1", -0.25, 1.0), t, r)
    assert np.isfinite(c)
    c = M.symbol_bound_check(M.SymbolBoundSpec("corW", -1.0, 1.0), t, r, s_grid=t)
    assert np.isfinite(c)
    with pytest.raises(ValueError):
        M.SymbolBoundSpec("V1", 0.5, 1.0)
    with pytest.raises(ValueError):
        M.symbol_bound_check(M.SymbolBoundSpec("W1", -1.0, 1.0), t, r)


def test_frequency_split_partition():
    s = np.geomspace(0.1, 3, 15)[:, None, None]
    t = np.geomspace(0.1, 3, 15)[None, :, None]
    r = np.geomspace(0.01, 50, 60)[None, None, :]
    s, t = np.minimum(s, t), np.maximum(s, t)
    x0, x1, x2 = M.frequency_split(1.0, s, t, r)
    np.testing.assert_allclose(x0 + x1 + x2, 1.0)
    assert np.all(x0 >= 0) and np.all(x2 >= 0)
    assert np.all(x1 >= -1e-15) and np.all(x1 <= 1 + 1e-15)


def test_bound_refinement_stability_m1():
    coarse = M.bound_report(1.0, np.geomspace(0.1, 10, 20), np.geomspace(0.1, 100, 200))
    fine = M.bound_report(1.0, np.geomspace(0.1, 10, 40), np.geomspace(0.1, 100, 400))
    for (kind, sigma, a), (_, _, b) in zip(coarse, fine):
        assert np.isfinite(a) and abs(b / a - 1) < 0.1, (kind, sigma)
