"""Acceptance suite: one test per criterion, each printing a single pass/fail line.

The lines are also collected into the "acceptance criteria" section of the
pytest terminal summary.
"""

import math
import time

import numpy as np
import pytest

from tricomi_lab import blowup as B
from tricomi_lab import lambda_ode as L
from tricomi_lab import lifespan as ls
from tricomi_lab import multiplier as M
from tricomi_lab import specfun as sf
from tricomi_lab import spectral as S


# --- 1. special functions ---------------------------------------------------

def _selftest_split():
    t0 = time.perf_counter()
    rows = sf.selftest()
    elapsed = time.perf_counter() - t0
    k_quarter = [r for r in rows
                 if r["identity"] == "limit_K_small_z" and r["nu_or_a"] == 0.25]
    others = [r for r in rows if r not in k_quarter]
    return rows, others, k_quarter, elapsed


def test_criterion_1_special_functions(criterion):
    rows, others, k_quarter, elapsed = _selftest_split()
    families = {r["identity"] for r in rows}
    bad = [r for r in others if not r["pass"]]
    kq = k_quarter[0]
    ok = not bad and kq["pass"] and elapsed < 10
    criterion(1, ok,
              f"{len(rows) - len(bad) - (not kq['pass'])}/{len(rows)} identity checks pass over "
              f"{len(families)} families in {elapsed:.2f}s; K_1/4 small-z limit at z=1e-6: "
              f"rel_err {kq['rel_err']:.2e} vs tol 1e-4 (exact next-order term, see strict xfail)")
    assert not bad, [(r["identity"], r["nu_or_a"], r["z"], r["rel_err"]) for r in bad]
    assert elapsed < 10


@pytest.mark.xfail(strict=True, reason="K_1/4(z)/leading term at z = 1e-6 differs from 1 by "
                                       "|Gamma(-1/4)/Gamma(1/4)|(z/2)^(1/2) = 9.6e-4 > 1e-4")
def test_criterion_1_k_quarter_small_z_limit():
    _, _, k_quarter, _ = _selftest_split()
    assert k_quarter[0]["rel_err"] <= 1e-4


# --- 2. weight ODE ----------------------------------------------------------

def test_criterion_2_ode_fundamental_system(criterion):
    t0 = time.perf_counter()
    t = np.geomspace(0.05, 10.0, 60)
    worst_res = worst_w = 0.0
    for m in (0.0, 0.25, 0.5, 1.0, 2.0):
        for which in ("minus", "plus"):
            worst_res = max(worst_res, float(np.max(L.ode_residual(m, t, which))))
        w = np.asarray(L.wronskian_check(m, t))
        worst_w = max(worst_w, float(np.max(np.abs(w / ((m + 1) * t ** (2 * m)) - 1))))
    worst_lam = worst_dlam = 0.0
    for m in (0.25, 0.5, 1.0, 2.0):
        tiny = np.array([1e-6])
        worst_lam = max(worst_lam, abs(L.lambda_fn(m, tiny)[0] / L.c0(m, 1) - 1))
        worst_dlam = max(worst_dlam, abs(L.lambda_fn_deriv(m, tiny)[0] / 1e-6 ** (2 * m) / L.c0(m, -1) + 1))
    ts = np.linspace(0.0, 1.0, 41)
    worst_series = 0.0
    for m in (0, 1, 2):
        ser = L.series_lambda(L.series_for(m, "minus"), ts, 40)
        worst_series = max(worst_series, float(np.max(np.abs(ser - L.lambda_fn(m, ts)))))
    elapsed = time.perf_counter() - t0
    ok = (worst_res <= 1e-8 and worst_w <= 1e-9 and worst_lam <= 1e-4 and worst_dlam <= 1e-3
          and worst_series <= 1e-8 and elapsed < 30)
    criterion(2, ok, f"residual {worst_res:.1e} (<=1e-8), Wronskian {worst_w:.1e} (<=1e-9), "
                     f"limits {worst_lam:.1e}/{worst_dlam:.1e} (<=1e-4/1e-3), "
                     f"series {worst_series:.1e} (<=1e-8), {elapsed:.2f}s")
    assert ok


# --- 3. propagator symbols --------------------------------------------------

def test_criterion_3_propagator_oracle(criterion):
    t0 = time.perf_counter()
    rs = np.array([0.5, 1.0, 2.0, 5.0, 20.0])
    ts = np.array([0.3, 1.0, 3.0])
    worst = 0.0
    worst_w = 0.0
    for m in (0.5, 1.0, 2.0):
        oracle = M.mode_oracle(m, rs, ts, tol=1e-12)
        syms = M.symbols(m, ts[:, None], rs[None, :])
        for sym, ref in zip(syms, oracle):
            worst = max(worst, float(np.max(np.abs(sym - ref) / np.abs(ref))))
        w = M.mode_wronskian(m, ts[:, None], rs[None, :])
        worst_w = max(worst_w, float(np.max(np.abs(w - 1))))
    tt, rr = ts[:, None], rs[None, :]
    wave = (np.cos(rr * tt), np.sin(rr * tt) / rr, -rr * np.sin(rr * tt), np.cos(rr * tt))
    worst_wave = max(float(np.max(np.abs(a - b))) for a, b in zip(M.symbols(0.0, tt, rr), wave))
    elapsed = time.perf_counter() - t0
    ok = worst <= 1e-6 and worst_wave <= 1e-12 and worst_w <= 1e-9 and elapsed < 60
    criterion(3, ok, f"symbols vs per-mode ODE {worst:.1e} rel (<=1e-6), m=0 closed forms "
                     f"{worst_wave:.1e} (<=1e-12), mode Wronskian {worst_w:.1e} (<=1e-9), {elapsed:.2f}s")
    assert ok


# --- 4. symbol bound constants ----------------------------------------------

def test_criterion_4_bound_constants(criterion):
    t0 = time.perf_counter()
    worst = 0.0
    finite = True
    count = 0
    for m in (0.5, 1.0, 2.0):
        coarse = M.bound_report(m, np.geomspace(0.1, 10, 20), np.geomspace(0.1, 100, 200))
        fine = M.bound_report(m, np.geomspace(0.1, 10, 40), np.geomspace(0.1, 100, 400))
        for (kind, sigma, a), (kind2, sigma2, b) in zip(coarse, fine):
            assert (kind, sigma) == (kind2, sigma2)
            finite &= bool(np.isfinite(a) and np.isfinite(b))
            worst = max(worst, abs(b / a - 1))
            count += 1
    elapsed = time.perf_counter() - t0
    ok = finite and worst < 0.1 and elapsed < 60
    criterion(4, ok, f"{count} (kind, sigma endpoint, m) constants finite={finite}, worst change "
                     f"under grid doubling {worst:.1e} (<0.1), {elapsed:.2f}s")
    assert ok


# --- 5. solver validation ---------------------------------------------------

def _bump_integral(a, b):
    from scipy.integrate import quad
    lo, hi = max(a, -1.0), min(b, 1.0)
    return quad(lambda y: S.bump(abs(y)), lo, hi)[0] if hi > lo else 0.0


def test_criterion_5_solver(criterion):
    t0 = time.perf_counter()
    grid = S.make_grid(1, 1024, 24.0)
    # linear-limit order of RK4
    d = S.sample_data(grid, 1.0, 1.0, amp_f=1.0)
    ue, ve = S.linear_evolve(grid, 1.0, d, 1.0)
    errs = []
    for cfl in (0.4, 0.2, 0.1):
        st = S.evolve(grid, 1.0, 2.0, d, 1.0, cfl=cfl, nonlinear=False)
        errs.append(max(np.max(np.abs(st.u - ue)), np.max(np.abs(st.v - ve))))
    order = math.log2(errs[1] / errs[2])
    # d'Alembert at m = 0, against an independent quadrature of the bump
    gd = S.make_grid(1, 1024, 3.0)
    dd = S.sample_data(gd, 1.0, 0.0, amp_f=1.0, amp_g=1.0)
    st = S.evolve(gd, 0.0, 2.0, dd, 0.5, cfl=0.1, nonlinear=False)
    x = gd.x1d
    ref = 0.5 * (S.bump(np.abs(x + 0.5)) + S.bump(np.abs(x - 0.5)))
    ref += np.array([0.5 * _bump_integral(xi - 0.5, xi + 0.5) for xi in x])
    dal = float(np.max(np.abs(st.u - ref)))
    # finite-speed cone over blow-up runs in 1D and 2D
    runs = [S.run_until_blowup(grid, 1.0, 2.0, S.sample_data(grid, 0.8, 1.0, amp_g=math.e / 2), t_max=10.0)]
    g2 = S.make_grid(2, 256, 8.0)
    runs.append(S.run_until_blowup(g2, 1.0, 2.0, S.sample_data(g2, 2.0, 1.0), t_max=2.0))
    violations = sum(r.cone_violations for r in runs)
    statuses = [r.status for r in runs]
    # RK vs Picard-Duhamel at short time
    dn = S.sample_data(grid, 0.5, 1.0)
    st = S.evolve(grid, 1.0, 2.0, dn, 0.2, cfl=0.2)
    res = S.duhamel_solve(grid, 1.0, 2.0, dn, 0.2)
    cross = max(float(np.max(np.abs(res.u - st.u))), float(np.max(np.abs(res.v - st.v))))
    elapsed = time.perf_counter() - t0
    ok = (order >= 3.5 and dal <= 1e-6 and violations == 0 and cross <= 1e-4
          and res.contracting and elapsed < 300)
    criterion(5, ok, f"RK4 order {order:.2f} (>=3.5), d'Alembert {dal:.1e} (<=1e-6), cone "
                     f"violations {violations} over {len(runs)} runs {statuses}, RK vs Picard "
                     f"{cross:.1e} (<=1e-4), {elapsed:.1f}s")
    assert ok


# --- 6. weak-form residual --------------------------------------------------

def test_criterion_6_weak_residual(criterion):
    t0 = time.perf_counter()
    Mh = 1.5
    orders = {}
    for nonlinear in (False, True):
        res = []
        for n in (1024, 2048):
            g = S.make_grid(1, n, 8.0)
            d = S.sample_data(g, 0.3, 1.0, amp_f=0.5)
            rec = S.run_until_blowup(g, 1.0, 2.0, d, t_max=Mh, store_fields=True, nonlinear=nonlinear)
            tf = B.TestFunction(1.0, 2.0, Mh, 1)
            tf.check_grid(g)
            res.append(S.weak_residual(rec.trace.field_t, rec.trace.u, rec.trace.v, g, 1.0, 2.0,
                                       d.g, tf, nonlinear=nonlinear))
        orders["nonlinear" if nonlinear else "linear"] = math.log2(res[0].residual / res[1].residual)
    elapsed = time.perf_counter() - t0
    ok = min(orders.values()) >= 1.7 and elapsed < 120
    criterion(6, ok, f"refinement order linear {orders['linear']:.2f}, nonlinear "
                     f"{orders['nonlinear']:.2f} (>=1.7), {elapsed:.1f}s")
    assert ok


# --- 7. 1D lifespan scaling -------------------------------------------------

PINNED_1D = dict(eps=[0.8, 0.566, 0.4, 0.283, 0.2], dim=1, m=1.0, p=2.0, n=4096, L=72.0,
                 cfl=0.5, t_max=40.0, amp_g=math.e / 2, parallelism=1)


def test_criterion_7_lifespan_1d(criterion, tmp_path):
    t0 = time.perf_counter()
    cfg = ls.SweepConfig(**PINNED_1D)
    recs = ls.sweep(cfg)
    params = ls.exponents(1, 1.0, 2.0)
    summary = ls.report(recs, params, tmp_path, cfg.as_dict(), cfg.thresholds)
    fit = ls.fit_slope(recs, params)
    s5 = ls.fit_slope(recs, params, threshold=1e5).slope
    s7 = ls.fit_slope(recs, params, threshold=1e7).slope
    shift = abs(s7 / s5 - 1)
    band = abs(fit.slope / (-2 / 3) - 1)
    elapsed = time.perf_counter() - t0
    ok = (all(r.status == S.BLOWN_UP for r in recs) and band <= 0.2 and shift < 0.1
          and elapsed < 900)
    criterion(7, ok, f"slope {fit.slope:.4f} vs -2/3 ({100 * band:.1f}% off, <=20%), R^2 {fit.r2:.4f}, "
                     f"threshold shift 1e5->1e7 {100 * shift:.3f}% (<10%), "
                     f"T={[round(r.T_eps, 3) for r in recs]}, ratio {summary['ratio']:.3f}, {elapsed:.1f}s")
    assert ok


# --- 8. 2D qualitative ------------------------------------------------------

PINNED_2D = dict(eps=[4.0, 2.83, 2.0, 1.41], dim=2, m=1.0, p=2.0, n=256, L=8.0, cfl=0.5,
                 t_max=2.0, amp_g=math.e, parallelism=1)


def test_criterion_8_lifespan_2d(criterion, tmp_path):
    cfg = ls.SweepConfig(**PINNED_2D)
    recs = ls.sweep(cfg)
    params = ls.exponents(2, 1.0, 2.0)
    summary = ls.report(recs, params, tmp_path, cfg.as_dict(), cfg.thresholds)
    monotone = ls.is_monotone(recs)
    fitted = summary["fit"] is not None
    ok = monotone and fitted
    mag = abs(summary["fit"]["slope"]) / params.upper_exponent if fitted else float("nan")
    criterion(8, ok, f"monotone={monotone}, fit generated={fitted}, slope "
                     f"{summary['fit']['slope'] if fitted else float('nan'):.3f} vs predicted upper-bound "
                     f"exponent {-params.upper_exponent:.3f}; magnitude ratio {mag:.2f} "
                     f"(0.8 comparison reported, not asserted)")
    assert ok


# --- 9. exponent identities -------------------------------------------------

def test_criterion_9_exponent_identities(criterion):
    t0 = time.perf_counter()
    worst = 0.0
    for m in (0.25, 0.5, 1.0, 2.0):
        worst = max(worst, abs(ls.a_coeff(m) / (L.c0(m, 1) / L.c0(m, -1)) - 1))
    for n in (2, 3, 4):
        for m in (0.0, 0.5, 1.0, 2.0):
            worst = max(worst, abs(ls.gamma_T(n, m, ls.p_T(n, m))))
    for n in (2, 3, 4, 5):
        worst = max(worst, abs(ls.p_T(n, 0.0) - ls.p_G(n)))
    sentinel = ls.p_G(1) == ls.p_T(1, 0.0) == math.inf
    for m in (0.0, 0.5, 1.0, 2.0, 3.5):
        for p in (1.2, 2.0, 3.0, 7.0):
            e = ls.exponents(1, m, p)
            worst = max(worst, abs(e.upper_exponent - e.lower_exponent_1d))
    elapsed = time.perf_counter() - t0
    ok = worst <= 1e-12 and sentinel and elapsed < 1
    criterion(9, ok, f"worst identity deviation {worst:.1e} (<=1e-12), p_G(1)=p_T(1,0)=inf "
                     f"{sentinel}, {elapsed * 1e3:.1f}ms")
    assert ok
