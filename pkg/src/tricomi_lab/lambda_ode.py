r"""The decaying weight ODE  :math:`\lambda'' - 2m t^{-1}\lambda' - t^{2m}\lambda = 0`.

With :math:`\varphi(t) = t^{m+1}/(m+1)` and :math:`\mu = m/(2(m+1))` the
fundamental system is

.. math::
    \lambda_-(t) = t^{m+1/2} K_{1/2+\mu}(\varphi(t)), \qquad
    \lambda_+(t) = t^{m+1/2} I_{1/2+\mu}(\varphi(t)),

with derivatives :math:`\lambda_-' = -t^{2m+1/2}K_{1/2-\mu}(\varphi)` and
:math:`\lambda_+' = t^{2m+1/2}I_{\mu-1/2}(\varphi)`.  The decaying member
:math:`\lambda = \lambda_-` is the time weight of the blow-up test function.

For integer ``m`` the same solutions arise from a power series whose only
non-zero coefficients sit at ``h = 0`` and ``h = 2m+1`` modulo ``2(m+1)``;
:func:`series_coeffs` builds it and :func:`series_lambda` sums it.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from tricomi_lab import specfun as sf
from tricomi_lab.integrate import dp45


@dataclass(frozen=True)
class TricomiIndex:
    """Degeneracy exponent ``m`` and the Bessel orders it induces."""

    m: float

    def __post_init__(self):
        if not self.m >= 0:
            raise ValueError("m must be non-negative")

    @property
    def mu(self):
        return self.m / (2.0 * (self.m + 1.0))

    @property
    def nu_minus(self):
        return 0.5 + self.mu

    @property
    def nu_plus(self):
        return 0.5 + self.mu

    @property
    def phase_exponent(self):
        return self.m + 1.0

    def phase(self, t):
        return np.asarray(t, dtype=float) ** (self.m + 1.0) / (self.m + 1.0)


def _as_index(idx):
    return idx if isinstance(idx, TricomiIndex) else TricomiIndex(float(idx))


def _positive(t):
    t = np.asarray(t, dtype=float)
    if np.any(t <= 0):
        raise ValueError("t must be positive")
    return t


def _out(x, t):
    return float(x) if np.ndim(t) == 0 else x


def lambda_minus(idx, t):
    idx = _as_index(idx)
    t = _positive(t)
    return _out(t ** (idx.m + 0.5) * sf.bessel_k(idx.nu_minus, idx.phase(t)), t)


def lambda_plus(idx, t):
    idx = _as_index(idx)
    t = _positive(t)
    return _out(t ** (idx.m + 0.5) * sf.bessel_i(idx.nu_plus, idx.phase(t)), t)


def lambda_minus_prime(idx, t):
    idx = _as_index(idx)
    t = _positive(t)
    return _out(-t ** (2 * idx.m + 0.5) * sf.bessel_k(0.5 - idx.mu, idx.phase(t)), t)


def lambda_plus_prime(idx, t):
    idx = _as_index(idx)
    t = _positive(t)
    return _out(t ** (2 * idx.m + 0.5) * sf.bessel_i(idx.mu - 0.5, idx.phase(t)), t)


def lambda_minus_second(idx, t):
    """Second derivative by differentiating the closed form of the first."""
    idx = _as_index(idx)
    t = _positive(t)
    m, nu = idx.m, 0.5 - idx.mu
    z = idx.phase(t)
    val = -(2 * m + 0.5) * t ** (2 * m - 0.5) * sf.bessel_k(nu, z) \
        - t ** (3 * m + 0.5) * sf.bessel_k_prime(nu, z)
    return _out(val, t)


def lambda_plus_second(idx, t):
    idx = _as_index(idx)
    t = _positive(t)
    m, nu = idx.m, idx.mu - 0.5
    z = idx.phase(t)
    val = (2 * m + 0.5) * t ** (2 * m - 0.5) * sf.bessel_i(nu, z) \
        + t ** (3 * m + 0.5) * sf.bessel_i_prime(nu, z)
    return _out(val, t)


def ode_residual(idx, t, which="minus"):
    """Relative residual ``|y'' - 2m y'/t - t^{2m} y| / (|y''| + t^{2m}|y|)``."""
    idx = _as_index(idx)
    t = _positive(t)
    if which == "minus":
        y, yp, ypp = lambda_minus(idx, t), lambda_minus_prime(idx, t), lambda_minus_second(idx, t)
    elif which == "plus":
        y, yp, ypp = lambda_plus(idx, t), lambda_plus_prime(idx, t), lambda_plus_second(idx, t)
    else:
        raise ValueError("which must be 'minus' or 'plus'")
    w = t ** (2 * idx.m)
    res = ypp - 2 * idx.m / t * yp - w * y
    return _out(np.abs(res) / (np.abs(ypp) + w * np.abs(y)), t)


def wronskian_check(idx, t):
    """``lambda_- lambda_+' - lambda_+ lambda_-'``; equals ``(m+1) t^{2m}``."""
    idx = _as_index(idx)
    return (lambda_minus(idx, t) * lambda_plus_prime(idx, t)
            - lambda_plus(idx, t) * lambda_minus_prime(idx, t))


def c0(idx, sign):
    """``c0(+-mu) = 2^{+-mu-1/2} (m+1)^{+-mu+1/2} Gamma(+-mu+1/2)``."""
    idx = _as_index(idx)
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    smu = sign * idx.mu
    return 2.0 ** (smu - 0.5) * (idx.m + 1.0) ** (smu + 0.5) * sf.gamma(smu + 0.5)


def lambda_fn(idx, t):
    """Decaying solution ``lambda = lambda_-`` with its limit ``c0(mu)`` at 0."""
    idx = _as_index(idx)
    t = np.asarray(t, dtype=float)
    if np.any(t < 0):
        raise ValueError("t must be non-negative")
    pos = t > 0
    out = np.full(t.shape, c0(idx, 1))
    if pos.any():
        out[pos] = lambda_minus(idx, t[pos])
    return _out(out, t)


def lambda_deriv_scaled(idx, t):
    """``lambda'(t) / t^{2m} = -t^{1/2} K_{1/2-mu}(phi)``, equal to ``-c0(-mu)`` at 0."""
    idx = _as_index(idx)
    t = np.asarray(t, dtype=float)
    if np.any(t < 0):
        raise ValueError("t must be non-negative")
    pos = t > 0
    out = np.full(t.shape, -c0(idx, -1))
    if pos.any():
        tp = t[pos]
        out[pos] = -np.sqrt(tp) * sf.bessel_k(0.5 - idx.mu, idx.phase(tp))
    return _out(out, t)


def lambda_fn_deriv(idx, t):
    """``lambda'(t)``; at ``t = 0`` the limit ``-c0(-mu) * 0^{2m}``."""
    idx = _as_index(idx)
    t = np.asarray(t, dtype=float)
    scaled = np.asarray(lambda_deriv_scaled(idx, t))
    w = np.where(t > 0, t ** (2 * idx.m), 1.0 if idx.m == 0 else 0.0)
    return _out(scaled * w, t)


def asymptotic_ratios(idx, t):
    """Ratios of ``lambda`` and ``-lambda'`` to their large-t leading terms."""
    idx = _as_index(idx)
    t = _positive(t)
    m = idx.m
    head = math.sqrt((m + 1) * math.pi / 2) * np.exp(-idx.phase(t))
    return (lambda_minus(idx, t) / (head * t ** (m / 2)),
            -lambda_minus_prime(idx, t) / (head * t ** (1.5 * m)))


def ode_oracle(idx, y0, yp0, t0, t1, tol=1e-10):
    """Integrate the weight ODE numerically from ``t0`` to ``t1``.

    ``t1`` may be a sequence of increasing times, in which case arrays of
    ``y`` and ``y'`` are returned.

    Raises
    ------
    StepUnderflowError
        Propagated from the integrator.
    """
    idx = _as_index(idx)
    if not 1e-12 <= tol <= 1e-6:
        raise ValueError("tol must lie in [1e-12, 1e-6]")
    times = np.atleast_1d(np.asarray(t1, dtype=float))
    if not 0 < t0 < times[0]:
        raise ValueError("need 0 < t0 < t1")
    m = idx.m

    def rhs(t, y):
        return np.array([y[1], 2 * m / t * y[1] + t ** (2 * m) * y[0]])

    sol = dp45(rhs, t0, [y0, yp0], times, tol=tol)
    if np.ndim(t1) == 0:
        return float(sol[0, 0]), float(sol[0, 1])
    return sol[:, 0], sol[:, 1]


# ---------------------------------------------------------------------------
# Power-series solution for integer m
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SeriesCoeffs:
    m: int
    a0: float
    a_odd: float
    coeffs: np.ndarray = field(repr=False)


def _check_integer_m(m):
    if int(m) != m or m < 0:
        raise ValueError("the power series is only built for non-negative integer m")
    return int(m)


def series_order(m):
    """Bessel order ``(m + 1/2)/(m + 1)`` attached to the series."""
    return (m + 0.5) / (m + 1.0)


def series_coeffs(m, a0, a_odd, n_coeffs):
    """Coefficients ``a_0 .. a_{n_coeffs-1}`` from the two-step recursion.

    ``a_odd`` is the free coefficient ``a_{2m+1}``.
    """
    m = _check_integer_m(m)
    a = np.zeros(n_coeffs)
    period = 2 * (m + 1)
    for h in range(n_coeffs):
        if h == 0:
            a[h] = a0
        elif h == 2 * m + 1:
            a[h] = a_odd
        elif h >= period:
            a[h] = a[h - period] / (h * (h - 2 * m - 1))
    return SeriesCoeffs(m, float(a0), float(a_odd), a)


def series_coeff(m, h, a0, a_odd, rtol=1e-12):
    """Coefficient ``a_h``; recursion value checked against its Gamma form."""
    m = _check_integer_m(m)
    rec = series_coeffs(m, a0, a_odd, h + 1).coeffs[h]
    period = 2 * (m + 1)
    nu = series_order(m)
    k, rest = divmod(h, period)
    if rest == 0:
        closed = float(period) ** (-2 * k) * sf.gamma(1 - nu) / (math.factorial(k) * sf.gamma(k + 1 - nu)) * a0
    elif rest == 2 * m + 1:
        closed = float(period) ** (-2 * k) * sf.gamma(1 + nu) / (math.factorial(k) * sf.gamma(k + 1 + nu)) * a_odd
    else:
        closed = 0.0
    if abs(rec - closed) > rtol * max(abs(closed), 1e-300):
        raise AssertionError(f"recursion {rec!r} and Gamma form {closed!r} disagree at h = {h}")
    return rec


def series_lambda(coeffs, t, n_terms):
    """Partial sum of ``sum_h a_h t^h`` over the first ``n_terms`` periods.

    One period is the block ``2(m+1)k <= h < 2(m+1)(k+1)``, which holds the two
    possibly non-zero coefficients ``a_{2(m+1)k}`` and ``a_{2(m+1)k+2m+1}``.
    """
    if n_terms < 1:
        raise ValueError("n_terms must be >= 1")
    n_coeffs = 2 * (coeffs.m + 1) * n_terms
    a = coeffs.coeffs
    if len(a) < n_coeffs:
        a = series_coeffs(coeffs.m, coeffs.a0, coeffs.a_odd, n_coeffs).coeffs
    t = np.asarray(t, dtype=float)
    acc = np.zeros_like(t)
    for h in range(n_coeffs - 1, -1, -1):
        acc = acc * t + a[h]
    return _out(acc, t)


def bessel_constants(m):
    """``(c_minus, c_plus)`` linking the series halves to ``t^{m+1/2} I_{-+nu}``.

    ``c_pm = Gamma(1 +- nu) [2(m+1)]^{-+nu}`` with ``nu = (m+1/2)/(m+1)``.
    """
    nu = series_order(m)
    base = 2.0 * (m + 1.0)
    return sf.gamma(1 - nu) * base ** (-nu), sf.gamma(1 + nu) * base ** nu


def series_for(idx, which, n_coeffs=120):
    """Series coefficients reproducing ``lambda_-`` or ``lambda_+``."""
    idx = _as_index(idx)
    m = _check_integer_m(idx.m)
    c_minus, c_plus = bessel_constants(m)
    if which == "plus":
        a0, a_odd = 0.0, 1.0 / c_plus
    elif which == "minus":
        s = math.pi / (2 * math.sin(math.pi * series_order(m)))
        a0, a_odd = s / c_minus, -s / c_plus
    else:
        raise ValueError("which must be 'minus' or 'plus'")
    return series_coeffs(m, a0, a_odd, n_coeffs)
