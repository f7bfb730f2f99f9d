r"""Gamma, modified Bessel and Kummer functions, written from scratch.

Everything downstream (the auxiliary ODE, the propagator symbols, the test
function) is evaluated through this module, so accuracy here bounds the
accuracy of every later check.

Evaluation policy
-----------------
* ``gamma``: Lanczos approximation (g = 7, 9 terms) with reflection below 1/2.
* ``bessel_i``: ascending series for ``z <= asym_switch``, Hankel expansion
  above.
* ``bessel_k``: Temme's series (``z < 2``) or Steed's continued fraction
  (``2 <= z <= asym_switch``) followed by upward recurrence in the order;
  Hankel expansion above ``asym_switch``.  The reflection formula
  :math:`K_\nu = \tfrac{\pi}{2}(I_{-\nu}-I_\nu)/\sin\nu\pi` is kept as
  :func:`bessel_k_reflection` for cross-checks at small argument.
* ``kummer_phi``: power series carried in double-double arithmetic for
  ``|z| <= asym_switch`` (purely imaginary arguments cancel by up to
  ``e^{|z|}``), and the two-wave decomposition
  :math:`e^{-z/2}\Phi = \frac{\Gamma(c)}{\Gamma(a)}e^{z/2}H_+ +
  \frac{\Gamma(c)}{\Gamma(c-a)}e^{-z/2}H_-` above it.
"""

import math
from dataclasses import dataclass

import numpy as np

from tricomi_lab import _ddarith as dd


class PoleError(ValueError):
    """Argument sits on a pole of Gamma or of a Pochhammer denominator."""


class ConvergenceError(RuntimeError):
    """A series hit ``max_terms`` before meeting ``series_tol``."""


@dataclass(frozen=True)
class SpecFunConfig:
    series_tol: float = 1e-14
    max_terms: int = 500
    asym_switch: float = 30.0
    integer_nu_eps: float = 1e-6

    def __post_init__(self):
        if not self.series_tol > 0:
            raise ValueError("series_tol must be positive")
        if self.max_terms < 10:
            raise ValueError("max_terms must be at least 10")
        if not self.asym_switch > 1:
            raise ValueError("asym_switch must exceed 1")
        if not 0 < self.integer_nu_eps <= 1e-3:
            raise ValueError("integer_nu_eps must lie in (0, 1e-3]")


DEFAULT_CONFIG = SpecFunConfig()


@dataclass(frozen=True)
class KummerArgs:
    """Validated parameter triple for :func:`kummer_phi`."""

    a: float
    c: float
    z: complex

    def __post_init__(self):
        if _is_nonpositive_integer(self.c):
            raise PoleError(f"c = {self.c} is a pole of the Kummer series denominator")

    def evaluate(self, config=None):
        return kummer_phi(self.a, self.c, self.z, config)


def _is_nonpositive_integer(x):
    return x <= 0 and float(x).is_integer()


# ---------------------------------------------------------------------------
# Gamma
# ---------------------------------------------------------------------------

_LANCZOS_G = 7.0
_LANCZOS_COEF = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_SQRT_2PI = math.sqrt(2.0 * math.pi)


def _sinpi(x):
    # reduce exactly before multiplying by pi
    r = math.fmod(x, 2.0)
    if r > 1.0:
        r -= 2.0
    elif r < -1.0:
        r += 2.0
    if r > 0.5:
        r = 1.0 - r
    elif r < -0.5:
        r = -1.0 - r
    return math.sin(math.pi * r)


def _gamma_scalar(x):
    x = float(x)
    if _is_nonpositive_integer(x):
        raise PoleError(f"gamma has a pole at x = {x}")
    if x.is_integer() and x <= 171:
        return float(math.factorial(int(x) - 1))
    if x < 0.5:
        return math.pi / (_sinpi(x) * _gamma_scalar(1.0 - x))
    x -= 1.0
    acc = _LANCZOS_COEF[0]
    for i in range(1, 9):
        acc += _LANCZOS_COEF[i] / (x + i)
    t = x + _LANCZOS_G + 0.5
    if x > 140:
        return math.exp(math.log(_SQRT_2PI * acc) + (x + 0.5) * math.log(t) - t)
    # split the power to delay overflow
    half = t ** (0.5 * (x + 0.5))
    return _SQRT_2PI * half * (half * math.exp(-t)) * acc


def gamma(x):
    """Gamma function for real arguments away from the poles.

    Raises
    ------
    PoleError
        At ``x = 0, -1, -2, ...``.
    """
    if np.ndim(x) == 0:
        return _gamma_scalar(x)
    return np.vectorize(_gamma_scalar, otypes=[float])(x)


def rgamma(x):
    """Reciprocal Gamma, returning 0 at the poles."""
    x = float(x)
    if _is_nonpositive_integer(x):
        return 0.0
    return 1.0 / _gamma_scalar(x)


def pochhammer(x, n):
    """Rising factorial ``(x)_n`` by running product."""
    out = 1.0
    for k in range(n):
        out *= x + k
    return out


# ---------------------------------------------------------------------------
# Modified Bessel functions
# ---------------------------------------------------------------------------

# Taylor coefficients of 1/Gamma(1 + x) about x = 0
_RGAMMA1_TAYLOR = (
    1.0,
    0.57721566490153286061,
    -0.65587807152025388108,
    -0.042002635034095235529,
    0.1665386113822914895,
    -0.042197734555544336748,
    -0.0096219715278769735621,
    0.0072189432466630995424,
    -0.0011651675918590651121,
    -0.00021524167411495097282,
    0.00012805028238811618615,
    -0.000020134854780788238656,
    -1.2504934821426706573e-6,
    1.1330272319816958824e-6,
    -2.0563384169776071035e-7,
    6.1160951044814158179e-9,
    5.0020076444692229301e-9,
    -1.1812745704870201446e-9,
    1.0434267116911005105e-10,
    7.782263439905071254e-12,
    -3.6968056186422057082e-12,
    5.100370287454475979e-13,
    -2.0583260535665067832e-14,
    -5.3481225394230179824e-15,
    1.2267786282382607902e-15,
    -1.1812593016974587695e-16,
    1.1866922547516003326e-18,
    1.4123806553180317816e-18,
    -2.2987456844353702066e-19,
)


def _temme_gammas(mu):
    """Return (gam1, gam2, 1/Gamma(1+mu), 1/Gamma(1-mu)) for |mu| <= 1/2."""
    even = 0.0
    odd = 0.0
    for k in range(len(_RGAMMA1_TAYLOR) - 1, -1, -1):
        c = _RGAMMA1_TAYLOR[k]
        if k % 2 == 0:
            even = even * mu * mu + c
        else:
            odd = odd * mu * mu + c
    # even(mu) = sum c_{2j} mu^{2j}; odd(mu) = sum c_{2j+1} mu^{2j}
    gampl = even + mu * odd
    gammi = even - mu * odd
    return -odd, even, gampl, gammi


def _bessel_k_temme(nu, x, tol=1e-16, max_iter=10000):
    """K_nu(x) and K_{nu+1}(x) for nu >= 0, x > 0 (Temme / Steed)."""
    nl = int(nu + 0.5)
    xmu = nu - nl
    xmu2 = xmu * xmu
    xi = 1.0 / x
    xi2 = 2.0 * xi
    if x < 2.0:
        x2 = 0.5 * x
        pimu = math.pi * xmu
        fact = 1.0 if abs(pimu) < 1e-16 else pimu / math.sin(pimu)
        d = -math.log(x2)
        e = xmu * d
        fact2 = 1.0 if abs(e) < 1e-16 else math.sinh(e) / e
        gam1, gam2, gampl, gammi = _temme_gammas(xmu)
        ff = fact * (gam1 * math.cosh(e) + gam2 * fact2 * d)
        total = ff
        e = math.exp(e)
        p = 0.5 * e / gampl
        q = 0.5 / (e * gammi)
        c = 1.0
        d = x2 * x2
        total1 = p
        for i in range(1, max_iter):
            ff = (i * ff + p + q) / (i * i - xmu2)
            c *= d / i
            p /= i - xmu
            q /= i + xmu
            delta = c * ff
            total += delta
            total1 += c * (p - i * ff)
            if abs(delta) < abs(total) * tol:
                break
        else:
            raise ConvergenceError("Temme series for K did not converge")
        kmu = total
        k1 = total1 * xi2
    else:
        b = 2.0 * (1.0 + x)
        d = 1.0 / b
        h = delh = d
        q1, q2 = 0.0, 1.0
        a1 = 0.25 - xmu2
        q = c = a1
        a = -a1
        s = 1.0 + q * delh
        for i in range(2, max_iter):
            a -= 2 * (i - 1)
            c = -a * c / i
            qnew = (q1 - b * q2) / a
            q1, q2 = q2, qnew
            q += c * qnew
            b += 2.0
            d = 1.0 / (b + a * d)
            delh = (b * d - 1.0) * delh
            h += delh
            dels = q * delh
            s += dels
            if abs(dels / s) < tol:
                break
        else:
            raise ConvergenceError("Steed continued fraction for K did not converge")
        h = a1 * h
        kmu = math.sqrt(math.pi / (2.0 * x)) * math.exp(-x) / s
        k1 = kmu * (xmu + x + 0.5 - h) * xi
    for i in range(1, nl + 1):
        kmu, k1 = k1, (xmu + i) * xi2 * k1 + kmu
    return kmu, k1


def _hankel_coeffs(nu, z, max_terms):
    """Partial sums of the Hankel series sum a_k z^-k (K-sign) and (I-sign)."""
    mu4 = 4.0 * nu * nu
    sum_k = np.ones_like(z)
    sum_i = np.ones_like(z)
    term = np.ones_like(z)
    last = np.full_like(z, np.inf)
    active = np.ones(z.shape, dtype=bool)
    for k in range(1, max_terms):
        term = term * (mu4 - (2 * k - 1) ** 2) / (k * 8.0 * z)
        mag = np.abs(term)
        # stop each entry at its smallest term
        active &= mag < last
        if not active.any():
            break
        sum_k = np.where(active, sum_k + term, sum_k)
        sum_i = np.where(active, sum_i + (-1) ** k * term, sum_i)
        active &= mag > 1e-17 * np.abs(sum_k)
        last = mag
    return sum_k, sum_i


def _bessel_i_series(nu, z, config):
    q = 0.25 * z * z
    with np.errstate(divide="ignore"):
        lead = np.where(z > 0, np.exp(nu * np.log(np.where(z > 0, z, 1.0) / 2.0)), 0.0)
    if nu == 0:
        lead = np.ones_like(z)
    elif nu < 0:
        lead = np.where(z > 0, lead, np.inf)
    term = lead * rgamma(nu + 1.0)
    total = term.copy()
    comp = np.zeros_like(z)
    kmin = np.sqrt(q)
    for k in range(config.max_terms):
        term = term * q / ((k + 1.0) * (k + 1.0 + nu))
        # Neumaier compensated accumulation
        t = total + term
        comp += np.where(np.abs(total) >= np.abs(term), (total - t) + term, (term - t) + total)
        total = t
        done = (np.abs(term) <= config.series_tol * 1e-3 * np.abs(total)) & (k + 1 > kmin)
        if np.all(done | ~np.isfinite(total)):
            break
    else:
        raise ConvergenceError(f"I_{nu} series did not converge in {config.max_terms} terms")
    return total + comp


def bessel_i(nu, z, config=None):
    """Modified Bessel function of the first kind ``I_nu(z)`` for real z >= 0.

    Parameters
    ----------
    nu : float
        Real order.  Negative integers use ``I_{-n} = I_n``.
    z : float or array_like
        Non-negative argument.
    config : SpecFunConfig, optional

    Raises
    ------
    ValueError
        For negative ``z``.
    ConvergenceError
        If the ascending series exceeds ``max_terms``.
    """
    config = config or DEFAULT_CONFIG
    scalar = np.ndim(z) == 0
    z = np.atleast_1d(np.asarray(z, dtype=float))
    if np.any(z < 0):
        raise ValueError("bessel_i requires z >= 0")
    nu = float(nu)
    if nu < 0 and nu.is_integer():
        nu = -nu
    out = np.empty_like(z)
    small = z <= config.asym_switch
    if small.any():
        out[small] = _bessel_i_series(nu, z[small], config)
    if (~small).any():
        zb = z[~small]
        _, s_i = _hankel_coeffs(nu, zb, config.max_terms)
        with np.errstate(over="ignore"):
            out[~small] = np.exp(zb) / np.sqrt(2.0 * np.pi * zb) * s_i
    return float(out[0]) if scalar else out


def bessel_k(nu, z, config=None):
    """Modified Bessel function of the second kind ``K_nu(z)`` for z > 0.

    The order enters only through ``|nu|``, so ``K_nu = K_{-nu}`` holds
    bit for bit.
    """
    config = config or DEFAULT_CONFIG
    scalar = np.ndim(z) == 0
    z = np.atleast_1d(np.asarray(z, dtype=float))
    if np.any(z <= 0):
        raise ValueError("bessel_k requires z > 0")
    nu = abs(float(nu))
    out = np.empty_like(z)
    small = z <= config.asym_switch
    for idx in np.flatnonzero(small):
        out.flat[idx] = _bessel_k_temme(nu, z.flat[idx])[0]
    if (~small).any():
        zb = z[~small]
        s_k, _ = _hankel_coeffs(nu, zb, config.max_terms)
        out[~small] = np.sqrt(np.pi / (2.0 * zb)) * np.exp(-zb) * s_k
    return float(out[0]) if scalar else out


def bessel_k_reflection(nu, z, config=None):
    r"""``K_nu`` through :math:`\frac{\pi}{2}(I_{-\nu}-I_\nu)/\sin(\nu\pi)`.

    Within ``integer_nu_eps`` of an integer order the result is the average
    of the formula at ``nu - eps`` and ``nu + eps``, which costs about
    ``eps``-relative accuracy.  The difference of the two I's cancels like
    ``e^{-2z}``, so this route is only meaningful for small ``z``.
    """
    config = config or DEFAULT_CONFIG
    nu = abs(float(nu))
    if np.any(np.asarray(z) <= 0):
        raise ValueError("bessel_k_reflection requires z > 0")

    def formula(v):
        return 0.5 * np.pi * (bessel_i(-v, z, config) - bessel_i(v, z, config)) / _sinpi(v)

    nearest = round(nu)
    if abs(nu - nearest) < config.integer_nu_eps:
        eps = config.integer_nu_eps
        lo = abs(nearest - eps)
        return 0.5 * (formula(lo) + formula(nearest + eps))
    return formula(nu)


def bessel_i_prime(nu, z, config=None):
    """``d/dz I_nu(z) = I_{nu+1}(z) + (nu/z) I_nu(z)``."""
    z = np.asarray(z, dtype=float)
    ip1 = bessel_i(nu + 1, z, config)
    if nu == 0:
        return ip1
    return ip1 + nu / z * bessel_i(nu, z, config)


def bessel_i_prime_alt(nu, z, config=None):
    """``d/dz I_nu(z) = I_{nu-1}(z) - (nu/z) I_nu(z)``."""
    z = np.asarray(z, dtype=float)
    return bessel_i(nu - 1, z, config) - nu / z * bessel_i(nu, z, config)


def bessel_k_prime(nu, z, config=None):
    """``d/dz K_nu(z) = -K_{nu+1}(z) + (nu/z) K_nu(z)``."""
    z = np.asarray(z, dtype=float)
    return -bessel_k(nu + 1, z, config) + nu / z * bessel_k(nu, z, config)


def bessel_k_prime_alt(nu, z, config=None):
    """``d/dz K_nu(z) = -K_{nu-1}(z) - (nu/z) K_nu(z)``."""
    z = np.asarray(z, dtype=float)
    return -bessel_k(nu - 1, z, config) - nu / z * bessel_k(nu, z, config)


# ---------------------------------------------------------------------------
# Kummer confluent hypergeometric function
# ---------------------------------------------------------------------------

def _kummer_series(a, c, z, config):
    """Sum of (a)_k/(c)_k z^k/k! in double-double arithmetic."""
    zdd = dd.ComplexDD.from_complex(z)
    term = dd.ComplexDD.from_complex(np.ones(z.shape, dtype=complex))
    total = dd.ComplexDD.from_complex(np.ones(z.shape, dtype=complex))
    absz = np.abs(z)
    zeros = np.zeros(())
    for k in range(config.max_terms):
        ah, al = dd.two_sum(np.float64(a), np.float64(k))
        ch, cl = dd.two_sum(np.float64(c), np.float64(k))
        if ch == 0 and cl == 0:
            raise PoleError(f"Pochhammer (c)_k vanishes for c = {c}")
        dh, dl = dd.mul(ch, cl, np.float64(k + 1), zeros)
        rh, rl = dd.div(ah, al, dh, dl)
        term = (term * zdd).scale(rh, rl)
        total = total + term
        if k + 1 > absz.max() * abs(rh) * 1.0001 or k > absz.max():
            mag = term.abs_hi()
            if np.all(mag <= config.series_tol * 1e-3 * total.abs_hi()):
                break
            if np.all(mag == 0):
                break
    else:
        raise ConvergenceError(f"Kummer series did not converge in {config.max_terms} terms")
    return total.to_complex()


def h_asym(a, c, z, terms=None):
    r"""Asymptotic sums for the two waves hidden in :math:`\Phi(a, c; z)`.

    Returns ``(H_plus, H_minus)`` with

    .. math::
        H_+ \sim z^{a-c}\Big[1 + \sum_k \frac{(c-a)_k (1-a)_k}{k!} z^{-k}\Big],
        \qquad
        H_- \sim (e^{-i\pi}z)^{-a}\Big[1 + \sum_k (-1)^k
        \frac{(a)_k (1+a-c)_k}{k!} z^{-k}\Big].

    Each sum is cut at ``terms`` (default ``floor(|z|)``) or at its smallest
    term, whichever comes first.
    """
    z = np.asarray(z, dtype=complex)
    if np.any(z.imag <= 0) and not np.all(np.abs(z) == 0):
        arg = np.angle(z)
        if np.any((arg <= 0) | (arg >= np.pi)):
            raise ValueError("h_asym needs 0 < arg z < pi")
    nmax = int(np.floor(np.min(np.abs(z)))) if terms is None else int(terms)
    zinv = 1.0 / z
    sp = np.ones_like(z)
    sm = np.ones_like(z)
    tp = np.ones_like(z)
    tm = np.ones_like(z)
    lastp = np.full(z.shape, np.inf)
    lastm = np.full(z.shape, np.inf)
    livep = np.ones(z.shape, dtype=bool)
    livem = np.ones(z.shape, dtype=bool)
    for k in range(1, nmax + 1):
        tp = tp * (c - a + k - 1) * (k - a) / k * zinv
        tm = -tm * (a + k - 1) * (a - c + k) / k * zinv
        magp, magm = np.abs(tp), np.abs(tm)
        livep &= magp < lastp
        livem &= magm < lastm
        sp = np.where(livep, sp + tp, sp)
        sm = np.where(livem, sm + tm, sm)
        livep &= magp > 1e-17 * np.abs(sp)
        livem &= magm > 1e-17 * np.abs(sm)
        lastp, lastm = magp, magm
        if not (livep.any() or livem.any()):
            break
    hp = z ** (a - c) * sp
    hm = (-z) ** (-a) * sm
    return hp, hm


def _kummer_upper(a, c, z, config):
    """Phi for Im z >= 0 (principal sector), any modulus."""
    out = np.empty_like(z)
    small = np.abs(z) <= config.asym_switch
    real_big = (~small) & (z.imag == 0)
    asym = (~small) & ~real_big
    if small.any():
        out[small] = _kummer_series(a, c, z[small], config)
    if real_big.any():
        zr = z[real_big]
        pos = zr.real > 0
        vals = np.empty_like(zr)
        if pos.any():
            vals[pos] = _kummer_series(a, c, zr[pos], config)
        if (~pos).any():
            # Kummer transformation moves the argument to the positive axis
            vals[~pos] = np.exp(zr[~pos]) * _kummer_series(c - a, c, -zr[~pos], config)
        out[real_big] = vals
    if asym.any():
        za = z[asym]
        hp, hm = h_asym(a, c, za)
        gc = gamma(c)
        out[asym] = gc * rgamma(a) * np.exp(za) * hp + gc * rgamma(c - a) * hm
    return out


def kummer_phi(a, c, z, config=None):
    r"""Confluent hypergeometric function :math:`\Phi(a, c; z) = {}_1F_1(a; c; z)`.

    Parameters
    ----------
    a, c : float
        Real parameters; ``c`` must not be 0, -1, -2, ...
    z : complex or array_like
        Argument.  Large ``|z|`` off the real axis goes through
        :func:`h_asym`; the lower half-plane uses conjugate symmetry.

    Returns
    -------
    complex or ndarray of complex
    """
    config = config or DEFAULT_CONFIG
    KummerArgs(a, c, 0j)
    scalar = np.ndim(z) == 0
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    out = np.empty_like(z)
    lower = z.imag < 0
    if (~lower).any():
        out[~lower] = _kummer_upper(a, c, z[~lower], config)
    if lower.any():
        out[lower] = np.conj(_kummer_upper(a, c, np.conj(z[lower]), config))
    return complex(out[0]) if scalar else out


def kummer_phi_deriv(a, c, z, order=1, config=None):
    """n-th z-derivative: ``(a)_n/(c)_n * Phi(a+n, c+n; z)``."""
    if order < 1 or int(order) != order:
        raise ValueError("order must be a positive integer")
    order = int(order)
    return pochhammer(a, order) / pochhammer(c, order) * kummer_phi(a + order, c + order, z, config)


def kummer_phi_deriv_contiguous(a, c, z, config=None):
    """First derivative via ``(1-c)/z * [Phi(a,c;z) - Phi(a,c-1;z)]`` (z != 0)."""
    z = np.asarray(z, dtype=complex)
    if np.any(z == 0):
        raise ValueError("contiguous derivative formula is singular at z = 0")
    return (1.0 - c) / z * (kummer_phi(a, c, z, config) - kummer_phi(a, c - 1.0, z, config))


# ---------------------------------------------------------------------------
# Identity self-test
# ---------------------------------------------------------------------------

def _rel(lhs, rhs):
    lhs, rhs = complex(lhs), complex(rhs)
    scale = max(abs(rhs), 1e-300)
    return abs(lhs - rhs) / scale


def selftest(config=None):
    """Run the identity suite and return one dict per check.

    Keys: identity, nu_or_a, z, lhs, rhs, rel_err, pass.
    """
    config = config or DEFAULT_CONFIG
    rows = []

    def record(identity, param, z, lhs, rhs, tol):
        err = _rel(lhs, rhs)
        rows.append(dict(identity=identity, nu_or_a=param, z=z, lhs=lhs, rhs=rhs,
                         rel_err=err, **{"pass": bool(err <= tol)}))

    zgrid = np.geomspace(0.01, 50.0, 25)
    for nu in (0.0, 0.25, 1.0 / 3.0, 0.5, 0.9):
        lhs = (bessel_i(nu, zgrid, config) * bessel_k(nu + 1, zgrid, config)
               + bessel_i(nu + 1, zgrid, config) * bessel_k(nu, zgrid, config))
        for z, l in zip(zgrid, lhs):
            record("wronskian_IK", nu, float(z), float(l), 1.0 / z, 1e-10)
    for nu, z in ((0.3, 1.7), (0.25, 0.8), (0.75, 12.0), (0.4, 45.0)):
        record("recurrence_I", nu, z, bessel_i_prime(nu, z, config),
               bessel_i_prime_alt(nu, z, config), 1e-10)
        record("recurrence_K", nu, z, bessel_k_prime(nu, z, config),
               bessel_k_prime_alt(nu, z, config), 1e-10)
    for nu, z in ((0.75, 2.0), (1.0 / 3.0, 0.5), (0.6, 40.0)):
        record("symmetry_K", nu, z, bessel_k(nu, z, config), bessel_k(-nu, z, config), 0.0)
    z0 = 1e-6
    for nu in (0.25, 0.5, 0.75):
        record("limit_I_small_z", nu, z0, bessel_i(nu, z0, config),
               (z0 / 2) ** nu / gamma(nu + 1), 1e-4)
        record("limit_K_small_z", nu, z0, bessel_k(nu, z0, config),
               0.5 * gamma(nu) * (z0 / 2) ** (-nu), 1e-4)
    for nu in (0.25, 0.5, 0.75):
        z = 100.0
        record("asymptotic_K", nu, z, bessel_k(nu, z, config) * math.sqrt(2 / math.pi * z) * math.exp(z),
               1.0, 1e-2)
        record("asymptotic_I", nu, z, bessel_i(nu, z, config) * math.sqrt(2 * math.pi * z) * math.exp(-z),
               1.0, 1e-2)
    for a, c in ((0.25, 0.5), (0.75, 1.5), (1.0 / 3.0, 2.0 / 3.0), (1.25, 1.5)):
        record("kummer_at_zero", a, 0.0, kummer_phi(a, c, 0.0, config), 1.0, 0.0)
        for z in (1.3j, 7.0j, 25.0j, 0.8):
            record("kummer_derivative_relations", a, str(z),
                   kummer_phi_deriv(a, c, z, 1, config),
                   kummer_phi_deriv_contiguous(a, c, z, config), 1e-10)
    return rows
