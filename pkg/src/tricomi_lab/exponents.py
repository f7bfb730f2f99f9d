r"""Critical exponents and lifespan scaling exponents.

For dimension ``n``, degeneracy ``m`` and power ``p``:

* ``p_T(n, m) = 1 + 2/((m+1)(n-1) - m)`` for ``n >= 2`` (``+inf`` for ``n = 1``)
* ``gamma_T(n, m; p) = 2 - [(m+1)(n-1) - m](p-1)``, vanishing at ``p_T``
* ``p_G(n) = 1 + 2/(n-1)`` (``+inf`` for ``n = 1``)
* ``a(m) = [2(m+1)]^{m/(m+1)} Gamma(1/2+mu) / Gamma(1/2-mu)``, the weight on
  ``f`` in the data positivity condition ``a(m) f + g >= 0``.

Below ``p_T`` the lifespan obeys ``T_eps <~ eps^{-2(p-1)/gamma_T}``; at ``p_T``
it is exponential in ``eps^{-(p-1)}``.  In one dimension the lower bound
``eps^{-(1/(p-1) + m/2)^{-1}}`` has the same exponent.
"""

import math
from dataclasses import dataclass

from tricomi_lab import specfun as sf

CRITICAL_BAND = 1e-9


def _mu(m):
    return m / (2.0 * (m + 1.0))


def p_T(n, m):
    if n < 1:
        raise ValueError("n must be >= 1")
    if n == 1:
        return math.inf
    return 1.0 + 2.0 / ((m + 1.0) * (n - 1) - m)


def gamma_T(n, m, p):
    return 2.0 - ((m + 1.0) * (n - 1) - m) * (p - 1.0)


def p_G(n):
    if n < 1:
        raise ValueError("n must be >= 1")
    return math.inf if n == 1 else 1.0 + 2.0 / (n - 1)


def a_coeff(m):
    mu = _mu(m)
    return (2.0 * (m + 1.0)) ** (m / (m + 1.0)) * sf.gamma(0.5 + mu) / sf.gamma(0.5 - mu)


@dataclass(frozen=True)
class ExponentParams:
    n: int
    m: float
    p: float
    mu: float
    p_T: float
    gamma_T: float
    p_G: float
    a: float
    critical: bool
    upper_exponent: float
    lower_exponent_1d: float

    def predicted_slope(self):
        """Slope of ln T_eps against ln eps implied by the upper bound."""
        return -self.upper_exponent

    def as_dict(self):
        return {k: getattr(self, k) for k in self.__dataclass_fields__}


def exponents(n, m, p):
    """All derived exponents for ``(n, m, p)``.

    ``critical`` is set when ``p`` lies within a relative band of ``1e-9``
    of ``p_T``; the power-law ``upper_exponent`` is then ``nan``, since the
    bound is exponential.  Above ``p_T`` it is ``nan`` as well (no blow-up
    bound applies).
    """
    if n < 1 or int(n) != n:
        raise ValueError("n must be a positive integer")
    if m < 0:
        raise ValueError("m must be non-negative")
    if not p > 1:
        raise ValueError("p must exceed 1")
    n = int(n)
    pt = p_T(n, m)
    gt = gamma_T(n, m, p)
    critical = math.isfinite(pt) and abs(p - pt) <= CRITICAL_BAND * pt
    if critical or gt <= 0:
        upper = math.nan
    else:
        upper = 2.0 * (p - 1.0) / gt
    lower = 1.0 / (1.0 / (p - 1.0) + m / 2.0)
    return ExponentParams(n=n, m=float(m), p=float(p), mu=_mu(m), p_T=pt, gamma_T=gt,
                          p_G=p_G(n), a=a_coeff(m), critical=critical,
                          upper_exponent=upper, lower_exponent_1d=lower)
