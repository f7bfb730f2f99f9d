r"""Fourier symbols of the linear Tricomi propagator.

Each Fourier mode of :math:`u_{tt} - t^{2m}\Delta u = 0` solves
:math:`\hat u'' + t^{2m} r^2 \hat u = 0`, ``r = |xi|``.  Its fundamental pair
with data ``(1, 0)`` and ``(0, 1)`` at ``t = 0`` is

.. math::
    V_1 = e^{-z/2}\Phi(\mu, 2\mu; z), \qquad
    V_2 = t\,e^{-z/2}\Phi(1-\mu, 2-2\mu; z), \qquad z = 2i\varphi(t) r,

and the Duhamel kernel is :math:`W_2 - W_1` with
:math:`W_1 = V_1(t)V_2(s)`, :math:`W_2 = V_2(t)V_1(s)`.

Arrays of ``t`` and ``r`` broadcast against each other.  Below ``m = 1e-8``
the wave closed forms ``cos(tr)``, ``sin(tr)/r`` are used.
"""

from dataclasses import dataclass

import numpy as np

from tricomi_lab import specfun as sf
from tricomi_lab.integrate import dp45

M_WAVE = 1e-8


@dataclass(frozen=True)
class ModeSymbol:
    """One Fourier mode ``(m, t, r)``."""

    m: float
    t: float
    r: float

    def __post_init__(self):
        if self.m < 0 or self.t < 0 or self.r < 0:
            raise ValueError("m, t and r must be non-negative")

    @property
    def mu(self):
        return self.m / (2 * (self.m + 1))

    @property
    def phase(self):
        return self.t ** (self.m + 1) / (self.m + 1)

    @property
    def z(self):
        return 2j * self.phase * self.r


def _grid(m, t, r):
    if m < 0:
        raise ValueError("m must be non-negative")
    t = np.asarray(t, dtype=float)
    r = np.asarray(r, dtype=float)
    if np.any(t < 0) or np.any(r < 0):
        raise ValueError("t and r must be non-negative")
    t, r = np.broadcast_arrays(t, r)
    return t, r, t ** (m + 1) / (m + 1)


def _ret(x, shape):
    return complex(x) if shape == () else x


def _kummer(a, c, z):
    return sf.kummer_phi(a, c, z.ravel()).reshape(z.shape)


def symbols(m, t, r):
    """Return ``(V1, V2, dtV1, dtV2)`` as complex arrays."""
    t, r, ph = _grid(m, t, r)
    shape = t.shape
    if m < M_WAVE:
        tr = t * r
        v1 = np.cos(tr).astype(complex)
        v2 = np.where(r > 0, np.sin(tr) / np.where(r > 0, r, 1.0), t).astype(complex)
        d1 = (-r * np.sin(tr)).astype(complex)
        d2 = np.cos(tr).astype(complex)
        return v1, v2, d1, d2
    mu = m / (2 * (m + 1))
    z = 2j * ph * r
    rot = np.exp(-0.5 * z)
    phi_a = _kummer(mu, 2 * mu, z)
    phi_b = _kummer(1 - mu, 2 - 2 * mu, z)
    v1 = rot * phi_a
    v2 = t * rot * phi_b
    # ((m+1)/2) t^{-1} z = i t^m r, which is 0 at t = 0 for m > 0
    d1 = 1j * t ** m * r * rot * (_kummer(mu + 1, 2 * mu + 1, z) - phi_a)
    d2 = rot * (_kummer(1 - mu, 1 - 2 * mu, z) - 0.5 * (m + 1) * z * phi_b)
    return v1, v2, d1, d2


def v1_symbol(ms):
    return _ret(symbols(ms.m, ms.t, ms.r)[0], ())


def v2_symbol(ms):
    return _ret(symbols(ms.m, ms.t, ms.r)[1], ())


def dt_v1_symbol(ms):
    return _ret(symbols(ms.m, ms.t, ms.r)[2], ())


def dt_v2_symbol(ms):
    return _ret(symbols(ms.m, ms.t, ms.r)[3], ())


def mode_wronskian(m, t, r):
    """``V1 dtV2 - V2 dtV1``, identically 1."""
    v1, v2, d1, d2 = symbols(m, t, r)
    return v1 * d2 - v2 * d1


def w_symbols(m, s, t, r):
    """Composed symbols ``(W1, W2, dtW1, dtW2)`` for ``0 < s <= t``.

    Raises
    ------
    ValueError
        If any ``s > t``.
    """
    s = np.asarray(s, dtype=float)
    t = np.asarray(t, dtype=float)
    if np.any(s > t):
        raise ValueError("w_symbols requires s <= t")
    if np.any(s <= 0):
        raise ValueError("w_symbols requires s > 0")
    v1t, v2t, d1t, d2t = symbols(m, t, r)
    v1s, v2s, _, _ = symbols(m, s, r)
    out = (v1t * v2s, v2t * v1s, d1t * v2s, d2t * v1s)
    if np.ndim(v1t * v1s) == 0:
        return tuple(complex(x) for x in out)
    return out


def duhamel_kernel(m, s, t, r):
    """``(W2 - W1, dt(W2 - W1))``: response at ``t`` to a unit impulse in u_t at ``s``."""
    w1, w2, dw1, dw2 = w_symbols(m, s, t, r)
    return w2 - w1, dw2 - dw1


# ---------------------------------------------------------------------------
# Numerical oracle for the mode ODE
# ---------------------------------------------------------------------------

def _taylor_seed(m, r, t0, offset):
    """Taylor data at ``t0`` of the solution ``t^offset + ...`` of y'' = -t^{2m} r^2 y."""
    r2 = np.asarray(r, dtype=float) ** 2
    e = float(offset)
    coef = np.ones_like(r2)
    y = coef * t0 ** e
    yp = coef * (e * t0 ** (e - 1) if e > 0 else 0.0)
    j = 0
    while True:
        j += 1
        e = offset + j * (2 * m + 2)
        coef = -r2 * coef / (e * (e - 1))
        term = coef * t0 ** e
        y = y + term
        yp = yp + coef * e * t0 ** (e - 1)
        if j >= 4 and np.all(np.abs(term) <= 1e-18 * np.maximum(np.abs(y), 1e-300)):
            return y, yp


def mode_oracle(m, r, t_out, tol=1e-11):
    """Integrate the mode ODE for the fundamental pair.

    Parameters
    ----------
    m : float
    r : float or array_like
        Frequencies, integrated together as a batch.
    t_out : float or increasing sequence
        Output times (> 0).  The start is ``t0 = min(0.01, t_out[0]/100)``
        with data taken from the Taylor expansions of both solutions.
    tol : float
        Relative local error per step.

    Returns
    -------
    tuple of ndarray
        ``(y1, y2, y1', y2')`` each shaped ``(len(t_out), len(r))``.
    """
    r = np.atleast_1d(np.asarray(r, dtype=float))
    times = np.atleast_1d(np.asarray(t_out, dtype=float))
    if np.any(times <= 0):
        raise ValueError("output times must be positive")
    t0 = min(0.01, times[0] / 100)
    y1, y1p = _taylor_seed(m, r, t0, 0)
    y2, y2p = _taylor_seed(m, r, t0, 1)
    r2 = r * r

    def rhs(t, y):
        w = -(t ** (2 * m)) * r2
        return np.array([y[1], w * y[0], y[3], w * y[2]])

    sol = dp45(rhs, t0, np.array([y1, y1p, y2, y2p]), times, tol=tol)
    return sol[:, 0], sol[:, 2], sol[:, 1], sol[:, 3]


# ---------------------------------------------------------------------------
# Pointwise symbol bounds on the L^2 line
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SymbolBoundSpec:
    """A weighted symbol bound: kind, derivative weight sigma, and ``m``."""

    kind: str
    sigma: float
    m: float

    def __post_init__(self):
        lo, hi = admissible_sigma(self.kind, self.m)
        if not lo - 1e-14 <= self.sigma <= hi + 1e-14:
            raise ValueError(f"sigma = {self.sigma} outside [{lo}, {hi}] for {self.kind}")


KINDS = ("V1", "V2", "dtV1", "dtV2", "W1", "W2", "dtW1", "dtW2", "corW", "cordtW")


def admissible_sigma(kind, m):
    mu = m / (2 * (m + 1))
    table = {
        "V1": (-mu, 0.0),
        "V2": (-1 + mu, 0.0),
        "dtV1": (1 - mu, 1.0),
        "dtV2": (mu, np.inf),
        "W1": (-1.0, -mu),
        "W2": (-1.0, -1 + mu),
        "dtW1": (0.0, 1 - mu),
        "dtW2": (0.0, 0.0),
        # unit-weight forms r (ts)^{m/2}|W_j| and (s/t)^{m/2}|dt W_j|
        "corW": (-1.0, -1.0),
        "cordtW": (0.0, 0.0),
    }
    if kind not in table:
        raise ValueError(f"unknown symbol kind {kind!r}")
    return table[kind]


def _smoothstep(x):
    x = np.clip(x, 0.0, 1.0)
    return x * x * x * (10 - 15 * x + 6 * x * x)


def frequency_split(m, s, t, r):
    """Zone windows ``(X0(phi(t) r), X1(phi(s) r), X2(phi(s) r))``, summing to 1.

    ``X0`` is 1 below 1/2 and 0 above 3/4; ``X2`` is 0 below 3/4 and 1 above 1;
    ``X1`` fills the rest.  The transitions are quintic smoothsteps.
    """
    s = np.asarray(s, dtype=float)
    t = np.asarray(t, dtype=float)
    ps = s ** (m + 1) / (m + 1) * r
    pt = t ** (m + 1) / (m + 1) * r
    x0 = 1 - _smoothstep((np.abs(pt) - 0.5) * 4)
    x2 = _smoothstep((np.abs(ps) - 0.75) * 4)
    return x0, 1 - x0 - x2, x2


class SymbolTable:
    """All four V symbols on ``times x r`` evaluated once for reuse across bounds."""

    def __init__(self, m, times, r_grid):
        self.m = float(m)
        self.times = np.unique(np.asarray(times, dtype=float))
        self.r = np.asarray(r_grid, dtype=float)
        if np.any(self.times <= 0) or np.any(self.r <= 0):
            raise ValueError("grids must be positive")
        self.v1, self.v2, self.d1, self.d2 = symbols(self.m, self.times[:, None], self.r[None, :])

    def rows(self, t):
        idx = np.searchsorted(self.times, t)
        if np.any(idx >= len(self.times)) or np.any(self.times[np.minimum(idx, len(self.times) - 1)] != t):
            raise ValueError("requested time not in the table")
        return idx


def _bound_quantity(kind, sigma, m, tab, t, s):
    r = tab.r
    it = tab.rows(t)
    if kind in ("V1", "V2", "dtV1", "dtV2"):
        tt = t[:, None]
        rr = r[None, :]
        one_r = np.sqrt(1 + rr * rr)
        if kind == "V1":
            return rr ** -sigma * np.abs(tab.v1[it]) * tt ** (-sigma * (m + 1))
        if kind == "V2":
            return rr ** -sigma * np.abs(tab.v2[it]) / tt ** (sigma * (m + 1) + 1)
        if kind == "dtV1":
            return one_r ** -sigma * np.abs(tab.d1[it]) / tt ** (sigma * (m + 1) - 1)
        return one_r ** -sigma * np.abs(tab.d2[it]) / np.sqrt(1 + tt * tt) ** (sigma * (m + 1))
    is_ = tab.rows(s)
    tt = t[:, None, None]
    ss = s[None, :, None]
    rr = r[None, None, :]
    v1t, v2t, d1t, d2t = (a[it][:, None, :] for a in (tab.v1, tab.v2, tab.d1, tab.d2))
    v1s, v2s = (a[is_][None, :, :] for a in (tab.v1, tab.v2))
    ratio = tt / ss
    if kind == "W1":
        q = rr ** -sigma * np.abs(v1t * v2s) / (ratio ** (-m / 2) * ss ** (1 + sigma * (m + 1)))
    elif kind == "W2":
        q = rr ** -sigma * np.abs(v2t * v1s) / (ratio ** (-m / 2) * ss ** (1 + sigma * (m + 1)))
    elif kind == "dtW1":
        q = rr ** -sigma * np.abs(d1t * v2s) / (ratio ** (m / 2) * ss ** (sigma * (m + 1)))
    elif kind == "dtW2":
        q = np.abs(d2t * v1s) / ratio ** (m / 2)
    elif kind == "corW":
        q = rr * np.maximum(np.abs(v1t * v2s), np.abs(v2t * v1s)) * (tt * ss) ** (m / 2)
    elif kind == "cordtW":
        q = np.maximum(np.abs(d1t * v2s), np.abs(d2t * v1s)) * ratio ** (-m / 2)
    else:
        raise AssertionError(kind)
    return np.where(ss <= tt, q, 0.0)


def symbol_bound_check(bound, t_grid, r_grid, s_grid=None, window=None, table=None):
    """Worst-case constant of a weighted symbol bound over a grid.

    Parameters
    ----------
    bound : SymbolBoundSpec
    t_grid, r_grid : array_like
        Positive sample points.
    s_grid : array_like, optional
        Needed for the W kinds; only pairs ``s <= t`` count.
    window : {None, 'X0', 'X1', 'X2'}
        Restrict the sup to one frequency zone (W kinds only).
    table : SymbolTable, optional
        Precomputed symbols covering all requested times and ``r_grid``.

    Returns
    -------
    float
        ``max |r^{-sigma} symbol| / (claimed power of t and s)``.
    """
    kind, sigma, m = bound.kind, bound.sigma, bound.m
    t = np.asarray(t_grid, dtype=float)
    w_kind = not kind.startswith(("V", "dtV"))
    if w_kind and s_grid is None:
        raise ValueError(f"{kind} needs an s grid")
    s = None if s_grid is None else np.asarray(s_grid, dtype=float)
    if table is None:
        times = t if s is None else np.union1d(t, s)
        table = SymbolTable(m, times, r_grid)
    q = _bound_quantity(kind, sigma, m, table, t, s if w_kind else None)
    if window is not None:
        if not w_kind:
            raise ValueError("frequency windows apply to the W kinds")
        zones = dict(zip(("X0", "X1", "X2"),
                         frequency_split(m, s[None, :, None], t[:, None, None], table.r[None, None, :])))
        q = q * zones[window]
    return float(np.max(q))


def bound_report(m, t_grid, r_grid, cases=None):
    """Constants for every case on one grid, sharing a single symbol table."""
    t = np.asarray(t_grid, dtype=float)
    table = SymbolTable(m, t, r_grid)
    cases = default_bound_cases(m) if cases is None else cases
    return [(c.kind, c.sigma, symbol_bound_check(c, t, table.r, s_grid=t, table=table)) for c in cases]


def default_bound_cases(m):
    """Every kind at each finite endpoint of its admissible sigma range."""
    cases = []
    for kind in KINDS:
        lo, hi = admissible_sigma(kind, m)
        for sigma in sorted({lo, hi if np.isfinite(hi) else lo}):
            cases.append(SymbolBoundSpec(kind, float(sigma), m))
    return cases
