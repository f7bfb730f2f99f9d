r"""Pseudospectral solver for :math:`u_{tt} - t^{2m}\Delta u = |u_t|^p` on a torus.

The box ``[-L, L)^dim`` is periodic; finite propagation speed keeps the
solution inside the cone ``|x| <= 1 + t^{m+1}/(m+1)``, so as long as the cone
stays well inside the box the torus is indistinguishable from free space.

Three solution routes share the grid:

* :func:`linear_evolve` applies the exact propagator symbols mode by mode;
* :func:`nonlinear_step` / :func:`run_until_blowup` march the first-order
  system ``u' = v, v' = t^{2m}Lap u + |v|^p`` with classical RK4 (the first
  step from ``t = 0`` uses the exact propagator plus a Gauss-Legendre
  Duhamel correction);
* :func:`duhamel_solve` iterates the integral equation
  ``u = V1 f + V2 g + int_0^t (W2 - W1) |u_t|^p ds`` to a fixed point.
"""

import hashlib
import json
import math
import time
from dataclasses import asdict, dataclass, field
from functools import cached_property

import numpy as np

from tricomi_lab import multiplier
from tricomi_lab.exponents import a_coeff

RUNNING = "running"
BLOWN_UP = "blown_up"
HORIZON = "horizon_reached"
UNDERFLOW = "step_underflow"

SCHEME_VERSION = "rk4-exactfirst-v1"
SUPPORT_TOL = 1e-5
FLOOR_FACTOR = 10.0

_DIM_LIMITS = {1: (64, 4096), 2: (64, 512), 3: (16, 128)}


def cone_radius(m, t):
    """``gamma(t) = 1 + t^{m+1}/(m+1)``."""
    return 1.0 + t ** (m + 1) / (m + 1)


@dataclass(frozen=True)
class SpectralGrid:
    """Uniform periodic grid on ``[-L, L)^dim`` with ``n`` points per axis."""

    dim: int
    n: int
    L: float

    def __post_init__(self):
        if self.dim not in _DIM_LIMITS:
            raise ValueError("dim must be 1, 2 or 3")
        lo, hi = _DIM_LIMITS[self.dim]
        if not (lo <= self.n <= hi) or self.n & (self.n - 1):
            raise ValueError(f"n must be a power of two in [{lo}, {hi}] for dim {self.dim}")
        if not self.L > 2:
            raise ValueError("L must exceed 2")

    @property
    def dx(self):
        return 2.0 * self.L / self.n

    @property
    def shape(self):
        return (self.n,) * self.dim

    @property
    def cell_volume(self):
        return self.dx ** self.dim

    @cached_property
    def x1d(self):
        return -self.L + self.dx * np.arange(self.n)

    @cached_property
    def coords(self):
        return np.meshgrid(*([self.x1d] * self.dim), indexing="ij", sparse=True)

    @cached_property
    def radius(self):
        return np.sqrt(sum(c * c for c in self.coords))

    @cached_property
    def wavenumbers(self):
        """Broadcastable wavenumber arrays on the real-FFT layout."""
        full = 2 * np.pi * np.fft.fftfreq(self.n, d=self.dx)
        half = 2 * np.pi * np.fft.rfftfreq(self.n, d=self.dx)
        axes = [full] * (self.dim - 1) + [half]
        return np.meshgrid(*axes, indexing="ij", sparse=True)

    @cached_property
    def k2(self):
        return sum(k * k for k in self.wavenumbers)

    @cached_property
    def kabs(self):
        return np.sqrt(self.k2)

    @cached_property
    def dealias_mask(self):
        """Two-thirds rule: keep integer wavenumbers ``|j| <= n/3`` on every axis."""
        kcut = (self.n / 3.0) * np.pi / self.L
        mask = np.ones(self.k2.shape, dtype=bool)
        for k in self.wavenumbers:
            mask &= np.abs(k) <= kcut * (1 + 1e-12)
        return mask

    @cached_property
    def _unique_k(self):
        vals, inverse = np.unique(self.kabs, return_inverse=True)
        return vals, inverse.reshape(self.kabs.shape)

    def fft(self, u):
        return np.fft.rfftn(u, axes=tuple(range(self.dim)))

    def ifft(self, uh):
        return np.fft.irfftn(uh, s=self.shape, axes=tuple(range(self.dim)))

    def derivative(self, u, axis=0):
        return self.ifft(1j * self.wavenumbers[axis] * self.fft(u))

    def laplacian(self, u):
        return self.ifft(-self.k2 * self.fft(u))

    def integrate(self, f):
        return float(np.sum(f) * self.cell_volume)

    def describe(self):
        return {"dim": self.dim, "n": self.n, "L": self.L}


def make_grid(dim, n_points, L):
    return SpectralGrid(int(dim), int(n_points), float(L))


def symbols_on_grid(grid, m, t):
    """``(V1, V2, dtV1, dtV2)`` sampled on the grid's ``|k|`` (real parts)."""
    vals, inverse = grid._unique_k
    out = multiplier.symbols(m, float(t), vals)
    return tuple(np.real(s)[inverse] for s in out)


# ---------------------------------------------------------------------------
# Initial data
# ---------------------------------------------------------------------------

def bump(r):
    """``exp(-1/(1 - r^2))`` for ``r < 1``, else 0."""
    r = np.asarray(r, dtype=float)
    inside = r < 1
    out = np.zeros(r.shape)
    out[inside] = np.exp(-1.0 / (1.0 - r[inside] ** 2))
    return out


@dataclass
class CauchyData:
    """Sampled data ``(u, u_t)(0) = (eps f, eps g)``; ``f``, ``g`` are stored already scaled."""

    profile: str
    eps: float
    amp_f: float
    amp_g: float
    f: np.ndarray = field(repr=False)
    g: np.ndarray = field(repr=False)
    support_radius: float = 1.0

    def describe(self):
        return {"profile": self.profile, "eps": self.eps, "amp_f": self.amp_f, "amp_g": self.amp_g}


class DataConditionError(ValueError):
    """Initial data violate the sign or support hypotheses."""


def sample_data(grid, eps, m, amp_f=0.0, amp_g=math.e, profile="bump"):
    """Sample bump data ``f = amp_f * bump``, ``g = amp_g * bump`` scaled by ``eps``.

    The default ``amp_g = e`` makes ``max g = 1``.

    Raises
    ------
    DataConditionError
        If an amplitude is negative, or ``a(m) f + g`` is negative somewhere
        or vanishes identically.
    """
    if profile != "bump":
        raise ValueError(f"unknown profile {profile!r}")
    if eps < 0:
        raise ValueError("eps must be non-negative")
    if amp_f < 0 or amp_g < 0:
        raise DataConditionError("data sign condition: amplitudes A_f, A_g must be non-negative")
    shape = bump(grid.radius)
    f = amp_f * shape
    g = amp_g * shape
    combo = a_coeff(m) * f + g
    if np.min(combo) < 0:
        raise DataConditionError("data sign condition: a(m) f + g must be non-negative")
    if not np.any(combo > 0):
        raise DataConditionError("data sign condition: a(m) f + g must not vanish identically")
    return CauchyData(profile, float(eps), float(amp_f), float(amp_g), eps * f, eps * g,
                      support_radius(grid, combo, tol=0.0, floor_factor=0.0))


def resolution_floor(grid, u):
    """Spectral amplitude just below the dealiasing cutoff, relative to the peak.

    Measured over ``|k|`` in ``(k_nyq/2, 2 k_nyq/3]``; this is the level of
    the oscillatory tails a band-limited field carries across the whole box.
    """
    uh = np.abs(grid.fft(u))
    top = uh.max()
    if top == 0:
        return 0.0
    kn = np.pi / grid.dx
    band = (grid.kabs > 0.5 * kn) & (grid.kabs <= (2.0 / 3.0) * kn)
    return float(uh[band].max() / top)


def support_radius(grid, u, tol=SUPPORT_TOL, floor_factor=FLOOR_FACTOR):
    """Largest ``|x|`` where ``|u|`` exceeds the detection level (0 for the zero field).

    The level is ``max(tol, floor_factor * resolution_floor) * max|u|`` so
    that grid-scale ringing of a band-limited field is not read as support.
    """
    a = np.abs(u)
    top = a.max()
    if top == 0:
        return 0.0
    level = tol
    if floor_factor:
        level = min(max(tol, floor_factor * resolution_floor(grid, u)), 0.5)
    return float(np.broadcast_to(grid.radius, a.shape)[a > level * top].max())


# ---------------------------------------------------------------------------
# Linear propagation
# ---------------------------------------------------------------------------

def linear_evolve(grid, m, data, t):
    """Exact linear solution ``(u, u_t)`` at time ``t``."""
    if t < 0:
        raise ValueError("t must be non-negative")
    if t == 0:
        return data.f.copy(), data.g.copy()
    v1, v2, d1, d2 = symbols_on_grid(grid, m, t)
    fh, gh = grid.fft(data.f), grid.fft(data.g)
    return grid.ifft(v1 * fh + v2 * gh), grid.ifft(d1 * fh + d2 * gh)


def power_nonlinearity(grid, v, p, dealias=True):
    """``|v|^p`` via ``exp(p ln|v|)`` (0 where ``v = 0``), optionally 2/3-filtered."""
    a = np.abs(v)
    with np.errstate(divide="ignore"):
        out = np.where(a > 0, np.exp(p * np.log(np.where(a > 0, a, 1.0))), 0.0)
    if dealias:
        out = grid.ifft(grid.fft(out) * grid.dealias_mask)
    return out


# ---------------------------------------------------------------------------
# Time stepping
# ---------------------------------------------------------------------------

@dataclass
class SimState:
    t: float
    u: np.ndarray = field(repr=False)
    v: np.ndarray = field(repr=False)
    dt: float = 0.0
    status: str = RUNNING
    max_v: float = 0.0
    max_u: float = 0.0
    energy: float = 0.0
    support: float = 0.0

    def copy(self):
        return SimState(self.t, self.u.copy(), self.v.copy(), self.dt, self.status,
                        self.max_v, self.max_u, self.energy, self.support)


def initial_state(grid, data, m=0.0):
    st = SimState(0.0, data.f.copy(), data.g.copy())
    _diagnose(grid, m, st)
    return st


def _energy(grid, m, t, u, v):
    uh = grid.fft(u)
    grad2 = sum(grid.ifft(1j * k * uh) ** 2 for k in grid.wavenumbers)
    return 0.5 * grid.integrate(v * v + t ** (2 * m) * grad2)


def _diagnose(grid, m, st):
    st.max_v = float(np.max(np.abs(st.v)))
    st.max_u = float(np.max(np.abs(st.u)))
    st.energy = _energy(grid, m, st.t, st.u, st.v)


def propose_dt(grid, m, p, t, v_max, cfl, nonlinear=True):
    """Step size ``cfl dx / max(1, t_next^m)``, capped by the nonlinear time scale."""
    dt = cfl * grid.dx / max(1.0, t ** m)
    dt = cfl * grid.dx / max(1.0, (t + dt) ** m)
    if nonlinear and v_max > 0:
        dt = min(dt, cfl / (p * v_max ** (p - 1)))
    return dt


def _rhs(grid, m, p, t, u, v, nonlinear):
    acc = t ** (2 * m) * grid.laplacian(u)
    if nonlinear:
        acc = acc + power_nonlinearity(grid, v, p)
    return v, acc


_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(4)


def _first_step(grid, m, p, st, dt, nonlinear):
    """Exact propagator over ``[0, dt]`` plus a Duhamel correction for ``|v|^p``."""
    fh, gh = grid.fft(st.u), grid.fft(st.v)
    v1, v2, d1, d2 = symbols_on_grid(grid, m, dt)
    uh = v1 * fh + v2 * gh
    vh = d1 * fh + d2 * gh
    if nonlinear:
        for node, w in zip(_GL_NODES, _GL_WEIGHTS):
            s = 0.5 * dt * (node + 1)
            a1, a2, b1, b2 = symbols_on_grid(grid, m, s)
            v_lin = grid.ifft(b1 * fh + b2 * gh)
            nh = grid.fft(power_nonlinearity(grid, v_lin, p)) * (0.5 * dt * w)
            # kernel W2 - W1 evaluated at (s, dt)
            uh += (v2 * a1 - v1 * a2) * nh
            vh += (d2 * a1 - d1 * a2) * nh
    return grid.ifft(uh), grid.ifft(vh)


def nonlinear_step(state, grid, m, p, cfl=0.5, dt=None, nonlinear=True):
    """Advance one step and return the new :class:`SimState`.

    Non-finite fields mark the state ``blown_up`` at the last finite time;
    a step below ``1e-12`` marks ``step_underflow``.
    """
    if state.status != RUNNING:
        raise ValueError("state is not running")
    if not 0 < cfl < 1:
        raise ValueError("cfl must lie in (0, 1)")
    if dt is None:
        dt = propose_dt(grid, m, p, state.t, state.max_v, cfl, nonlinear)
    new = state.copy()
    if dt < 1e-12:
        new.status = UNDERFLOW
        return new
    t, u, v = state.t, state.u, state.v
    with np.errstate(over="ignore", invalid="ignore"):
        u_new, v_new = _advance(grid, m, p, state, dt, nonlinear)
    if not (np.all(np.isfinite(u_new)) and np.all(np.isfinite(v_new))):
        new.status = BLOWN_UP
        return new
    new.t, new.u, new.v, new.dt = t + dt, u_new, v_new, dt
    _diagnose(grid, m, new)
    return new


def _advance(grid, m, p, state, dt, nonlinear):
    t, u, v = state.t, state.u, state.v
    if t == 0.0:
        u_new, v_new = _first_step(grid, m, p, state, dt, nonlinear)
    else:
        k1u, k1v = _rhs(grid, m, p, t, u, v, nonlinear)
        k2u, k2v = _rhs(grid, m, p, t + dt / 2, u + dt / 2 * k1u, v + dt / 2 * k1v, nonlinear)
        k3u, k3v = _rhs(grid, m, p, t + dt / 2, u + dt / 2 * k2u, v + dt / 2 * k2v, nonlinear)
        k4u, k4v = _rhs(grid, m, p, t + dt, u + dt * k3u, v + dt * k3v, nonlinear)
        u_new = u + dt / 6 * (k1u + 2 * k2u + 2 * k3u + k4u)
        v_new = v + dt / 6 * (k1v + 2 * k2v + 2 * k3v + k4v)
    return u_new, v_new


def evolve(grid, m, p, data, t_end, cfl=0.5, nonlinear=True):
    """March to ``t_end`` exactly (last step shortened); returns the final state."""
    st = initial_state(grid, data, m)
    while st.t < t_end and st.status == RUNNING:
        dt = propose_dt(grid, m, p, st.t, st.max_v, cfl, nonlinear)
        dt = min(dt, t_end - st.t)
        st = nonlinear_step(st, grid, m, p, cfl, dt=dt, nonlinear=nonlinear)
    return st


# ---------------------------------------------------------------------------
# Blow-up runs
# ---------------------------------------------------------------------------

@dataclass
class Trace:
    t: list = field(default_factory=list)
    max_v: list = field(default_factory=list)
    max_u: list = field(default_factory=list)
    support_radius: list = field(default_factory=list)
    dt: list = field(default_factory=list)
    energy: list = field(default_factory=list)
    field_t: list = field(default_factory=list, repr=False)
    u: list = field(default_factory=list, repr=False)
    v: list = field(default_factory=list, repr=False)

    def columns(self):
        return ("t", "max_v", "max_u", "support_radius", "dt", "energy")

    def rows(self):
        return list(zip(*(getattr(self, c) for c in self.columns())))


@dataclass
class LifespanRecord:
    eps: float
    T_eps: float
    status: str
    max_ut: float
    fingerprint: str
    wall_time: float = 0.0
    crossings: dict = field(default_factory=dict)
    grid: dict = field(default_factory=dict)
    scheme: dict = field(default_factory=dict)
    steps: int = 0
    cone_violations: int = 0
    trace: Trace = field(default=None, repr=False)

    def summary(self):
        d = asdict(self)
        d.pop("trace")
        return d


def run_fingerprint(grid, m, p, data, cfl, v_threshold, t_max, thresholds):
    cfg = {"grid": grid.describe(), "m": m, "p": p, "data": data.describe(), "cfl": cfl,
           "v_threshold": v_threshold, "t_max": t_max, "thresholds": list(thresholds),
           "scheme": SCHEME_VERSION}
    blob = json.dumps(cfg, sort_keys=True, separators=(",", ":")).encode()
    return hashlib.sha256(blob).hexdigest()[:16]


def run_until_blowup(grid, m, p, data, cfl=0.5, v_threshold=1e6, t_max=10.0,
                     trace_stride=1, thresholds=(1e5, 1e6, 1e7), store_fields=False,
                     field_stride=1, nonlinear=True, check_cone=True):
    """March until ``max|u_t| >= v_threshold``, ``t >= t_max`` or step underflow.

    Crossing times of every level in ``thresholds`` are recorded in the same
    run, which continues past ``v_threshold`` up to the largest level.

    Returns
    -------
    LifespanRecord
        ``T_eps`` is the crossing time of ``v_threshold`` (``blown_up``), or
        the final time otherwise.
    """
    if v_threshold < 1e4:
        raise ValueError("v_threshold must be >= 1e4")
    start = time.perf_counter()
    levels = sorted(set(float(x) for x in thresholds) | {float(v_threshold)})
    stop_level = levels[-1]
    crossings = {}
    trace = Trace()
    st = initial_state(grid, data, m)
    steps = 0
    violations = 0
    status = RUNNING

    def record(state):
        nonlocal violations
        sup = support_radius(grid, state.u) if check_cone else math.nan
        state.support = sup
        if check_cone and sup > cone_radius(m, state.t) + 2 * grid.dx:
            violations += 1
        trace.t.append(state.t)
        trace.max_v.append(state.max_v)
        trace.max_u.append(state.max_u)
        trace.support_radius.append(sup)
        trace.dt.append(state.dt)
        trace.energy.append(state.energy)

    def record_fields(state):
        trace.field_t.append(state.t)
        trace.u.append(state.u.copy())
        trace.v.append(state.v.copy())

    record(st)
    if store_fields:
        record_fields(st)
    while True:
        if st.t >= t_max:
            status = HORIZON
            break
        dt = propose_dt(grid, m, p, st.t, st.max_v, cfl, nonlinear)
        if dt >= 1e-12:
            dt = min(dt, t_max - st.t)
        new = nonlinear_step(st, grid, m, p, cfl, dt=dt, nonlinear=nonlinear)
        steps += 1
        if new.status != RUNNING:
            status = new.status
            break
        st = new
        for lev in levels:
            if lev not in crossings and st.max_v >= lev:
                crossings[lev] = st.t
        if steps % trace_stride == 0:
            record(st)
        if store_fields and steps % field_stride == 0:
            record_fields(st)
        if st.max_v >= stop_level:
            status = BLOWN_UP
            break
    if trace.t[-1] != st.t:
        record(st)
    if store_fields and trace.field_t[-1] != st.t:
        record_fields(st)
    if status == BLOWN_UP and float(v_threshold) in crossings:
        T = crossings[float(v_threshold)]
    else:
        T = st.t
    fp = run_fingerprint(grid, m, p, data, cfl, v_threshold, t_max, thresholds)
    return LifespanRecord(
        eps=data.eps, T_eps=T, status=status, max_ut=st.max_v, fingerprint=fp,
        wall_time=time.perf_counter() - start,
        crossings={f"{k:g}": v for k, v in sorted(crossings.items())},
        grid=grid.describe(), scheme={"name": SCHEME_VERSION, "cfl": cfl, "m": m, "p": p},
        steps=steps, cone_violations=violations, trace=trace)


# ---------------------------------------------------------------------------
# Duhamel / Picard route
# ---------------------------------------------------------------------------

@dataclass
class DuhamelResult:
    u: np.ndarray = field(repr=False)
    v: np.ndarray = field(repr=False)
    distances: list
    contracting: bool
    quad_change: float
    underresolved: bool
    nodes: np.ndarray = field(repr=False)


class NonContractionError(RuntimeError):
    pass


class QuadratureError(RuntimeError):
    pass


def _picard(grid, m, p, data, T, iters, q, strength):
    nodes = np.linspace(0.0, T, q)
    h = nodes[1] - nodes[0]
    fh, gh = grid.fft(data.f), grid.fft(data.g)
    vals, inverse = grid._unique_k
    table = [np.real(a) for a in multiplier.symbols(m, nodes[:, None], vals[None, :])]
    syms = [tuple(a[j][inverse] for a in table) for j in range(q)]
    u_lin = np.array([grid.ifft(a * fh + b * gh) for a, b, _, _ in syms])
    v_lin = np.array([grid.ifft(c * fh + d * gh) for _, _, c, d in syms])
    u, v = u_lin, v_lin
    distances = []
    for _ in range(iters):
        nh = np.array([grid.fft(power_nonlinearity(grid, vj, p)) for vj in v]) * strength
        i1 = np.array([s[0] for s in syms]) * nh
        i2 = np.array([s[1] for s in syms]) * nh
        # cumulative trapezoid in s
        c1 = np.concatenate([np.zeros_like(i1[:1]), np.cumsum(0.5 * h * (i1[1:] + i1[:-1]), axis=0)])
        c2 = np.concatenate([np.zeros_like(i2[:1]), np.cumsum(0.5 * h * (i2[1:] + i2[:-1]), axis=0)])
        u_new = np.array([u_lin[j] + grid.ifft(syms[j][1] * c1[j] - syms[j][0] * c2[j])
                          for j in range(q)])
        v_new = np.array([v_lin[j] + grid.ifft(syms[j][3] * c1[j] - syms[j][2] * c2[j])
                          for j in range(q)])
        distances.append(float(np.max(np.abs(v_new - v))))
        u, v = u_new, v_new
        scale = max(float(np.max(np.abs(v))), 1e-300)
        if distances[-1] <= 1e-14 * scale:
            break
    return nodes, u[-1], v[-1], distances


def duhamel_solve(grid, m, p, data, T, picard_iters=8, quad_points=101, strength=1.0,
                  check_quadrature=True, strict=False):
    """Fixed point of the discretised integral equation at time ``T``.

    Parameters
    ----------
    strength : float
        Multiplier on ``|u_t|^p``; 0 reduces to :func:`linear_evolve`.
    strict : bool
        Raise instead of flagging non-contraction or under-resolution.

    Returns
    -------
    DuhamelResult
        ``contracting`` is False if any successive-iterate distance fails to
        halve; ``underresolved`` is True if halving the node spacing moves the
        answer by more than ``1e-3`` of its scale.
    """
    if T <= 0:
        raise ValueError("T must be positive")
    if quad_points < 3:
        raise ValueError("need at least 3 quadrature points")
    nodes, u, v, dist = _picard(grid, m, p, data, T, picard_iters, quad_points, strength)
    contracting = all(d2 <= 0.5 * d1 or d2 <= 1e-14 * max(np.max(np.abs(v)), 1e-300)
                      for d1, d2 in zip(dist, dist[1:]))
    change = 0.0
    if check_quadrature and strength != 0:
        _, u2, v2, _ = _picard(grid, m, p, data, T, picard_iters, 2 * quad_points - 1, strength)
        scale = max(np.max(np.abs(v2)), np.max(np.abs(u2)), 1e-300)
        change = float(max(np.max(np.abs(v2 - v)), np.max(np.abs(u2 - u))) / scale)
    under = change > 1e-3
    if strict and not contracting:
        raise NonContractionError(f"Picard distances {dist} do not halve")
    if strict and under:
        raise QuadratureError(f"quadrature change {change:.3e} exceeds 1e-3")
    return DuhamelResult(u, v, dist, contracting, change, under, nodes)


# ---------------------------------------------------------------------------
# Weak-form residual
# ---------------------------------------------------------------------------

@dataclass
class WeakResidual:
    residual: float
    lhs: float
    rhs: float
    scale: float

    @property
    def relative(self):
        return self.residual / self.scale if self.scale > 0 else 0.0


def weak_residual(times, us, vs, grid, m, p, g0, test, nonlinear=True):
    r"""Residual of the weak formulation for a stored trace.

    Compares :math:`\int g\Psi(0) + \iint |u_t|^p\Psi` with
    :math:`\iint(-u_t\Psi_t + t^{2m}\nabla u\cdot\nabla\Psi)`, trapezoid in
    ``t`` over the stored times and grid sums in ``x``.  ``g0`` is the
    (already eps-scaled) initial velocity.  ``test`` supplies
    ``value(t, grid)``, ``dt(t, grid)`` and ``grad(t, grid)``; it must vanish
    at the last stored time.  The nonlinearity is the dealiased one the
    solver uses.

    Raises
    ------
    ValueError
        If the trace is inconsistent or the test function does not vanish at
        the end of the trace.
    """
    times = np.asarray(times, dtype=float)
    if len(times) != len(us) or len(times) != len(vs) or len(times) < 3:
        raise ValueError("incompatible trace: times and fields must align (>= 3 samples)")
    if times[0] != 0.0 or np.any(np.diff(times) <= 0):
        raise ValueError("incompatible trace: times must start at 0 and increase")
    last = test.value(times[-1], grid)
    if np.max(np.abs(last)) > 1e-12 * max(np.max(np.abs(test.value(0.0, grid))), 1e-300):
        raise ValueError("incompatible trace: test function does not vanish at the final time")
    w = np.zeros_like(times)
    dts = np.diff(times)
    w[:-1] += 0.5 * dts
    w[1:] += 0.5 * dts
    lhs = grid.integrate(g0 * test.value(0.0, grid))
    rhs = 0.0
    mag = abs(lhs)
    for tj, wj, u, v in zip(times, w, us, vs):
        psi = test.value(tj, grid)
        if not np.any(psi):
            continue
        a = 0.0
        if nonlinear:
            a = wj * grid.integrate(power_nonlinearity(grid, v, p) * psi)
        uh = grid.fft(u)
        grads = test.grad(tj, grid)
        gdot = sum(grid.ifft(1j * k * uh) * gp for k, gp in zip(grid.wavenumbers, grads))
        b1 = -wj * grid.integrate(v * test.dt(tj, grid))
        b2 = wj * tj ** (2 * m) * grid.integrate(gdot)
        lhs += a
        rhs += b1 + b2
        mag += abs(a) + abs(b1) + abs(b2)
    return WeakResidual(abs(lhs - rhs), lhs, rhs, mag)
