"""Dormand-Prince 5(4) integrator with PI step-size control.

Used only as an independent oracle for closed-form ODE solutions.  The state
may carry a trailing batch axis, in which case every member shares one step
sequence (the error norm is the worst member).  Error control is purely
relative to the state magnitude, so multiplying the initial data by a power
of two reproduces the trajectory bit for bit.
"""

import numpy as np

# Butcher tableau
_C = np.array([0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0])
_A = [
    [],
    [1 / 5],
    [3 / 40, 9 / 40],
    [44 / 45, -56 / 15, 32 / 9],
    [19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729],
    [9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656],
    [35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84],
]
_B5 = np.array([35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84, 0.0])
_B4 = np.array([5179 / 57600, 0.0, 7571 / 16695, 393 / 640, -92097 / 339200, 187 / 2100, 1 / 40])
_E = _B5 - _B4

_SAFETY = 0.9
_ALPHA = 0.7 / 5
_BETA = 0.4 / 5


class StepUnderflowError(RuntimeError):
    """The controller asked for a step below the representable resolution."""


def _error_norm(err, y, ynew, tol):
    # per batch member: max component error over max component magnitude
    scale = np.maximum(np.abs(y), np.abs(ynew))
    if y.ndim > 1:
        num = np.max(np.abs(err), axis=0)
        den = np.max(scale, axis=0)
    else:
        num = np.max(np.abs(err))
        den = np.max(scale)
    den = np.where(den > 0, den, 1.0)
    return float(np.max(num / (tol * den)))


def dp45(f, t0, y0, t_out, tol=1e-10, h0=None, max_steps=200000):
    """Integrate ``y' = f(t, y)`` and return the state at each output time.

    Parameters
    ----------
    f : callable
        Right-hand side ``f(t, y) -> array`` with the shape of ``y``.
    t0 : float
        Initial time.
    y0 : array_like
        Initial state, shape ``(d,)`` or ``(d, batch)``.
    t_out : sequence of float
        Increasing output times, all ``>= t0``.
    tol : float
        Relative local error per step.
    h0 : float, optional
        First trial step; defaults to ``1e-3 * (t_out[-1] - t0)``.

    Returns
    -------
    ndarray
        Shape ``(len(t_out),) + y0.shape``.

    Raises
    ------
    StepUnderflowError
        If the step shrinks below ``1e-14 * max(1, |t|)``.
    """
    y = np.array(y0, dtype=float)
    t_out = np.atleast_1d(np.asarray(t_out, dtype=float))
    if np.any(np.diff(t_out) < 0) or t_out[0] < t0:
        raise ValueError("output times must be increasing and not before t0")
    out = np.empty((len(t_out),) + y.shape)
    t = float(t0)
    h = h0 if h0 is not None else 1e-3 * max(t_out[-1] - t0, 1e-300)
    err_prev = 1.0
    k1 = f(t, y)
    steps = 0
    for j, target in enumerate(t_out):
        while t < target:
            if steps >= max_steps:
                raise RuntimeError("dp45 exceeded max_steps")
            steps += 1
            last = h >= target - t
            hh = target - t if last else h
            if hh < 1e-14 * max(1.0, abs(t)):
                raise StepUnderflowError(f"step underflow at t = {t}")
            ks = [k1]
            for i in range(1, 7):
                yi = y + hh * sum(a * k for a, k in zip(_A[i], ks))
                ks.append(f(t + _C[i] * hh, yi))
            ynew = y + hh * sum(b * k for b, k in zip(_B5, ks) if b != 0.0)
            err = hh * sum(e * k for e, k in zip(_E, ks) if e != 0.0)
            en = _error_norm(err, y, ynew, tol)
            if en <= 1.0:
                t = target if last else t + hh
                y = ynew
                k1 = ks[6]  # first-same-as-last
                en = max(en, 1e-10)
                fac = _SAFETY * en ** -_ALPHA * err_prev ** _BETA
                err_prev = en
                if not last:
                    h = hh * min(5.0, max(0.2, fac))
            else:
                h = hh * max(0.2, _SAFETY * en ** -0.2)
        out[j] = y
    return out
