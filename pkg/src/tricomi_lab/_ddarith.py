"""Vectorised double-double arithmetic.

A value is carried as an unevaluated sum ``hi + lo`` of two float64 arrays,
giving roughly 32 significant digits.  Only the handful of operations needed
by the power series in :mod:`tricomi_lab.specfun` are provided.
"""

import numpy as np

_SPLITTER = 134217729.0  # 2**27 + 1


def two_sum(a, b):
    s = a + b
    bb = s - a
    err = (a - (s - bb)) + (b - bb)
    return s, err


def quick_two_sum(a, b):
    s = a + b
    return s, b - (s - a)


def _split(a):
    c = _SPLITTER * a
    hi = c - (c - a)
    return hi, a - hi


def two_prod(a, b):
    p = a * b
    ah, al = _split(a)
    bh, bl = _split(b)
    err = ((ah * bh - p) + ah * bl + al * bh) + al * bl
    return p, err


def add(ah, al, bh, bl):
    s, e = two_sum(ah, bh)
    t, f = two_sum(al, bl)
    e = e + t
    s, e = quick_two_sum(s, e)
    e = e + f
    return quick_two_sum(s, e)


def sub(ah, al, bh, bl):
    return add(ah, al, -bh, -bl)


def mul(ah, al, bh, bl):
    p, e = two_prod(ah, bh)
    e = e + (ah * bl + al * bh)
    return quick_two_sum(p, e)


def div(ah, al, bh, bl):
    q1 = ah / bh
    ph, pl = mul(q1, 0.0 * q1, bh, bl)
    rh, rl = sub(ah, al, ph, pl)
    q2 = rh / bh
    ph, pl = mul(q2, 0.0 * q2, bh, bl)
    rh, rl = sub(rh, rl, ph, pl)
    q3 = rh / bh
    q1, q2 = quick_two_sum(q1, q2)
    return add(q1, q2, q3, 0.0 * q3)


class ComplexDD:
    """Complex number array with double-double real and imaginary parts."""

    __slots__ = ("rh", "rl", "ih", "il")

    def __init__(self, rh, rl, ih, il):
        self.rh, self.rl, self.ih, self.il = rh, rl, ih, il

    @classmethod
    def from_complex(cls, z):
        z = np.asarray(z, dtype=complex)
        zero = np.zeros(z.shape)
        return cls(z.real.copy(), zero, z.imag.copy(), zero.copy())

    def __add__(self, other):
        rh, rl = add(self.rh, self.rl, other.rh, other.rl)
        ih, il = add(self.ih, self.il, other.ih, other.il)
        return ComplexDD(rh, rl, ih, il)

    def scale(self, sh, sl):
        """Multiply by a real double-double ``sh + sl``."""
        rh, rl = mul(self.rh, self.rl, sh, sl)
        ih, il = mul(self.ih, self.il, sh, sl)
        return ComplexDD(rh, rl, ih, il)

    def __mul__(self, other):
        ah, al = mul(self.rh, self.rl, other.rh, other.rl)
        bh, bl = mul(self.ih, self.il, other.ih, other.il)
        ch, cl = mul(self.rh, self.rl, other.ih, other.il)
        dh, dl = mul(self.ih, self.il, other.rh, other.rl)
        rh, rl = sub(ah, al, bh, bl)
        ih, il = add(ch, cl, dh, dl)
        return ComplexDD(rh, rl, ih, il)

    def abs_hi(self):
        return np.hypot(self.rh, self.ih)

    def to_complex(self):
        return (self.rh + self.rl) + 1j * (self.ih + self.il)
