"""Outward-rounded interval arithmetic helpers on top of mpmath.

All certified comparisons in the package go through this module: an
inequality is asserted only when the two interval enclosures separate.
Complex quantities are enclosed in axis-aligned boxes of real intervals.
"""

import math
from fractions import Fraction

import mpmath


def context(prec_bits):
    """Fresh interval context so concurrent callers never share precision state."""
    ctx = mpmath.ctx_iv.MPIntervalContext()
    ctx.prec = prec_bits
    return ctx


def from_fraction(ctx, value):
    """Enclose an int or Fraction; mpmath rounds division outward."""
    if isinstance(value, Fraction):
        return ctx.mpf(value.numerator) / ctx.mpf(value.denominator)
    return ctx.mpf(value)


class Box:
    """Rectangular enclosure of a complex number."""

    __slots__ = ("re", "im")

    def __init__(self, re, im):
        self.re = re
        self.im = im

    def __add__(self, other):
        return Box(self.re + other.re, self.im + other.im)

    def __sub__(self, other):
        return Box(self.re - other.re, self.im - other.im)

    def __mul__(self, other):
        return Box(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def __neg__(self):
        return Box(-self.re, -self.im)

    def scale(self, real_iv):
        return Box(self.re * real_iv, self.im * real_iv)

    def abs_sq(self):
        return self.re**2 + self.im**2

    def norm(self, ctx):
        return ctx.sqrt(self.abs_sq())

    def midpoint(self):
        return complex(self.re.mid, self.im.mid)

    def __repr__(self):
        return f"Box(re={self.re}, im={self.im})"


def box_from_complex(ctx, re, im=None):
    """Box from exact parts (ints, Fractions, mpf endpoints or pairs)."""
    if im is None:
        im = 0
    return Box(_as_iv(ctx, re), _as_iv(ctx, im))


def _as_iv(ctx, v):
    if isinstance(v, Fraction):
        return from_fraction(ctx, v)
    if isinstance(v, tuple):
        return ctx.mpf(list(v))
    return ctx.mpf(v)


def certified_le(lhs, rhs):
    """True/False when the enclosures decide lhs <= rhs, None when they overlap."""
    if lhs.b <= rhs.a:
        return True
    if lhs.a > rhs.b:
        return False
    return None


def lower_float(x):
    """Float at or below the interval's lower endpoint."""
    f = float(mpmath.mpf(x.a))
    while f > x.a:
        f = _next_down(f)
    return f


def upper_float(x):
    f = float(mpmath.mpf(x.b))
    while f < x.b:
        f = _next_up(f)
    return f


def _next_down(f):
    return math.nextafter(f, -math.inf)


def _next_up(f):
    return math.nextafter(f, math.inf)


# Rational bounds on pi, good to ~38 digits; used for exact census comparisons.
PI_LO = Fraction(31415926535897932384626433832795028841, 10**37)
PI_HI = Fraction(31415926535897932384626433832795028843, 10**37)
