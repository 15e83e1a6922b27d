"""Accurate reduction of the lacunary angles b**n * k modulo 2*pi.

The series evaluated in this package contain terms cos(b**n k), sin(b**n k)
with integer b and n up to ~64.  b**n overflows 64-bit integers and, worse,
naive float evaluation of b**n * k loses all angular accuracy once
b**n * k / (2*pi) exceeds ~2**52.  The ladder below keeps the running angle

    theta_n = (b**n * k) mod 2*pi

in double-double precision (~106 bits): each step multiplies by the small
integer b and subtracts the nearest multiple of 2*pi, so the absolute angle
error after n steps is O(b**n * 2**-106).  Combined with the series weights
A**-n this keeps the weighted angle error below the series truncation error
for every parameter regime exercised here (b <= ~16, n <= 64).

All helpers are vectorized over numpy arrays.
"""

import numpy as np

TWO_PI = 6.283185307179586          # 2*pi rounded to double
TWO_PI_LO = 2.4492935982947064e-16  # 2*pi - TWO_PI, next 53 bits
_SPLITTER = 134217729.0             # 2**27 + 1, Veltkamp splitting constant


def _two_sum(a, b):
    s = a + b
    bb = s - a
    err = (a - (s - bb)) + (b - bb)
    return s, err


def _quick_two_sum(a, b):
    # requires |a| >= |b|
    s = a + b
    err = b - (s - a)
    return s, err


def _two_prod(a, b):
    p = a * b
    a_hi = _SPLITTER * a
    a_hi = a_hi - (a_hi - a)
    a_lo = a - a_hi
    b_hi = _SPLITTER * b
    b_hi = b_hi - (b_hi - b)
    b_lo = b - b_hi
    err = ((a_hi * b_hi - p) + a_hi * b_lo + a_lo * b_hi) + a_lo * b_lo
    return p, err


def canonical_angle(k):
    """Reduce angles into the Brillouin-zone convention (-pi, pi]."""
    k = np.asarray(k, dtype=float)
    q = np.rint(k / TWO_PI)
    hi, lo = _two_sum(k, -q * TWO_PI)
    lo = lo - q * TWO_PI_LO
    r = hi + lo
    r = np.where(r <= -np.pi, r + TWO_PI, r)
    r = np.where(r > np.pi, r - TWO_PI, r)
    return r


def angle_ladder(k, b, n_terms):
    """Yield (cos, sin) of (b**n * k) mod 2*pi for n = 0 .. n_terms-1.

    Returns an iterator of pairs of arrays shaped like ``k``.  The angle is
    carried in double-double precision; the trig values get a first-order
    correction from the low word, so they are accurate to ~1 ulp whenever the
    reduced angle itself still carries information.
    """
    hi = np.array(canonical_angle(k), dtype=float, copy=True)
    lo = np.zeros_like(hi)
    b = float(b)
    for n in range(n_terms):
        c = np.cos(hi) - lo * np.sin(hi)
        s = np.sin(hi) + lo * np.cos(hi)
        yield c, s
        if n == n_terms - 1:
            break
        # theta <- b * theta in double-double
        p, e = _two_prod(hi, b)
        lo = lo * b + e
        hi, lo = _quick_two_sum(p, lo)
        # theta <- theta - round(theta / 2pi) * 2pi
        q = np.rint(hi / TWO_PI)
        p1, e1 = _two_prod(q, TWO_PI)
        hi, t = _two_sum(hi, -p1)
        lo = lo + t - e1 - q * TWO_PI_LO
        hi, lo = _quick_two_sum(hi, lo)
