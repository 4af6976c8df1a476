"""Integer-grid line rasterization for bi-gram segments.

A pixel (i, j) is produced exactly when some point (x, y) of the
continuous segment rounds to it, with round(v) = floor(v + 1/2). That
makes the pixel set identical (by construction) to rounding a dense
sampling of the segment, symmetric under endpoint swap, and slightly
denser than a classic one-pixel-per-column Bresenham line: it never
skips a pixel square the segment actually passes through.

Everything is computed in exact rational arithmetic; there are no
floating-point boundary surprises.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

Point = tuple[int, int]

_HALF = Fraction(1, 2)


def _round_half_up(v: Fraction) -> int:
    return math.floor(v + _HALF)


def _axis_range(e0: int, e1: int) -> range:
    step = 1 if e1 >= e0 else -1
    return range(e0, e1 + step, step)


def _other_axis_hits(v_lo: Fraction, lo_closed: bool,
                     v_hi: Fraction, hi_closed: bool) -> range:
    """Integers hit by round(v) as v sweeps an interval of the other axis.

    The interval runs from v_lo to v_hi in sweep order; either end may be
    open. An open end only loses its pixel when it sits exactly on a
    rounding boundary (v + 1/2 integral) and is approached from below.
    """
    if v_lo <= v_hi:
        a, a_closed, b, b_closed = v_lo, lo_closed, v_hi, hi_closed
    else:
        a, a_closed, b, b_closed = v_hi, hi_closed, v_lo, lo_closed
    # a <= b; a is the infimum, b the supremum of swept values.
    j_lo = _round_half_up(a)  # attained whether or not a itself is included
    j_hi = _round_half_up(b)
    if not b_closed and (b + _HALF).denominator == 1 and a != b:
        j_hi -= 1
    if a == b and not (a_closed or b_closed):
        return range(0)
    return range(j_lo, j_hi + 1)


@lru_cache(maxsize=None)
def rasterize_segment(p0: Point, p1: Point) -> tuple[Point, ...]:
    """All grid points the closed segment p0-p1 rounds onto.

    Returned sorted; symmetric in its arguments as a set (and, since
    sorted, as a tuple).
    """
    if p1 < p0:
        p0, p1 = p1, p0
    (x0, y0), (x1, y1) = p0, p1
    if p0 == p1:
        return (p0,)

    dx, dy = x1 - x0, y1 - y0
    if abs(dx) >= abs(dy):
        drive = (x0, x1, dx)
        other = (y0, dy)
        transpose = False
    else:
        drive = (y0, y1, dy)
        other = (x0, dx)
        transpose = True

    u0, u1, du = drive
    v0, dv = other
    pixels: set[Point] = set()
    for r in _axis_range(u0, u1):
        # t-interval on which the driving coordinate rounds to r:
        # u0 + t*du in [r - 1/2, r + 1/2)
        bound_a = Fraction(2 * (r - u0) - 1, 2 * du)
        bound_b = Fraction(2 * (r - u0) + 1, 2 * du)
        if du > 0:
            t_lo, lo_closed, t_hi, hi_closed = bound_a, True, bound_b, False
        else:
            t_lo, lo_closed, t_hi, hi_closed = bound_b, False, bound_a, True
        if t_lo < 0:
            t_lo, lo_closed = Fraction(0), True
        if t_hi > 1:
            t_hi, hi_closed = Fraction(1), True
        if t_lo > t_hi or (t_lo == t_hi and not (lo_closed and hi_closed)):
            continue
        for j in _other_axis_hits(v0 + t_lo * dv, lo_closed,
                                  v0 + t_hi * dv, hi_closed):
            pixels.add((j, r) if transpose else (r, j))
    return tuple(sorted(pixels))
