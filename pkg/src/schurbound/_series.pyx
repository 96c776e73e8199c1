# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels for Legendre-series summation.

Mirrors _series_py line for line; both walk the three-term recurrence
at two evaluation points and combine terms in the same order, so the
backends agree bit for bit on the same platform.  The recurrence state
(P_{n0-2}, P_{n0-1} at each point) is threaded through calls so a sum
can resume where it stopped.
"""

from libc.math cimport pow, sqrt


def power_blocks(double ar, double ai, double br, double bi,
                 double x0, double x1, double p,
                 long n0, long n1, long block,
                 double a0, double b0, double a1, double b1):
    """Kahan block sums of (2n+1)|a P_n(x0) - b P_n(x1)|^p over [n0, n1).

    Returns (blocks, a0, b0, a1, b1): per-block compensated sums plus
    the advanced recurrence state.  The final block may be short.
    """
    out = []
    cdef double s = 0.0
    cdef double comp = 0.0
    cdef double c, u, v, zr, zi, m, t, y, tt
    cdef long n, filled = 0
    for n in range(n0, n1):
        if n == 0:
            c = 1.0
        elif n == 1:
            c = x0
        else:
            c = ((2.0 * n - 1.0) * x0 * b0 - (n - 1.0) * a0) / n
        a0 = b0
        b0 = c
        u = c
        if n == 0:
            c = 1.0
        elif n == 1:
            c = x1
        else:
            c = ((2.0 * n - 1.0) * x1 * b1 - (n - 1.0) * a1) / n
        a1 = b1
        b1 = c
        v = c
        zr = ar * u - br * v
        zi = ai * u - bi * v
        m = sqrt(zr * zr + zi * zi)
        t = (2.0 * n + 1.0) * pow(m, p)
        y = t - comp
        tt = s + y
        comp = (tt - s) - y
        s = tt
        filled += 1
        if filled == block:
            out.append(s)
            s = 0.0
            comp = 0.0
            filled = 0
    if filled > 0:
        out.append(s)
    return out, a0, b0, a1, b1


def sup_scan(double ar, double ai, double br, double bi,
             double x0, double x1,
             long n0, long n1,
             double a0, double b0, double a1, double b1,
             double best, long best_n):
    """Running maximum of |a P_n(x0) - b P_n(x1)| over [n0, n1).

    Returns (best, best_n, a0, b0, a1, b1) with the recurrence state
    advanced; (best, best_n) carry in the maximum found so far.
    """
    cdef double c, u, v, zr, zi, m
    cdef long n
    for n in range(n0, n1):
        if n == 0:
            c = 1.0
        elif n == 1:
            c = x0
        else:
            c = ((2.0 * n - 1.0) * x0 * b0 - (n - 1.0) * a0) / n
        a0 = b0
        b0 = c
        u = c
        if n == 0:
            c = 1.0
        elif n == 1:
            c = x1
        else:
            c = ((2.0 * n - 1.0) * x1 * b1 - (n - 1.0) * a1) / n
        a1 = b1
        b1 = c
        v = c
        zr = ar * u - br * v
        zi = ai * u - bi * v
        m = sqrt(zr * zr + zi * zi)
        if m > best:
            best = m
            best_n = n
    return best, best_n, a0, b0, a1, b1


def ratio_scan(double x, long n1):
    """Envelope-constant scan over 1 <= n < n1 at evaluation point x.

    Returns (rmax, smax):
      rmax = max |P_n(0) - P_n(x)| sqrt(n+1) / min(n|x|, 1)  (0 if x == 0)
      smax = max sqrt(n+1) |P_n(x)|
    """
    cdef double a0 = 0.0, b0 = 0.0, a1 = 0.0, b1 = 0.0
    cdef double c, u, v, ax, mn, r, sq
    cdef double rmax = 0.0, smax = 0.0
    cdef long n
    ax = x if x >= 0.0 else -x
    for n in range(0, n1):
        if n == 0:
            c = 1.0
        elif n == 1:
            c = 0.0
        else:
            c = ((2.0 * n - 1.0) * 0.0 * b0 - (n - 1.0) * a0) / n
        a0 = b0
        b0 = c
        u = c
        if n == 0:
            c = 1.0
        elif n == 1:
            c = x
        else:
            c = ((2.0 * n - 1.0) * x * b1 - (n - 1.0) * a1) / n
        a1 = b1
        b1 = c
        v = c
        if n == 0:
            continue
        sq = sqrt(n + 1.0)
        if ax > 0.0:
            mn = n * ax
            if mn > 1.0:
                mn = 1.0
            r = (u - v if u >= v else v - u) * sq / mn
            if r > rmax:
                rmax = r
        r = sq * (v if v >= 0.0 else -v)
        if r > smax:
            smax = r
    return rmax, smax
